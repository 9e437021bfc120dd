// lcamod: classify expressions in the locally compact abelian grammar,
// explore finite subgroup lattices, and emit counterexample certificates.
//
// Exit codes: 0 success, 1 internal failure, 2 parse error or bad
// parameters, 3 validation or applicability error, 4 size bound exceeded.
// Standard output carries exactly one report object; errors go to
// standard error as JSON too.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <string>

#include "lca/classify.hpp"
#include "lca/corpus.hpp"
#include "lca/invariants.hpp"
#include "lca/json_io.hpp"
#include "lca/lattice.hpp"
#include "lca/parse.hpp"
#include "lca/validate.hpp"
#include "lca/witness.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitTooLarge = 4;

struct CommandError {
    int code;
    std::string type;
    std::string message;
    lca::Json detail = nullptr;
};

void emit_report(const std::string& command, const std::string& input, lca::Json result) {
    lca::Json report{
        {"command", command},
        {"input", input},
        {"result", std::move(result)},
        {"version", kVersion},
    };
    std::cout << report.dump(2) << "\n";
}

int emit_error(const CommandError& e) {
    lca::Json err{{"error",
                   lca::Json{{"type", e.type}, {"message", e.message}, {"exit", e.code}}}};
    if (!e.detail.is_null()) err["error"]["detail"] = e.detail;
    std::cerr << err.dump(2) << "\n";
    return e.code;
}

lca::GroupExpr parse_and_validate(const std::string& text) {
    lca::GroupExpr e = lca::parse(text);
    lca::ValidationReport report = lca::validate(e);
    if (!report.ok()) {
        lca::Json detail = lca::Json::array();
        for (const auto& v : report.violations)
            detail.push_back(lca::Json{{"path", v.path}, {"message", v.message}});
        throw CommandError{kExitValidation, "validation", "expression does not denote a group in the class",
                           detail};
    }
    return e;
}

// Exact rational epsilon: "a/b", or decimal with optional exponent like
// "0.05" and "1e-12".  No floating point touches the value.
std::pair<long long, long long> parse_epsilon(const std::string& text) {
    auto bad = [&](const std::string& why) {
        return CommandError{kExitParse, "bad-params", "epsilon \"" + text + "\": " + why};
    };
    if (text.empty()) throw bad("empty");

    auto checked = [&](__int128 v) {
        if (v <= 0 || v > static_cast<__int128>(1000000000000000000LL)) throw bad("out of range");
        return static_cast<long long>(v);
    };

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        try {
            long long num = std::stoll(text.substr(0, slash));
            long long den = std::stoll(text.substr(slash + 1));
            return {checked(num), checked(den)};
        } catch (const std::exception&) {
            throw bad("not a ratio of integers");
        }
    }

    __int128 mantissa = 0;
    int frac_digits = 0;
    long long exponent = 0;
    std::size_t i = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) throw bad("two decimal points");
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            mantissa = mantissa * 10 + (c - '0');
            if (mantissa > static_cast<__int128>(1) << 100) throw bad("mantissa too long");
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            throw bad("unexpected character");
        }
    }
    if (!seen_digit) throw bad("no digits");
    if (i < text.size()) {
        try {
            exponent = std::stoll(text.substr(i + 1));
        } catch (const std::exception&) {
            throw bad("bad exponent");
        }
    }
    __int128 num = mantissa;
    __int128 den = 1;
    long long shift = exponent - frac_digits;
    for (long long k = 0; k < (shift > 0 ? shift : -shift); ++k) {
        (shift > 0 ? num : den) *= 10;
        if (num > (static_cast<__int128>(1) << 100) || den > (static_cast<__int128>(1) << 100))
            throw bad("out of range");
    }
    __int128 a = num, b = den;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return {checked(num), checked(den)};
}

// "Z(2)xZ(4)" and friends; returns the cyclic orders.
std::vector<long long> parse_group_spec(const std::string& text) {
    auto bad = [&](const std::string& why) {
        return CommandError{kExitParse, "parse", "group spec \"" + text + "\": " + why};
    };
    std::vector<long long> orders;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == 'x' || text[i] == 'X') {
            ++i;
            continue;
        }
        if (text[i] != 'Z') throw bad("expected Z(n)");
        ++i;
        if (i >= text.size() || text[i] != '(') throw bad("expected '('");
        ++i;
        long long n = 0;
        bool digits = false;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            n = n * 10 + (text[i] - '0');
            if (n > 1000000) throw bad("order too large");
            digits = true;
            ++i;
        }
        if (!digits || i >= text.size() || text[i] != ')') throw bad("expected a closing ')'");
        ++i;
        if (n < 1) throw bad("orders start at 1");
        if (n > 1) orders.push_back(n);
    }
    return orders;
}

unsigned long long lattice_bound() {
    if (const char* env = std::getenv("LCA_LATTICE_BOUND")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw CommandError{kExitParse, "bad-params",
                           "LCA_LATTICE_BOUND must be a positive integer, got \"" + std::string(env) + "\""};
    }
    return 10000;
}

int run_corpus() {
    lca::Json rows = lca::Json::array();
    int failed = 0;
    for (const auto& entry : lca::corpus()) {
        lca::GroupExpr e = parse_and_validate(entry.text);
        lca::Verdict v = lca::classify(e);
        bool pass = v.tm == entry.tm && v.stqh == entry.stqh && lca::route_name(v.route) == entry.route;
        if (!pass) ++failed;
        rows.push_back(lca::Json{
            {"name", entry.name},
            {"expr", entry.text},
            {"tm", v.tm},
            {"stqh", v.stqh},
            {"route", lca::route_name(v.route)},
            {"expected", lca::Json{{"tm", entry.tm}, {"stqh", entry.stqh}, {"route", entry.route}}},
            {"pass", pass},
        });
    }
    emit_report("corpus", "builtin",
                lca::Json{{"entries", rows},
                          {"total", lca::corpus().size()},
                          {"failed", failed}});
    return failed == 0 ? 0 : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decide topological modularity and strong topological quasihamiltonianness "
                 "over the closed expression grammar"};
    app.set_config("--config");
    app.set_version_flag("--version", kVersion);

    bool corpus_mode = false;
    app.add_flag("--corpus", corpus_mode, "run the built-in verification corpus");

    std::string expr_text;
    bool tm_only = false, stqh_only = false, explain = false;
    auto* cmd_classify = app.add_subcommand("classify", "decide both properties for an expression");
    cmd_classify->add_option("expr", expr_text, "expression text")->required();
    auto* opt_tm = cmd_classify->add_flag("--tm-only", tm_only, "report only the modularity verdict");
    auto* opt_stqh =
        cmd_classify->add_flag("--stqh-only", stqh_only, "report only the quasihamiltonian verdict");
    opt_tm->excludes(opt_stqh);
    cmd_classify->add_flag("--explain", explain, "include the full clause trace");

    auto* cmd_invariants = app.add_subcommand("invariants", "print the invariant record");
    cmd_invariants->add_option("expr", expr_text, "expression text")->required();

    auto* cmd_dual = app.add_subcommand("dual", "print the dual expression");
    cmd_dual->add_option("expr", expr_text, "expression text")->required();

    auto* cmd_decompose =
        app.add_subcommand("decompose", "print the decomposition the positive verdict asserts");
    cmd_decompose->add_option("expr", expr_text, "expression text")->required();

    std::string group_spec;
    bool want_pentagon = false, want_modular = false;
    auto* cmd_lattice = app.add_subcommand("lattice", "finite subgroup lattice of Z(a)xZ(b)x...");
    cmd_lattice->add_option("group", group_spec, "finite group spec, e.g. Z(4)xZ(2)")->required();
    cmd_lattice->add_flag("--pentagon", want_pentagon, "search for a pentagon");
    cmd_lattice->add_flag("--modular-check", want_modular, "check the modular law on all triples");

    std::string family_id, eps_text = "1/1000000";
    long long wp = 0, wq = 0;
    int levels = 0;
    auto* cmd_witness = app.add_subcommand("witness", "emit a counterexample certificate");
    cmd_witness
        ->add_option("family", family_id,
                     "graph-monothetic | socle-sum | locprod-psquared | sqrt2")
        ->required();
    cmd_witness->add_option("--p", wp, "prime parameter");
    cmd_witness->add_option("--q", wq, "second prime (graph-monothetic)");
    cmd_witness->add_option("--levels", levels, "truncation depth");
    cmd_witness->add_option("--eps", eps_text, "target accuracy for sqrt2, exact rational or decimal");

    CLI11_PARSE(app, argc, argv);

    try {
        if (corpus_mode) return run_corpus();

        if (cmd_classify->parsed()) {
            lca::GroupExpr e = parse_and_validate(expr_text);
            lca::Verdict v = lca::classify(e);
            lca::Json result;
            if (tm_only)
                result = lca::Json{{"tm", v.tm}, {"route", lca::route_name(v.route)}};
            else if (stqh_only)
                result = lca::Json{{"stqh", v.stqh}, {"route", lca::route_name(v.route)}};
            else
                result = lca::Json{{"tm", v.tm},
                                   {"stqh", v.stqh},
                                   {"route", lca::route_name(v.route)},
                                   {"chosenU", v.chosen_U ? lca::Json(lca::render(*v.chosen_U))
                                                          : lca::Json("0")}};
            if (explain) {
                lca::Json clauses = lca::Json::array();
                for (const auto& c : v.clauses) clauses.push_back(lca::json_of(c));
                result["clauses"] = clauses;
            }
            emit_report("classify", expr_text, result);
            return 0;
        }

        if (cmd_invariants->parsed()) {
            lca::GroupExpr e = parse_and_validate(expr_text);
            emit_report("invariants", expr_text, lca::json_of(lca::invariants(e)));
            return 0;
        }

        if (cmd_dual->parsed()) {
            lca::GroupExpr e = parse_and_validate(expr_text);
            emit_report("dual", expr_text, lca::Json(lca::render(lca::dual(e))));
            return 0;
        }

        if (cmd_decompose->parsed()) {
            lca::GroupExpr e = parse_and_validate(expr_text);
            emit_report("decompose", expr_text, lca::json_of(lca::decompose(e)));
            return 0;
        }

        if (cmd_lattice->parsed()) {
            std::vector<long long> orders = parse_group_spec(group_spec);
            lca::FgAbGroup g = lca::FgAbGroup::from_orders(0, orders);
            lca::Lattice l = lca::subgroup_lattice(g, lattice_bound());
            lca::Json result{{"group", lca::json_of(g)}, {"subgroups", l.size()}};
            if (want_modular) {
                auto violation = lca::check_modular_law(l);
                result["modular"] = !violation.has_value();
                if (violation)
                    result["violation"] =
                        lca::Json{{"a", violation->a}, {"b", violation->b}, {"c", violation->c}};
            }
            if (want_pentagon) {
                auto pent = lca::find_pentagon(l);
                result["pentagon"] = pent ? lca::Json{{"top", pent->top},
                                                      {"c", pent->c},
                                                      {"a", pent->a},
                                                      {"b", pent->b},
                                                      {"bottom", pent->bottom}}
                                          : lca::Json(nullptr);
            }
            emit_report("lattice", group_spec, result);
            return 0;
        }

        if (cmd_witness->parsed()) {
            if (family_id == "sqrt2") {
                auto [num, den] = parse_epsilon(eps_text);
                lca::DensityWitness w = lca::sqrt2_density_witness(num, den);
                emit_report("witness", family_id, lca::json_of(w));
                return 0;
            }
            if (family_id == "graph-monothetic") {
                if (levels == 0) levels = 10;
                lca::TruncationFamily f =
                    lca::make_family(lca::FamilyId::GraphOverMonothetic, wp ? wp : 2, wq ? wq : 3);
                lca::ExactMeetResult meets = lca::exact_meet(f, "B", "C", levels);
                lca::PentagonInstance pent = lca::pentagon_instance(f);
                lca::Json meet_table = lca::Json::array();
                for (int n = 1; n <= levels; ++n) {
                    const lca::Subgroup& m = meets.finite_level_meets[static_cast<std::size_t>(n - 1)];
                    meet_table.push_back(lca::Json{
                        {"level", n},
                        {"basis", m.basis},
                        {"indexInC", lca::subgroup_index(m, f.named_subgroup("C", n))},
                    });
                }
                bool confirmed = meets.meet_at_infinity == "0";
                emit_report("witness", family_id,
                            lca::Json{{"family", lca::family_name(f.id)},
                                      {"params", lca::Json{{"p", f.p}, {"q", f.q}}},
                                      {"levels", levels},
                                      {"meetAtInfinity", meets.meet_at_infinity},
                                      {"rationale", meets.rationale},
                                      {"meets", meet_table},
                                      {"pentagon", lca::json_of(pent)},
                                      {"confirmed", confirmed}});
                return confirmed ? 0 : kExitInternal;
            }
            if (family_id == "socle-sum" || family_id == "locprod-psquared") {
                if (levels == 0) levels = 16;
                lca::FamilyId id = family_id == "socle-sum" ? lca::FamilyId::DiscreteTimesCompactSocle
                                                            : lca::FamilyId::LocalProductPSquared;
                lca::TruncationFamily f = lca::make_family(id, wp ? wp : 2);
                lca::EscapeCertificate cert = lca::escape_certificate(f, levels);
                bool confirmed = cert.monotone && !cert.lower_bound.empty() &&
                                 cert.lower_bound.back() ==
                                     (id == lca::FamilyId::LocalProductPSquared ? levels / 2 : levels);
                lca::Json result = lca::json_of(cert);
                result["confirmed"] = confirmed;
                emit_report("witness", family_id, result);
                return confirmed ? 0 : kExitInternal;
            }
            throw CommandError{kExitParse, "bad-params", "unknown family \"" + family_id + "\""};
        }

        std::cout << app.help();
        return 0;
    } catch (const CommandError& e) {
        return emit_error(e);
    } catch (const lca::ParseError& e) {
        return emit_error({kExitParse, "parse", e.what(),
                           lca::Json{{"position", e.pos}}});
    } catch (const lca::BadParams& e) {
        return emit_error({kExitParse, "bad-params", e.what()});
    } catch (const lca::TooLarge& e) {
        return emit_error({kExitTooLarge, "too-large", e.what(),
                           lca::Json{{"value", e.value}, {"bound", e.bound}}});
    } catch (const lca::NotPeriodic& e) {
        return emit_error({kExitValidation, "not-periodic", e.what(), lca::Json{{"path", e.path}}});
    } catch (const lca::NotDualizable& e) {
        return emit_error({kExitValidation, "not-dualizable", e.what(), lca::Json{{"path", e.path}}});
    } catch (const lca::NotApplicable& e) {
        return emit_error({kExitValidation, "not-applicable", e.what()});
    } catch (const lca::UnknownLabel& e) {
        return emit_error({kExitValidation, "unknown-label", e.what()});
    } catch (const std::exception& e) {
        return emit_error({kExitInternal, "internal", e.what()});
    }
}
