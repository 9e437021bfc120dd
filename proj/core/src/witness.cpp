#include "lca/witness.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "lca/numbers.hpp"

namespace lca {
namespace {

constexpr long long kOrderCap = 1LL << 62;  // largest level order fgab handles exactly

long long pow_checked(long long base, int exp) {
    long long v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v >= kOrderCap / base)
            throw BadParams("level order " + std::to_string(base) + "^" + std::to_string(exp) +
                            " exceeds exact-arithmetic range");
        v *= base;
    }
    return v;
}

void require_level(int n) {
    if (n < 1) throw BadParams("levels start at 1");
}

std::vector<long long> unit_row(std::size_t dim, std::size_t at, long long value = 1) {
    std::vector<long long> row(dim, 0);
    row[at] = value;
    return row;
}

// Solve x * a = rhs over GF(p).  Returns the solution (empty optional when
// none) and the dimension of { x : x * a = 0 }.
struct GfSolve {
    std::optional<std::vector<long long>> solution;
    std::size_t kernel_dim = 0;
};

GfSolve gf_solve(const Mat& a, std::vector<long long> rhs, long long p) {
    std::size_t rows = a.size();
    std::size_t cols = rhs.size();
    // Augmented transpose: columns index the unknowns, one row per equation.
    Mat m(cols, std::vector<long long>(rows + 1, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != cols) throw std::invalid_argument("gf_solve: ragged input");
        for (std::size_t j = 0; j < cols; ++j) m[j][i] = ((a[i][j] % p) + p) % p;
    }
    for (std::size_t j = 0; j < cols; ++j) m[j][rows] = ((rhs[j] % p) + p) % p;

    auto inv_mod = [p](long long v) {
        long long r = 1, b = v % p, e = p - 2;  // p prime
        while (e > 0) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };

    std::vector<std::size_t> pivot_of_col(rows, cols);  // unknown -> equation row
    std::size_t rank = 0;
    for (std::size_t col = 0; col < rows && rank < cols; ++col) {
        std::size_t pr = rank;
        while (pr < cols && m[pr][col] == 0) ++pr;
        if (pr == cols) continue;
        std::swap(m[rank], m[pr]);
        long long inv = inv_mod(m[rank][col]);
        for (auto& v : m[rank]) v = v * inv % p;
        for (std::size_t r = 0; r < cols; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            long long f = m[r][col];
            for (std::size_t c = 0; c <= rows; ++c) m[r][c] = ((m[r][c] - f * m[rank][c]) % p + p) % p;
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    GfSolve out;
    out.kernel_dim = rows - rank;
    for (std::size_t r = rank; r < cols; ++r)
        if (m[r][rows] != 0) return out;  // inconsistent
    std::vector<long long> x(rows, 0);
    for (std::size_t col = 0; col < rows; ++col)
        if (pivot_of_col[col] != cols) x[col] = m[pivot_of_col[col]][rows];
    out.solution = std::move(x);
    return out;
}

std::size_t support(const std::vector<long long>& v, long long p) {
    std::size_t s = 0;
    for (long long x : v)
        if (((x % p) + p) % p != 0) ++s;
    return s;
}

// Generators of the diagonal-graph family's B at level m, second block only:
// the identity, since the i-th generator writes 1 into compact coordinate i.
Mat socle_graph_second_block(int m) {
    Mat g;
    for (int i = 0; i < m; ++i) g.push_back(unit_row(static_cast<std::size_t>(m), static_cast<std::size_t>(i)));
    return g;
}

// One level of the escape bound: decompose the truncated target over the
// graph generators, insist the decomposition is unique, count nonzero
// coefficients.  ones = how many leading compact coordinates the target
// fills at this level.
long long escape_bound_at(int m, int ones, long long p) {
    if (m == 0) return 0;
    std::vector<long long> rhs(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < ones; ++i) rhs[static_cast<std::size_t>(i)] = 1;
    GfSolve s = gf_solve(socle_graph_second_block(m), rhs, p);
    if (!s.solution) throw std::logic_error("escape target not reachable at its own level");
    if (s.kernel_dim != 0) throw std::logic_error("escape decomposition not unique");
    return static_cast<long long>(support(*s.solution, p));
}

}  // namespace

std::string family_name(FamilyId id) {
    switch (id) {
        case FamilyId::GraphOverMonothetic: return "GraphOverMonothetic";
        case FamilyId::DiscreteTimesCompactSocle: return "DiscreteTimesCompactSocle";
        case FamilyId::LocalProductPSquared: return "LocalProductPSquared";
    }
    return "?";
}

TruncationFamily make_family(FamilyId id, long long p, long long q) {
    if (p <= 0 || !is_prime(static_cast<std::uint64_t>(p)))
        throw BadParams("p must be prime, got " + std::to_string(p));
    if (id == FamilyId::GraphOverMonothetic) {
        if (q <= 0 || !is_prime(static_cast<std::uint64_t>(q)))
            throw BadParams("q must be prime, got " + std::to_string(q));
        if (p == q) throw BadParams("the graph construction needs distinct primes");
    } else if (q != 0) {
        throw BadParams(family_name(id) + " takes a single prime");
    }
    return TruncationFamily{id, p, q};
}

FgAbGroup TruncationFamily::level_group(int n) const {
    require_level(n);
    switch (id) {
        case FamilyId::GraphOverMonothetic:
            return FgAbGroup::from_orders(1, {pow_checked(q, n)});
        case FamilyId::DiscreteTimesCompactSocle: {
            std::vector<long long> orders(2 * static_cast<std::size_t>(n), p);
            return FgAbGroup::from_orders(0, std::move(orders));
        }
        case FamilyId::LocalProductPSquared: {
            std::vector<long long> orders(static_cast<std::size_t>(n), p * p);
            return FgAbGroup::from_orders(0, std::move(orders));
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<long long> TruncationFamily::project(int n, const std::vector<long long>& v) const {
    if (n < 2) throw std::invalid_argument("projection needs a level below");
    if (v.size() != level_group(n).dim()) throw std::invalid_argument("element has wrong dimension");
    switch (id) {
        case FamilyId::GraphOverMonothetic: {
            long long mod = pow_checked(q, n - 1);
            return {v[0], ((v[1] % mod) + mod) % mod};
        }
        case FamilyId::DiscreteTimesCompactSocle: {
            std::size_t m = static_cast<std::size_t>(n);
            std::vector<long long> w;
            for (std::size_t i = 0; i < m - 1; ++i) w.push_back(v[i]);
            for (std::size_t i = 0; i < m - 1; ++i) w.push_back(v[m + i]);
            return w;
        }
        case FamilyId::LocalProductPSquared:
            return std::vector<long long>(v.begin(), v.end() - 1);
    }
    throw std::logic_error("unreachable");
}

Subgroup TruncationFamily::named_subgroup(const std::string& label, int n) const {
    require_level(n);
    FgAbGroup g = level_group(n);
    std::size_t dim = g.dim();
    if (label == "G") return sub_full(g);
    switch (id) {
        case FamilyId::GraphOverMonothetic: {
            if (label == "A") return sub_from_generators(g, {{p, 0}});
            if (label == "B") return sub_from_generators(g, {{1, 1}});
            if (label == "C") return sub_from_generators(g, {{1, 0}});
            break;
        }
        case FamilyId::DiscreteTimesCompactSocle: {
            std::size_t m = static_cast<std::size_t>(n);
            Mat first, diag;
            for (std::size_t i = 0; i < m; ++i) {
                first.push_back(unit_row(dim, i));
                std::vector<long long> d(dim, 0);
                d[i] = 1;
                d[m + i] = 1;
                diag.push_back(d);
            }
            std::vector<long long> constant(dim, 0);
            for (std::size_t i = 0; i < m; ++i) constant[m + i] = 1;
            if (label == "A") return sub_from_generators(g, first);
            if (label == "B") return sub_from_generators(g, diag);
            if (label == "K") return sub_from_generators(g, {constant});
            if (label == "C") {
                first.push_back(constant);
                return sub_from_generators(g, first);
            }
            break;
        }
        case FamilyId::LocalProductPSquared: {
            // Coordinates split by parity: even ones carry the discrete
            // side of the reduction, odd ones the compact side.
            if (label == "socle") {
                Mat rows;
                for (std::size_t i = 0; i < dim; ++i) rows.push_back(unit_row(dim, i, p));
                return sub_from_generators(g, rows);
            }
            if (label == "A") {
                Mat rows;
                for (std::size_t i = 0; i < dim; i += 2) rows.push_back(unit_row(dim, i));
                return sub_from_generators(g, rows);
            }
            if (label == "B") {
                Mat rows;
                for (std::size_t i = 0; i + 1 < dim; i += 2) {
                    std::vector<long long> pair(dim, 0);
                    pair[i] = 1;
                    pair[i + 1] = p;
                    rows.push_back(pair);
                }
                for (std::size_t i = 0; i < dim; i += 2) rows.push_back(unit_row(dim, i, p));
                if (dim % 2 == 1) rows.push_back(unit_row(dim, dim - 1));  // partner beyond the cut
                return sub_from_generators(g, rows);
            }
            break;
        }
    }
    throw UnknownLabel(label);
}

std::vector<std::string> TruncationFamily::labels() const {
    switch (id) {
        case FamilyId::GraphOverMonothetic: return {"A", "B", "C", "G"};
        case FamilyId::DiscreteTimesCompactSocle: return {"A", "B", "C", "K", "G"};
        case FamilyId::LocalProductPSquared: return {"A", "B", "socle", "G"};
    }
    return {};
}

Subgroup closure_level(const TruncationFamily& f, const std::string& x_label,
                       const std::string& y_label, int n) {
    return sub_sum(f.named_subgroup(x_label, n), f.named_subgroup(y_label, n));
}

EscapeCertificate escape_certificate(const TruncationFamily& f, int n_max,
                                     std::optional<int> target_support) {
    require_level(n_max);
    if (f.id == FamilyId::GraphOverMonothetic)
        throw NotApplicable("sums in this family are closed; its defect is the meet, see exact_meet");
    if (target_support && *target_support < 0) throw BadParams("target support must be nonnegative");

    EscapeCertificate cert;
    cert.family = f.id;
    cert.p = f.p;
    cert.levels = n_max;

    bool reduced = f.id == FamilyId::LocalProductPSquared;
    for (int n = 1; n <= n_max; ++n) {
        // m compact coordinates carry the target at this level.
        int m = reduced ? n / 2 : n;
        int ones = target_support ? std::min(m, *target_support) : m;
        cert.lower_bound.push_back(escape_bound_at(m, ones, f.p));

        // The truncated target must lie in A_n + B_n, else it would not
        // be in the closure and the bound would certify nothing.
        FgAbGroup g = f.level_group(n);
        std::vector<long long> target(g.dim(), 0);
        if (reduced) {
            for (int i = 0; 2 * i + 1 < n && i < ones; ++i)
                target[static_cast<std::size_t>(2 * i + 1)] = f.p;
        } else {
            for (int i = 0; i < ones; ++i) target[static_cast<std::size_t>(n + i)] = 1;
        }
        if (!member(target, closure_level(f, "A", "B", n)))
            throw std::logic_error("escape target left the closure at level " + std::to_string(n));
    }

    cert.monotone = std::is_sorted(cert.lower_bound.begin(), cert.lower_bound.end());
    if (!cert.monotone) throw std::logic_error("escape bound decreased between levels");

    std::string coord = reduced ? "p times each odd coordinate" : "one in each compact coordinate";
    std::string count = reduced ? "floor(n/2), through the paired subquotient that replays the"
                                  " discrete-against-compact family"
                                : "n";
    if (target_support) {
        cert.target = "finite-support variant: " + coord + ", first " +
                      std::to_string(*target_support) + " only";
        cert.unbounded_rule = "bound at level n is min(" + count + ", " +
                              std::to_string(*target_support) + "); it stabilizes";
        cert.verdict = "target lies in the sum itself: a single finite-support preimage works at every level";
    } else {
        cert.target = coord + ", at every level";
        cert.unbounded_rule =
            "any one element of the sum matching the level-n truncation needs a discrete summand of "
            "support " + count + ", which grows without bound";
        cert.verdict = "target lies in the closure of the sum but not in the sum: the sum is not closed";
    }
    return cert;
}

ExactMeetResult exact_meet(const TruncationFamily& f, const std::string& b_label,
                           const std::string& c_label, int n_max) {
    require_level(n_max);
    if (f.id != FamilyId::GraphOverMonothetic)
        throw NotApplicable("exact meets are computed on the graph family; the others fail through sums");

    ExactMeetResult out;
    for (int n = 1; n <= n_max; ++n)
        out.finite_level_meets.push_back(
            sub_meet(f.named_subgroup(b_label, n), f.named_subgroup(c_label, n)));

    // The limit meet falls out of the valuation argument: an element of B
    // is z(1,1), it lies in C at level n exactly when q^n divides z, and
    // only zero is divisible by every power of q.  The finite cases below
    // are the degenerate label choices.
    auto one_of = [&](const char* x, const char* y) {
        return (b_label == x && c_label == y) || (b_label == y && c_label == x);
    };
    if (b_label == c_label) {
        out.meet_at_infinity = b_label;
        out.rationale = "a subgroup met with itself";
    } else if (b_label == "G" || c_label == "G") {
        out.meet_at_infinity = b_label == "G" ? c_label : b_label;
        out.rationale = "meet with the whole group";
    } else if (one_of("B", "C") || one_of("B", "A")) {
        out.meet_at_infinity = "0";
        out.rationale =
            "an element of B is z(1,1); lying in the other subgroup kills its compact "
            "coordinate, so q^n | z at every level n and z = 0";
    } else if (one_of("A", "C")) {
        out.meet_at_infinity = "A";
        out.rationale = "A is contained in C at every level";
    } else {
        throw UnknownLabel(b_label + "/" + c_label);
    }

    // The claimed limit sits inside every finite meet.
    for (int n = 1; n <= n_max; ++n) {
        const Subgroup& meet = out.finite_level_meets[static_cast<std::size_t>(n - 1)];
        bool ok = out.meet_at_infinity == "0"
                      ? member(std::vector<long long>{0, 0}, meet)
                      : sub_leq(f.named_subgroup(out.meet_at_infinity, n), meet);
        if (!ok) throw std::logic_error("limit meet escaped the level-" + std::to_string(n) + " meet");
    }
    return out;
}

PentagonInstance pentagon_instance(const TruncationFamily& f, const std::string& c_label) {
    if (f.id != FamilyId::GraphOverMonothetic)
        throw NotApplicable("the pentagon lives in the graph family");

    constexpr int kJoinLevels = 8;

    // Defining relations first; a failed one means the chosen configuration
    // is modular and carries no pentagon.
    for (int n = 1; n <= kJoinLevels; ++n) {
        Subgroup full = f.named_subgroup("G", n);
        if (!(sub_leq(f.named_subgroup("A", n), f.named_subgroup(c_label, n))))
            throw NotApplicable("A is not below " + c_label);
        if (closure_level(f, "A", "B", n) != full || closure_level(f, c_label, "B", n) != full)
            throw NotApplicable("joins with B do not reach the whole group");
    }
    if (f.named_subgroup("A", 1) == f.named_subgroup(c_label, 1))
        throw NotApplicable("A equals " + c_label + "; the chain has no middle");
    if (exact_meet(f, "B", c_label, kJoinLevels).meet_at_infinity != "0" ||
        exact_meet(f, "B", "A", kJoinLevels).meet_at_infinity != "0")
        throw NotApplicable("meets with B at infinity are nonzero; the configuration is modular");

    PentagonInstance w;
    w.top = "G";
    w.upper = c_label;
    w.lower = "A";
    w.side = "B";
    w.bottom = "0";
    w.relations = {
        "A < " + c_label,
        "A | B = G at levels 1.." + std::to_string(kJoinLevels),
        c_label + " | B = G at levels 1.." + std::to_string(kJoinLevels),
        "A & B = 0 at infinity",
        c_label + " & B = 0 at infinity",
    };

    // Ten separating certificates, each a membership check at level 1.
    FgAbGroup g1 = f.level_group(1);
    Subgroup zero = sub_zero(g1);
    auto in_label = [&](const std::vector<long long>& v, const std::string& label) {
        return label == "0" ? member(v, zero) : member(v, f.named_subgroup(label, 1));
    };
    auto separate = [&](const std::string& l, const std::string& r, std::vector<long long> v,
                        const std::string& shown) {
        if (!in_label(v, l) || in_label(v, r))
            throw std::logic_error("separation of " + l + " and " + r + " failed");
        w.distinctness.push_back({l, r, shown + " lies in " + l + " and not in " + r + " at level 1"});
    };
    std::string pz = "(" + std::to_string(f.p) + ",0)";
    separate("G", c_label, {0, 1}, "(0,1)");
    separate("G", "A", {1, 0}, "(1,0)");
    separate("G", "B", {1, 0}, "(1,0)");
    separate("G", "0", {1, 0}, "(1,0)");
    separate(c_label, "A", {1, 0}, "(1,0)");
    separate(c_label, "B", {1, 0}, "(1,0)");
    w.distinctness.back().evidence += "; the meet at infinity is 0 while " + c_label + " is not";
    separate(c_label, "0", {1, 0}, "(1,0)");
    separate("A", "B", {f.p, 0}, pz);
    separate("A", "0", {f.p, 0}, pz);
    separate("B", "0", {1, 1}, "(1,1)");
    return w;
}

DensityWitness sqrt2_density_witness(long long eps_num, long long eps_den) {
    if (eps_num <= 0 || eps_den <= 0 || eps_num >= eps_den)
        throw BadParams("epsilon must satisfy 0 < epsilon < 1");

    // Convergents h/k of sqrt(2): 1/1, 3/2, 7/5, ...  Each gives the pair
    // (a, b) = (-k, h) with (2a)^2 - 2b^2 = -2(h^2 - 2k^2) = +-2, and
    //
    //   |2a + b sqrt2| = 2 / (2k + h sqrt2) < 2 / (2k + h).
    //
    // So the first convergent with eps_den * 2 < eps_num * (2k + h) is a
    // certified witness.
    __int128 h = 1, k = 1;
    while (static_cast<__int128>(eps_den) * 2 >= static_cast<__int128>(eps_num) * (2 * k + h)) {
        __int128 h2 = h + 2 * k;
        __int128 k2 = h + k;
        h = h2;
        k = k2;
        if (h >= static_cast<__int128>(kOrderCap))
            throw BadParams("epsilon too small for 64-bit certification");
    }

    DensityWitness w;
    w.a = static_cast<long long>(-k);
    w.b = static_cast<long long>(h);
    w.eps_num = eps_num;
    w.eps_den = eps_den;
    w.norm = 4 * w.a * w.a - 2 * w.b * w.b;
    if (w.norm != 2 && w.norm != -2) throw std::logic_error("convergent pair left the Pell curve");

    long long s = 2 * std::llabs(w.a) + w.b;
    std::ostringstream cert;
    cert << "(2*" << w.a << ")^2 - 2*" << w.b << "^2 = " << w.norm
         << ", so |2a + b*sqrt(2)| = 2 / (2*" << std::llabs(w.a) << " + " << w.b
         << "*sqrt(2)) < 2/" << s << "; " << eps_den << "*2 = " << eps_den * 2 << " < " << eps_num
         << "*" << s << " = " << eps_num * s << " places 2/" << s << " below " << eps_num << "/"
         << eps_den << ", and the norm -2 or 2 rules out zero";
    w.certificate = cert.str();
    return w;
}

}  // namespace lca
