#include "lca/classify.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace lca {

namespace {

AtomKind ckind(const GroupExpr& c) {
    return c.kind() == ExprKind::Atom ? c.as_atom().kind : c.tmpl().kind;
}

Cardinal cmult(const GroupExpr& c) {
    return c.kind() == ExprKind::Atom ? Cardinal::finite(1) : c.card();
}

// At most this many failing components get their full clause trace; the
// rest are only counted in the summary witness.
constexpr int kDetailCap = 3;

struct Decision {
    bool ok = true;
    std::vector<Clause> clauses;
};

void add(Decision& d, const char* id, const char* quote, bool ok, std::string witness) {
    d.clauses.push_back(Clause{id, quote, ok, std::move(witness)});
}

std::string set_str(const PrimeClassSet& s, std::uint64_t tail_above) {
    std::string out;
    if (!s.primes.empty()) {
        out = "{";
        for (std::size_t i = 0; i < s.primes.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(s.primes[i]);
        }
        out += "}";
    }
    if (s.includes_tail) {
        if (!out.empty()) out += " and ";
        out += "every prime above " + std::to_string(tail_above);
    }
    if (out.empty()) out = "no primes";
    return out;
}

// One primary component, first decision tree: either a compact open
// subgroup of finite rank, or a closed divisible part of finite rank with
// small quotients on both sides.
Decision tm_component(const PrimaryDescriptor& d, const std::string& at) {
    Decision out;
    ExtNat ru = d.rank_of_open_compact();
    if (ru.is_finite()) {
        add(out, "tm.primary.open-rank-finite",
            "some compact open subgroup has finite rank", true,
            at + ": the compact open part has rank " + ru.str());
        add(out, "tm.primary.torsion-discrete",
            "the torsion subgroup is discrete", true,
            at + ": it meets the compact open part in a finite subgroup");
        add(out, "tm.primary.torsion-quotient-rank",
            "the quotient by the torsion subgroup has finite rank", true,
            at + ": bounded by the rank of the compact open part");
        return out;
    }
    bool closed = d.divisible_is_closed();
    add(out, "tm.primary.divisible-closed",
        "the divisible subgroup is closed", closed,
        at + (closed ? ": the divisible slots split off"
                     : ": the divisible part is dense in a restricted product"));
    ExtNat rq = d.rank_of_quotient_by_open_compact();
    add(out, "tm.primary.small-quotient",
        "the quotient by a compact open subgroup has finite rank", rq.is_finite(),
        at + ": that quotient has rank " + rq.str());
    ExtNat dr = d.divisible_rank();
    add(out, "tm.primary.divisible-rank-finite",
        "the divisible subgroup has finite rank", dr.is_finite(),
        at + ": divisible rank " + dr.str());
    bool rest = d.quotient_by_divisible_compact();
    add(out, "tm.primary.residual-compact",
        "the quotient by the divisible subgroup is compact", rest,
        at + (rest ? ": only compact slots remain above the divisible part"
                   : ": discrete or restricted slots survive the quotient"));
    out.ok = closed && rq.is_finite() && dr.is_finite() && rest;
    return out;
}

// One primary component, second decision tree, leaf by leaf: discrete,
// compact, rank one, divisible with finitely many Qp lines, or an
// open finitely generated subgroup / finite-rank divisible split.
Decision stqh_component(const PrimaryDescriptor& d, const std::string& at) {
    Decision out;
    if (d.entirely_discrete()) {
        add(out, "stqh.primary.discrete", "the component is discrete", true, at);
        return out;
    }
    if (d.entirely_compact()) {
        add(out, "stqh.primary.compact", "the component is compact", true, at);
        return out;
    }
    ExtNat r = d.rank();
    if (!(ExtNat::finite(1) < r)) {
        add(out, "stqh.primary.rank-one",
            "the component has rank one, so its closed subgroups form a chain", true,
            at + ": rank " + r.str());
        return out;
    }
    bool div_shape = d.cyclic_discrete.empty() && d.cyclic_compact_power.empty() &&
                     d.zp_mult_compact.is_zero() && d.cyclic_local.empty() &&
                     d.zp_local.empty() && d.pruefer_local.empty() && d.qp_mult.is_finite();
    if (div_shape) {
        add(out, "stqh.primary.divisible-shape",
            "the component is divisible with finitely many Qp lines", true,
            at + ": Qp multiplicity " + d.qp_mult.str());
        return out;
    }
    if (!d.divisible_is_closed()) {
        add(out, "stqh.primary.divisible-closed",
            "the divisible subgroup is closed", false,
            at + ": infinitely many divisible factors share the prime");
        out.ok = false;
        return out;
    }
    ExtNat ru = d.rank_of_open_compact();
    if (ru.is_finite()) {
        add(out, "stqh.primary.open-finitely-generated",
            "some compact open subgroup is topologically finitely generated", true,
            at + ": the compact open part has rank " + ru.str());
        return out;
    }
    bool ok = d.divisible_rank().is_finite() && d.quotient_by_divisible_compact();
    add(out, "stqh.primary.divisible-split",
        "the divisible subgroup has finite rank and leaves a compact remainder", ok,
        at + ": divisible rank " + d.divisible_rank().str() +
            (ok ? ", remainder compact" : ", remainder not compact"));
    out.ok = ok;
    return out;
}

enum class PClass { Delta, Gamma, Mu, Phi };

PClass class_of(const PrimaryDescriptor& d) {
    if (d.entirely_discrete()) return PClass::Delta;
    if (d.entirely_compact()) return PClass::Gamma;
    if (!(ExtNat::finite(1) < d.rank())) return PClass::Mu;
    return PClass::Phi;
}

PrimeClassSet& bucket(PeriodicPartition& part, PClass c) {
    switch (c) {
        case PClass::Delta: return part.delta;
        case PClass::Gamma: return part.gamma;
        case PClass::Mu: return part.mu;
        case PClass::Phi: return part.phi;
    }
    return part.phi;
}

PeriodicPartition partition_of(const PrimaryDecomposition& dec) {
    PeriodicPartition part;
    part.tail_above = dec.tail_above;
    for (const auto& [p, d] : dec.at) bucket(part, class_of(d)).primes.push_back(p);
    if (dec.tail) bucket(part, class_of(*dec.tail)).includes_tail = true;
    return part;
}

std::string join_primes(const std::vector<std::uint64_t>& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(ps[i]);
    }
    return out;
}

// All primary components at once.
Decision tm_periodic(const PrimaryDecomposition& dec) {
    Decision out;
    std::vector<std::uint64_t> failing;
    std::vector<Clause> details;
    for (const auto& [p, d] : dec.at) {
        Decision one = tm_component(d, "p=" + std::to_string(p));
        if (!one.ok) {
            if (failing.size() < kDetailCap)
                details.insert(details.end(), one.clauses.begin(), one.clauses.end());
            failing.push_back(p);
        }
    }
    bool tail_ok = true;
    if (dec.tail) {
        Decision t = tm_component(*dec.tail, "every prime above " + std::to_string(dec.tail_above));
        tail_ok = t.ok;
        if (!t.ok) details.insert(details.end(), t.clauses.begin(), t.clauses.end());
    }
    out.ok = failing.empty() && tail_ok;
    std::string wit;
    if (out.ok) {
        wit = "checked " + std::to_string(dec.at.size()) + " concrete prime(s)" +
              (dec.tail ? " and the shared tail" : "");
    } else {
        if (!failing.empty()) wit = "fails at p=" + join_primes(failing);
        if (!tail_ok) wit += (wit.empty() ? std::string("fails ") : std::string(" and ")) + "at the tail";
    }
    add(out, "tm.periodic.componentwise",
        "every primary component passes its one-prime test", out.ok, std::move(wit));
    out.clauses.insert(out.clauses.end(), details.begin(), details.end());
    return out;
}

Decision stqh_periodic(const PrimaryDecomposition& dec, const PeriodicPartition& part) {
    Decision out;
    add(out, "stqh.partition.delta-discrete",
        "the delta classes meet the compact subgroup trivially and stay discrete", true,
        set_str(part.delta, part.tail_above));
    add(out, "stqh.partition.gamma-profinite",
        "the gamma classes sit inside the compact subgroup", true,
        set_str(part.gamma, part.tail_above));
    add(out, "stqh.partition.mu-monothetic",
        "the mu classes have rank one and fold into a single generator tower", true,
        set_str(part.mu, part.tail_above));
    bool phi_fin = !part.phi.includes_tail;
    add(out, "stqh.partition.phi-finite",
        "only finitely many primes need individual treatment", phi_fin,
        set_str(part.phi, part.tail_above));

    bool members = true;
    std::vector<Clause> details;
    std::vector<std::uint64_t> failing;
    for (std::uint64_t p : part.phi.primes) {
        Decision one = stqh_component(dec.at.at(p), "p=" + std::to_string(p));
        if (!one.ok) {
            if (failing.size() < kDetailCap)
                details.insert(details.end(), one.clauses.begin(), one.clauses.end());
            failing.push_back(p);
            members = false;
        }
    }
    std::string wit = part.phi.primes.empty()
                          ? std::string("phi holds no concrete primes")
                          : (members ? "checked p=" + join_primes(part.phi.primes)
                                     : "fails at p=" + join_primes(failing));
    add(out, "stqh.partition.phi-components",
        "each phi component passes its one-prime test", members, std::move(wit));
    out.clauses.insert(out.clauses.end(), details.begin(), details.end());

    add(out, "stqh.partition.direct-sum",
        "the four classes decompose the group as a direct sum", true,
        "the grammar splits every family along its class boundaries");
    out.ok = phi_fin && members;
    return out;
}

}  // namespace

std::string route_name(Route r) {
    switch (r) {
        case Route::Discrete: return "Discrete";
        case Route::Compact: return "Compact";
        case Route::NoncompactComponent: return "NoncompactComponent";
        case Route::ConnectedViaDual: return "ConnectedViaDual";
        case Route::PGroup: return "PGroup";
        case Route::Torsion: return "Torsion";
        case Route::Periodic: return "Periodic";
        case Route::TotallyDisconnectedNonperiodic: return "TotallyDisconnectedNonperiodic";
    }
    return "Unknown";
}

Verdict classify(const GroupExpr& e) {
    Verdict v;
    v.chosen_U = chosen_open_compact(e);

    Cardinal zc = Cardinal::finite(0), rc = Cardinal::finite(0), tc = Cardinal::finite(0);
    for (const GroupExpr* c : e.constituents()) {
        switch (ckind(*c)) {
            case AtomKind::Integers: zc += cmult(*c); break;
            case AtomKind::Reals: rc += cmult(*c); break;
            case AtomKind::Circle: tc += cmult(*c); break;
            default: break;
        }
    }

    if (!rc.is_zero()) {
        v.route = Route::NoncompactComponent;
        v.clauses.push_back({"component.identity-compact",
                             "the identity component is compact", false,
                             "vector summands leave the connected part noncompact (R-rank " +
                                 rc.str() + ")"});
        return v;
    }

    InvariantRecord rec = invariants(e);
    if (rec.is_discrete) {
        v.route = Route::Discrete;
        v.tm = v.stqh = true;
        v.clauses.push_back({"tm.discrete",
                             "in a discrete abelian group every subgroup is closed", true,
                             "the subgroup lattice is the full modular lattice of subgroups"});
        v.clauses.push_back({"stqh.discrete",
                             "in a discrete abelian group sums of subgroups are closed", true,
                             "sums of subgroups are subgroups"});
        return v;
    }
    if (rec.is_compact) {
        v.route = Route::Compact;
        v.tm = v.stqh = true;
        v.clauses.push_back({"tm.compact",
                             "in a compact abelian group sums of closed subgroups are compact",
                             true, "continuous images of compact products are closed"});
        v.clauses.push_back({"stqh.compact",
                             "closed subgroups of a compact group permute", true,
                             "X+Y is a continuous image of the compact X x Y"});
        return v;
    }

    if (!tc.is_zero()) {
        v.route = Route::ConnectedViaDual;
        if (!zc.is_zero()) {
            v.clauses.push_back({"component.dual-totally-disconnected",
                                 "a positive verdict forces the dual to be totally disconnected",
                                 false,
                                 "free summands dualize to circle parts next to the compact "
                                 "connected part (Z-rank " + zc.str() + ")"});
            return v;
        }
        GroupExpr d = dual(e);
        Verdict dv = classify(d);
        v.clauses.push_back({"component.dual-transfer",
                             "both properties transfer across the Pontryagin dual", true,
                             "dual = " + render(d)});
        v.clauses.insert(v.clauses.end(), dv.clauses.begin(), dv.clauses.end());
        v.tm = dv.tm;
        v.stqh = dv.stqh;
        return v;
    }

    PrimaryDecomposition dec = primary_decompose(e);

    if (!zc.is_zero()) {
        v.route = Route::TotallyDisconnectedNonperiodic;
        bool all_torsion = true;
        const GroupExpr* offender = nullptr;
        for (const GroupExpr* c : e.constituents()) {
            if (ckind(*c) == AtomKind::Integers || cmult(*c).is_zero()) continue;
            if (!constituent_torsion(*c)) {
                all_torsion = false;
                offender = c;
                break;
            }
        }
        Decision d;
        add(d, "nonperiodic.torsion-equals-compact",
            "the compact elements form exactly the torsion subgroup", all_torsion,
            all_torsion ? std::string("every primary summand is torsion")
                        : "summand " + render(*offender) + " has compact elements of infinite order");
        if (all_torsion)
            add(d, "nonperiodic.torsion-open",
                "the torsion subgroup is open with discrete free quotient", true,
                "the primary summands span an open subgroup with quotient Z^" + zc.str());
        bool zfin = zc.is_finite();
        add(d, "nonperiodic.free-rank-finite",
            "the discrete free quotient has finite rank", zfin, "Z-rank " + zc.str());
        PeriodicPartition part = partition_of(dec);
        Decision ker = stqh_periodic(dec, part);
        add(d, "nonperiodic.kernel-stqh",
            "the open periodic kernel is strongly topologically quasihamiltonian", ker.ok,
            ker.ok ? "the partition below certifies the kernel" : "the partition below fails");
        d.clauses.insert(d.clauses.end(), ker.clauses.begin(), ker.clauses.end());
        v.tm = v.stqh = all_torsion && zfin && ker.ok;
        add(d, "nonperiodic.coincidence",
            "on this route the two properties stand or fall together", true,
            v.tm ? "both positive" : "both negative");
        v.clauses = std::move(d.clauses);
        return v;
    }

    bool single = dec.at.size() == 1 && !dec.tail;
    if (single) {
        v.route = Route::PGroup;
        const auto& [p, desc] = *dec.at.begin();
        Decision t = tm_component(desc, "p=" + std::to_string(p));
        Decision s = stqh_component(desc, "p=" + std::to_string(p));
        v.tm = t.ok;
        v.stqh = s.ok;
        v.clauses = std::move(t.clauses);
        v.clauses.insert(v.clauses.end(), s.clauses.begin(), s.clauses.end());
        v.clauses.push_back({"pgroup.coincidence",
                             "for a one-prime group the two properties coincide", v.tm == v.stqh,
                             std::string("tm = ") + (v.tm ? "true" : "false") + ", stqh = " +
                                 (v.stqh ? "true" : "false")});
        return v;
    }

    v.route = rec.is_torsion ? Route::Torsion : Route::Periodic;
    Decision t = tm_periodic(dec);
    PeriodicPartition part = partition_of(dec);
    Decision s = stqh_periodic(dec, part);
    v.tm = t.ok;
    v.stqh = s.ok;
    v.clauses = std::move(t.clauses);
    v.clauses.insert(v.clauses.end(), s.clauses.begin(), s.clauses.end());
    return v;
}

Verdict classify_tm(const GroupExpr& e) { return classify(e); }

Verdict classify_stqh(const GroupExpr& e) { return classify(e); }

PeriodicPartition partition_periodic(const GroupExpr& e) {
    return partition_of(primary_decompose(e, true));
}

namespace {

GroupExpr one_factor(const GroupExpr& fam, std::uint64_t p) {
    return GroupExpr::atom(fam.tmpl().instantiate(p));
}

GroupExpr reseeded(const GroupExpr& fam, PrimeSequence s2) {
    AtomTemplate t2 = AtomTemplate::over(fam.tmpl().kind, std::move(s2), fam.tmpl().exponent);
    switch (fam.kind()) {
        case ExprKind::DiscreteSum: return GroupExpr::dsum(t2, fam.card());
        case ExprKind::Product: return GroupExpr::prod(t2, fam.card());
        default: return GroupExpr::locprod(t2, fam.sub_index(), fam.card());
    }
}

// Splits a family over a distinct-prime sequence into one factor per
// already-materialized prime plus, for infinite families, the remainder
// over the sequence with those primes removed.
struct SeqSplit {
    std::vector<std::pair<std::uint64_t, GroupExpr>> concrete;
    std::optional<GroupExpr> tail_piece;
};

SeqSplit split_family(const GroupExpr& fam, const std::set<std::uint64_t>& at_keys) {
    SeqSplit out;
    const PrimeSequence& s = *fam.tmpl().seq;
    if (fam.card().is_finite()) {
        for (std::uint64_t i = 0; i < fam.card().n; ++i) {
            std::uint64_t p = s.at(i);
            out.concrete.emplace_back(p, one_factor(fam, p));
        }
        return out;
    }
    std::vector<std::uint64_t> drop;
    for (std::uint64_t p : at_keys)
        if (s.contains(p)) {
            out.concrete.emplace_back(p, one_factor(fam, p));
            drop.push_back(p);
        }
    if (drop.empty()) {
        out.tail_piece = fam;
        return out;
    }
    std::uint64_t bound = s.tail_threshold();
    for (std::uint64_t p : drop) bound = std::max(bound, p);
    std::vector<std::uint64_t> seed2;
    for (std::uint64_t i = 0;; ++i) {
        std::uint64_t q = s.at(i);
        if (q > bound) break;
        if (std::find(drop.begin(), drop.end(), q) == drop.end()) seed2.push_back(q);
    }
    seed2.push_back(next_prime(bound));
    out.tail_piece = reseeded(fam, PrimeSequence::distinct(std::move(seed2)));
    return out;
}

GroupExpr bucket_sum(std::vector<GroupExpr> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    return GroupExpr::sum(std::move(parts));
}

void emit(Decomposition& d, const char* label, std::vector<GroupExpr> parts) {
    if (!parts.empty()) d.summands.emplace_back(label, bucket_sum(std::move(parts)));
}

bool distinct_seq(const GroupExpr& c) {
    return c.kind() != ExprKind::Atom && c.tmpl().uses_sequence() &&
           c.tmpl().seq->kind == PrimeSequence::Kind::Distinct;
}

std::uint64_t fixed_prime(const GroupExpr& c) {
    if (c.kind() == ExprKind::Atom) return c.as_atom().p;
    if (c.tmpl().uses_sequence()) return c.tmpl().seq->constant_p;
    return c.tmpl().p;
}

}  // namespace

Decomposition decompose(const GroupExpr& e) {
    Verdict v = classify(e);
    auto bail = [&]() -> void {
        throw NotApplicable("decompose: the verdict on route " + route_name(v.route) +
                            " is negative");
    };

    Decomposition d;
    switch (v.route) {
        case Route::Discrete:
            d.theorem = "split.discrete";
            d.summands.emplace_back("discrete", e);
            return d;
        case Route::Compact:
            d.theorem = "split.compact";
            d.summands.emplace_back("compact", e);
            return d;
        case Route::NoncompactComponent:
            bail();
            break;
        case Route::ConnectedViaDual: {
            if (!v.tm) bail();
            d.theorem = "split.component.shape";
            std::vector<GroupExpr> g0, z_delta, z_phi, f_phi, s_delta, t_loc;
            for (const GroupExpr* c : e.constituents()) {
                if (cmult(*c).is_zero()) continue;
                switch (ckind(*c)) {
                    case AtomKind::Circle: g0.push_back(*c); break;
                    case AtomKind::Cyclic:
                        if (constituent_discrete(*c)) f_phi.push_back(*c);
                        else if (constituent_compact(*c)) s_delta.push_back(*c);
                        else t_loc.push_back(*c);
                        break;
                    case AtomKind::Pruefer: f_phi.push_back(*c); break;
                    case AtomKind::PadicIntegers:
                        if (constituent_compact(*c)) z_delta.push_back(*c);
                        else z_phi.push_back(*c);
                        break;
                    case AtomKind::PadicRationals: z_phi.push_back(*c); break;
                    default: break;
                }
            }
            emit(d, "G0", std::move(g0));
            emit(d, "Z_delta", std::move(z_delta));
            emit(d, "Z_phi", std::move(z_phi));
            emit(d, "F_phi", std::move(f_phi));
            emit(d, "S_delta", std::move(s_delta));
            emit(d, "T_loc", std::move(t_loc));
            return d;
        }
        case Route::PGroup: {
            if (!v.tm) bail();
            d.theorem = "split.primary.reduced-divisible";
            std::vector<GroupExpr> div, red;
            for (const GroupExpr* c : e.constituents()) {
                if (cmult(*c).is_zero()) continue;
                (constituent_divisible(*c) ? div : red).push_back(*c);
            }
            emit(d, "D", std::move(div));
            emit(d, "R", std::move(red));
            return d;
        }
        case Route::Torsion:
        case Route::Periodic: {
            if (!v.stqh) bail();
            PrimaryDecomposition dec = primary_decompose(e);
            std::set<std::uint64_t> at_keys;
            for (const auto& [p, desc] : dec.at) at_keys.insert(p);
            auto cls = [&](std::uint64_t p) -> PClass {
                auto it = dec.at.find(p);
                if (it != dec.at.end()) return class_of(it->second);
                return class_of(*dec.tail);
            };
            std::array<std::vector<GroupExpr>, 4> by;
            auto put = [&](PClass c, GroupExpr g) { by[static_cast<int>(c)].push_back(std::move(g)); };
            for (const GroupExpr* c : e.constituents()) {
                if (cmult(*c).is_zero()) continue;
                if (distinct_seq(*c)) {
                    SeqSplit sp = split_family(*c, at_keys);
                    for (auto& [p, g] : sp.concrete) put(cls(p), std::move(g));
                    if (sp.tail_piece) put(class_of(*dec.tail), std::move(*sp.tail_piece));
                } else {
                    put(cls(fixed_prime(*c)), *c);
                }
            }
            auto& phi = by[static_cast<int>(PClass::Phi)];
            emit(d, "A_delta", std::move(by[static_cast<int>(PClass::Delta)]));
            emit(d, "A_gamma", std::move(by[static_cast<int>(PClass::Gamma)]));
            if (v.route == Route::Torsion) {
                d.theorem = "split.torsion.classes";
                std::vector<GroupExpr> div, red;
                for (GroupExpr& g : phi) (constituent_divisible(g) ? div : red).push_back(std::move(g));
                emit(d, "D_phi", std::move(div));
                emit(d, "V_phi", std::move(red));
            } else {
                d.theorem = "split.periodic.classes";
                emit(d, "A_phi", std::move(phi));
            }
            emit(d, "A_mu", std::move(by[static_cast<int>(PClass::Mu)]));
            return d;
        }
        case Route::TotallyDisconnectedNonperiodic: {
            if (!v.tm) bail();
            d.theorem = "split.nonperiodic.free-over-kernel";
            std::vector<GroupExpr> zfree, tor;
            for (const GroupExpr* c : e.constituents()) {
                if (cmult(*c).is_zero()) continue;
                (ckind(*c) == AtomKind::Integers ? zfree : tor).push_back(*c);
            }
            emit(d, "Z_free", std::move(zfree));
            emit(d, "tor", std::move(tor));
            return d;
        }
    }
    bail();
    return d;
}

}  // namespace lca
