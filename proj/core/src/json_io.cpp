#include "lca/json_io.hpp"

namespace lca {
namespace {

Json json_of_sequence(const PrimeSequence& s) {
    if (s.kind == PrimeSequence::Kind::Constant)
        return "constant(" + std::to_string(s.constant_p) + ")";
    std::string out = "distinct(";
    for (std::size_t i = 0; i < s.seed.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.seed[i]);
    }
    return out + ")";
}

Json json_or_null(const std::optional<GroupExpr>& e) {
    return e ? json_of(*e) : Json(nullptr);
}

}  // namespace

Json json_of(const Cardinal& c) { return c.is_finite() ? Json(c.n) : Json("inf"); }

Json json_of(const ExtNat& v) { return v.is_finite() ? Json(v.n) : Json("inf"); }

Json json_of(const GroupExpr& e) { return render(e); }

Json json_of(const Clause& c) {
    return Json{{"theorem", c.theorem}, {"quote", c.quote}, {"ok", c.ok}, {"witness", c.witness}};
}

Json json_of(const Verdict& v) {
    Json clauses = Json::array();
    for (const auto& c : v.clauses) clauses.push_back(json_of(c));
    return Json{
        {"tm", v.tm},
        {"stqh", v.stqh},
        {"route", route_name(v.route)},
        {"chosenU", v.chosen_U ? Json(render(*v.chosen_U)) : Json("0")},
        {"clauses", clauses},
    };
}

Json json_of(const PrimeClassSet& s) {
    return Json{{"primes", s.primes}, {"includesTail", s.includes_tail}};
}

Json json_of(const PeriodicPartition& p) {
    return Json{
        {"delta", json_of(p.delta)},
        {"gamma", json_of(p.gamma)},
        {"mu", json_of(p.mu)},
        {"phi", json_of(p.phi)},
        {"tailAbove", p.tail_above},
    };
}

Json json_of(const Decomposition& d) {
    Json summands = Json::array();
    for (const auto& [label, expr] : d.summands)
        summands.push_back(Json{{"label", label}, {"expr", json_of(expr)}});
    return Json{{"theorem", d.theorem}, {"summands", summands}};
}

Json json_of(const PerPrimeRanks& r) {
    return Json{
        {"rank", json_of(r.rank)},
        {"rankOfOpenCompact", json_of(r.rank_of_open_compact)},
        {"rankOfQuotient", json_of(r.rank_of_quotient_by_open_compact)},
    };
}

Json json_of(const InvariantRecord& r) {
    Json per_prime = Json::object();
    for (const auto& [p, ranks] : r.per_prime) per_prime[std::to_string(p)] = json_of(ranks);
    Json seqs = Json::array();
    for (const auto& s : r.primes.sequences) seqs.push_back(json_of_sequence(s));
    return Json{
        {"isDiscrete", r.is_discrete},
        {"isCompact", r.is_compact},
        {"isPeriodic", r.is_periodic},
        {"isTotallyDisconnected", r.is_totally_disconnected},
        {"isTorsion", r.is_torsion},
        {"isDivisible", r.is_divisible},
        {"isReduced", r.is_reduced},
        {"isInductivelyMonothetic", r.is_inductively_monothetic},
        {"primes", Json{{"fixed", r.primes.fixed}, {"sequences", seqs}}},
        {"perPrime", per_prime},
        {"tailRanks", r.tail_ranks ? json_of(*r.tail_ranks) : Json(nullptr)},
        {"torsionPart", json_or_null(r.torsion_part)},
        {"divisiblePart", json_or_null(r.divisible_part)},
        {"compPart", json_or_null(r.comp_part)},
        {"connectedPart", json_or_null(r.connected_part)},
        {"torsionDiscrete", r.torsion_discrete},
        {"divisibleClosedFiniteRank", r.divisible_closed_finite_rank},
        {"zrankOfGModU", json_of(r.zrank_of_G_mod_U)},
        {"dimConnected", json_of(r.dim_connected)},
    };
}

Json json_of(const CarinTuple& t) {
    return Json{
        {"m", t.m}, {"n", t.n}, {"k", t.k}, {"finiteInvariants", t.finite_invariants}};
}

Json json_of(const CanonicalForm& f) {
    Json at = Json::object();
    for (const auto& [p, tuple] : f.at) at[std::to_string(p)] = json_of(tuple);
    return Json{{"at", at}, {"residual", json_or_null(f.residual)}};
}

Json json_of(const FgAbGroup& g) {
    return Json{{"rank", g.rank}, {"torsionOrders", g.torsion_orders}};
}

Json json_of(const Subgroup& s) {
    return Json{{"ambient", json_of(s.ambient)}, {"basis", s.basis}};
}

Json json_of(const Lattice& l) {
    Json subs = Json::array();
    for (const auto& s : l.subgroups) subs.push_back(s.basis);
    return Json{
        {"size", l.size()},
        {"subgroups", subs},
        {"join", l.join},
        {"meet", l.meet},
    };
}

Json json_of(const EscapeCertificate& c) {
    return Json{
        {"family", family_name(c.family)},
        {"params", Json{{"p", c.p}}},
        {"levels", c.levels},
        {"target", c.target},
        {"lowerBound", c.lower_bound},
        {"monotone", c.monotone},
        {"unboundedRule", c.unbounded_rule},
        {"verdict", c.verdict},
    };
}

Json json_of(const ExactMeetResult& m) {
    Json meets = Json::array();
    for (const auto& s : m.finite_level_meets) meets.push_back(json_of(s));
    return Json{
        {"meetAtInfinity", m.meet_at_infinity},
        {"rationale", m.rationale},
        {"finiteLevelMeets", meets},
    };
}

Json json_of(const PentagonInstance& p) {
    Json certs = Json::array();
    for (const auto& c : p.distinctness)
        certs.push_back(Json{{"left", c.left}, {"right", c.right}, {"evidence", c.evidence}});
    return Json{
        {"top", p.top},
        {"upper", p.upper},
        {"lower", p.lower},
        {"side", p.side},
        {"bottom", p.bottom},
        {"relations", p.relations},
        {"distinctness", certs},
    };
}

Json json_of(const DensityWitness& w) {
    return Json{
        {"a", w.a},
        {"b", w.b},
        {"norm", w.norm},
        {"epsNum", w.eps_num},
        {"epsDen", w.eps_den},
        {"certificate", w.certificate},
    };
}

}  // namespace lca
