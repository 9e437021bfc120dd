#include "lca/invariants.hpp"

#include <algorithm>
#include <set>

namespace lca {

namespace {

Cardinal map_total(const std::map<int, Cardinal>& m) {
    Cardinal t = Cardinal::finite(0);
    for (const auto& [k, v] : m) t += v;
    return t;
}

Cardinal map_total(const std::map<std::pair<int, int>, Cardinal>& m) {
    Cardinal t = Cardinal::finite(0);
    for (const auto& [k, v] : m) t += v;
    return t;
}

// Atom kind of a constituent, looking through the family wrapper.
AtomKind kind_of(const GroupExpr& c) {
    return c.kind() == ExprKind::Atom ? c.as_atom().kind : c.tmpl().kind;
}

Cardinal mult_of(const GroupExpr& c) {
    return c.kind() == ExprKind::Atom ? Cardinal::finite(1) : c.card();
}

bool is_primary_kind(AtomKind k) {
    switch (k) {
        case AtomKind::Cyclic:
        case AtomKind::Pruefer:
        case AtomKind::PadicIntegers:
        case AtomKind::PadicRationals:
            return true;
        default:
            return false;
    }
}

/*
 * Slot bookkeeping for one template instance.  `mult` counts copies: the
 * family cardinal for a fixed prime, one per prime when the template
 * ranges over a distinct sequence.  The roles:
 *
 *   products push cyclics into the compact slot, everything else keeps its
 *   natural topology; an infinite local product records its factors in the
 *   _local slots, except when the designated subgroup degenerates to the
 *   whole factor or to zero, which collapses to a plain product or sum.
 */
void add_slots(PrimaryDescriptor& d, ExprKind fam, AtomKind k, int a, int b,
               bool infinite_family, Cardinal mult) {
    if (mult.is_zero()) return;
    bool local = fam == ExprKind::LocalProduct && infinite_family;
    switch (k) {
        case AtomKind::Cyclic:
            if (fam == ExprKind::Product)
                d.cyclic_compact_power[a] += mult;
            else if (local && b == 0)
                d.cyclic_compact_power[a] += mult;
            else if (local && b < a)
                d.cyclic_local[{a, b}] += mult;
            else
                d.cyclic_discrete[a] += mult;
            break;
        case AtomKind::Pruefer:
            if (local && b > 0)
                d.pruefer_local[b] += mult;
            else
                d.pruefer_discrete_mult += mult;
            break;
        case AtomKind::PadicIntegers:
            if (local && b > 0)
                d.zp_local[b] += mult;
            else
                d.zp_mult_compact += mult;
            break;
        case AtomKind::PadicRationals:
            d.qp_mult += mult;
            break;
        default:
            throw std::logic_error("add_slots: not a primary atom kind");
    }
}

void apply_fixed(PrimaryDescriptor& d, const GroupExpr& c) {
    if (c.kind() == ExprKind::Atom) {
        const Atom& a = c.as_atom();
        add_slots(d, ExprKind::Atom, a.kind, a.exponent, 0, false, Cardinal::finite(1));
    } else {
        add_slots(d, c.kind(), c.tmpl().kind, c.tmpl().exponent, c.sub_index(),
                  c.card().infinite, c.card());
    }
}

void apply_sequence_member(PrimaryDescriptor& d, const GroupExpr& c) {
    add_slots(d, c.kind(), c.tmpl().kind, c.tmpl().exponent, c.sub_index(),
              c.card().infinite, Cardinal::finite(1));
}

std::string constituent_path(const GroupExpr& e, std::size_t i) {
    if (e.kind() != ExprKind::Sum) return "$";
    return "$.parts[" + std::to_string(i) + "]";
}

// Materializing a finite family over a sequence touches card-many primes;
// keep that from exploding.
constexpr std::uint64_t kSeqExpandCap = 65536;

}  // namespace

bool PrimaryDescriptor::empty() const {
    return qp_mult.is_zero() && pruefer_discrete_mult.is_zero() && zp_mult_compact.is_zero() &&
           cyclic_discrete.empty() && cyclic_compact_power.empty() && cyclic_local.empty() &&
           zp_local.empty() && pruefer_local.empty();
}

bool PrimaryDescriptor::has_local_part() const {
    return !cyclic_local.empty() || !zp_local.empty() || !pruefer_local.empty() ||
           qp_mult.infinite;
}

ExtNat PrimaryDescriptor::rank() const {
    Cardinal t = qp_mult + pruefer_discrete_mult + zp_mult_compact;
    t += map_total(cyclic_discrete) + map_total(cyclic_compact_power);
    t += map_total(cyclic_local) + map_total(zp_local) + map_total(pruefer_local);
    return ExtNat::of(t);
}

ExtNat PrimaryDescriptor::rank_of_open_compact() const {
    // One Zp under each Qp; every restricted-product factor meets U in a
    // nonzero compact piece (the degenerate indices were folded away).
    Cardinal t = qp_mult + zp_mult_compact + map_total(cyclic_compact_power);
    t += map_total(cyclic_local) + map_total(zp_local) + map_total(pruefer_local);
    return ExtNat::of(t);
}

ExtNat PrimaryDescriptor::rank_of_quotient_by_open_compact() const {
    // Qp/Zp is a Pruefer group; each restricted-product factor survives
    // with a nonzero discrete image.
    Cardinal t = qp_mult + pruefer_discrete_mult + map_total(cyclic_discrete);
    t += map_total(cyclic_local) + map_total(zp_local) + map_total(pruefer_local);
    return ExtNat::of(t);
}

ExtNat PrimaryDescriptor::divisible_rank() const {
    return ExtNat::of(qp_mult + pruefer_discrete_mult + map_total(pruefer_local));
}

bool PrimaryDescriptor::divisible_is_closed() const {
    // Infinitely many divisible factors at one prime leave the divisible
    // part dense in their restricted product instead of closed: dividing by
    // p strains every coordinate at once.  Finitely many split off.
    return qp_mult.is_finite() && map_total(pruefer_local).is_finite();
}

bool PrimaryDescriptor::quotient_by_divisible_compact() const {
    return qp_mult.is_finite() && map_total(pruefer_local).is_finite() &&
           map_total(cyclic_discrete).is_finite() && map_total(cyclic_local).is_finite() &&
           map_total(zp_local).is_finite();
}

bool PrimaryDescriptor::is_torsion() const {
    return qp_mult.is_zero() && zp_mult_compact.is_zero() && zp_local.empty();
}

bool PrimaryDescriptor::entirely_discrete() const {
    return qp_mult.is_zero() && zp_mult_compact.is_zero() && cyclic_compact_power.empty() &&
           cyclic_local.empty() && zp_local.empty() && pruefer_local.empty();
}

bool PrimaryDescriptor::entirely_compact() const {
    return qp_mult.is_zero() && pruefer_discrete_mult.is_zero() && cyclic_discrete.empty() &&
           cyclic_local.empty() && zp_local.empty() && pruefer_local.empty();
}

bool PrimaryDescriptor::torsion_part_discrete() const {
    return map_total(cyclic_compact_power).is_finite() &&
           map_total(cyclic_local).is_finite() && map_total(pruefer_local).is_finite();
}

const PrimaryDescriptor* PrimaryDecomposition::descriptor_for(std::uint64_t p) const {
    auto it = at.find(p);
    if (it != at.end()) return &it->second;
    if (tail && p > tail_above) return &*tail;
    return nullptr;
}

PrimaryDecomposition primary_decompose(const GroupExpr& e, bool require_periodic) {
    PrimaryDecomposition out;
    auto cs = e.constituents();

    std::vector<const GroupExpr*> contrib;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        AtomKind k = kind_of(*cs[i]);
        if (is_primary_kind(k)) {
            contrib.push_back(cs[i]);
        } else {
            if (require_periodic)
                throw NotPeriodic("constituent is not periodic: " + render(*cs[i]),
                                  constituent_path(e, i));
            out.residual.push_back(*cs[i]);
        }
    }

    // Split contributors by how their prime is given.
    struct SeqFam {
        const GroupExpr* c;
        const PrimeSequence* seq;
    };
    std::vector<const GroupExpr*> fixed;
    std::vector<SeqFam> finite_seq, infinite_seq;
    for (const GroupExpr* c : contrib) {
        if (c->kind() != ExprKind::Atom && c->tmpl().uses_sequence()) {
            const PrimeSequence& s = *c->tmpl().seq;
            if (c->card().infinite)
                infinite_seq.push_back({c, &s});
            else
                finite_seq.push_back({c, &s});
        } else {
            fixed.push_back(c);
        }
    }

    // Every prime at or below the largest sequence threshold gets its own
    // descriptor; above that the infinite families contribute uniformly.
    std::uint64_t thresh = 0;
    for (const auto& f : infinite_seq) thresh = std::max(thresh, f.seq->tail_threshold());

    auto touch = [&out](std::uint64_t p) -> PrimaryDescriptor& { return out.at[p]; };

    for (const GroupExpr* c : fixed) {
        std::uint64_t p = c->kind() == ExprKind::Atom ? c->as_atom().p : c->tmpl().p;
        apply_fixed(touch(p), *c);
    }
    for (const auto& f : finite_seq) {
        std::uint64_t k = f.c->card().n;
        if (k > kSeqExpandCap)
            throw std::length_error("family over a prime sequence is too large to expand: " +
                                    std::to_string(k));
        for (std::uint64_t i = 0; i < k; ++i) apply_sequence_member(touch(f.seq->at(i)), *f.c);
    }
    for (const auto& f : infinite_seq) {
        for (std::uint64_t p = 2; p <= thresh; p = next_prime(p))
            if (f.seq->contains(p)) apply_sequence_member(touch(p), *f.c);
    }
    // Concrete primes above the threshold still see the tail families.
    for (auto& [p, d] : out.at) {
        if (p <= thresh) continue;
        for (const auto& f : infinite_seq)
            if (f.seq->contains(p)) apply_sequence_member(d, *f.c);
    }

    if (!infinite_seq.empty()) {
        PrimaryDescriptor tail;
        std::set<PrimeSequence> seqs;
        for (const auto& f : infinite_seq) {
            apply_sequence_member(tail, *f.c);
            seqs.insert(*f.seq);
        }
        out.tail = std::move(tail);
        out.tail_above = thresh;
        out.tail_sequences.assign(seqs.begin(), seqs.end());
    }

    // Drop primes that picked up nothing (possible through zero cardinals).
    std::erase_if(out.at, [](const auto& kv) { return kv.second.empty(); });
    return out;
}

ExtNat p_rank(const GroupExpr& e, Prime p) {
    auto dec = primary_decompose(e);
    if (const PrimaryDescriptor* d = dec.descriptor_for(p.value)) return d->rank();
    return ExtNat::finite(0);
}

bool constituent_discrete(const GroupExpr& c) {
    switch (c.kind()) {
        case ExprKind::Atom:
            return c.as_atom().is_discrete();
        case ExprKind::Sum:
            throw std::logic_error("constituent_discrete: sums are not constituents");
        case ExprKind::DiscreteSum: {
            if (c.card().is_zero()) return true;
            AtomKind k = c.tmpl().kind;
            return k == AtomKind::Integers || k == AtomKind::Cyclic || k == AtomKind::Pruefer;
        }
        case ExprKind::Product: {
            if (c.card().is_zero()) return true;
            if (c.card().infinite) return false;
            AtomKind k = c.tmpl().kind;
            return k == AtomKind::Integers || k == AtomKind::Cyclic || k == AtomKind::Pruefer;
        }
        case ExprKind::LocalProduct: {
            if (c.card().is_zero()) return true;
            AtomKind k = c.tmpl().kind;
            if (!c.card().infinite)
                return k == AtomKind::Cyclic || k == AtomKind::Pruefer;
            // Discrete only when the designated subgroup is zero.
            if (k == AtomKind::Cyclic) return c.sub_index() == c.tmpl().exponent;
            if (k == AtomKind::Pruefer) return c.sub_index() == 0;
            return false;
        }
    }
    return false;
}

bool constituent_compact(const GroupExpr& c) {
    switch (c.kind()) {
        case ExprKind::Atom:
            return c.as_atom().is_compact();
        case ExprKind::Sum:
            throw std::logic_error("constituent_compact: sums are not constituents");
        case ExprKind::DiscreteSum: {
            if (c.card().is_zero()) return true;
            if (c.card().infinite) return false;
            AtomKind k = c.tmpl().kind;
            return k == AtomKind::Circle || k == AtomKind::Cyclic || k == AtomKind::PadicIntegers;
        }
        case ExprKind::Product: {
            if (c.card().is_zero()) return true;
            AtomKind k = c.tmpl().kind;
            return k == AtomKind::Circle || k == AtomKind::Cyclic || k == AtomKind::PadicIntegers;
        }
        case ExprKind::LocalProduct: {
            if (c.card().is_zero()) return true;
            AtomKind k = c.tmpl().kind;
            if (!c.card().infinite)
                return k == AtomKind::Cyclic || k == AtomKind::PadicIntegers;
            // Compact only when the designated subgroup is everything.
            return (k == AtomKind::Cyclic || k == AtomKind::PadicIntegers) && c.sub_index() == 0;
        }
    }
    return false;
}

bool constituent_torsion(const GroupExpr& c) {
    switch (c.kind()) {
        case ExprKind::Atom: {
            AtomKind k = c.as_atom().kind;
            return k == AtomKind::Cyclic || k == AtomKind::Pruefer;
        }
        case ExprKind::Sum:
            throw std::logic_error("constituent_torsion: sums are not constituents");
        default:
            break;
    }
    if (c.card().is_zero()) return true;
    AtomKind k = c.tmpl().kind;
    if (k != AtomKind::Cyclic && k != AtomKind::Pruefer) return false;
    bool one_prime = !c.tmpl().uses_sequence() ||
                     c.tmpl().seq->kind == PrimeSequence::Kind::Constant;
    switch (c.kind()) {
        case ExprKind::DiscreteSum:
            // Finite support keeps every element's order a finite lcm.
            return true;
        case ExprKind::Product:
            // Over infinitely many distinct primes the coordinate orders
            // multiply up without bound.
            return c.card().is_finite() || one_prime;
        case ExprKind::LocalProduct: {
            if (c.card().is_finite() || one_prime) return true;
            // Distinct primes: torsion only when the designated subgroups
            // vanish and the restricted product degenerates to a sum.
            if (k == AtomKind::Cyclic) return c.sub_index() == c.tmpl().exponent;
            return c.sub_index() == 0;
        }
        default:
            return false;
    }
}

bool constituent_divisible(const GroupExpr& c) {
    if (c.kind() == ExprKind::Sum)
        throw std::logic_error("constituent_divisible: sums are not constituents");
    if (mult_of(c).is_zero()) return true;
    AtomKind k = kind_of(c);
    bool div_kind = k == AtomKind::Reals || k == AtomKind::Circle || k == AtomKind::Pruefer ||
                    k == AtomKind::PadicRationals;
    if (!div_kind) return false;
    if (c.kind() != ExprKind::LocalProduct || !c.card().infinite) return true;
    // A restricted product of divisible factors over distinct primes is
    // divisible (dividing by p only moves the single p-coordinate out of
    // the designated subgroup); over one fixed prime it is not.
    return c.tmpl().uses_sequence() && c.tmpl().seq->kind == PrimeSequence::Kind::Distinct;
}

InvariantRecord invariants(const GroupExpr& e) {
    InvariantRecord rec;
    auto dec = primary_decompose(e);
    auto cs = e.constituents();

    Cardinal zc = Cardinal::finite(0), rc = Cardinal::finite(0), tc = Cardinal::finite(0);
    for (const GroupExpr* c : cs) {
        switch (kind_of(*c)) {
            case AtomKind::Integers: zc += mult_of(*c); break;
            case AtomKind::Reals: rc += mult_of(*c); break;
            case AtomKind::Circle: tc += mult_of(*c); break;
            default: break;
        }
    }

    rec.is_discrete = std::ranges::all_of(cs, [](const GroupExpr* c) { return constituent_discrete(*c); });
    rec.is_compact = std::ranges::all_of(cs, [](const GroupExpr* c) { return constituent_compact(*c); });
    rec.is_totally_disconnected = rc.is_zero() && tc.is_zero();
    rec.is_periodic = rec.is_totally_disconnected && zc.is_zero();
    rec.is_divisible = std::ranges::all_of(cs, [](const GroupExpr* c) { return constituent_divisible(*c); });
    rec.is_reduced = std::ranges::all_of(cs, [](const GroupExpr* c) {
        AtomKind k = kind_of(*c);
        return mult_of(*c).is_zero() ||
               (k != AtomKind::Reals && k != AtomKind::Circle && k != AtomKind::Pruefer &&
                k != AtomKind::PadicRationals);
    });

    rec.is_torsion = rec.is_periodic &&
                     std::ranges::all_of(cs, [](const GroupExpr* c) { return constituent_torsion(*c); });

    // Inductive monotheticity.  For periodic expressions this is exactly
    // "every prime contributes rank at most one".  Beyond periodic the
    // only monothetic shapes in the grammar are a lone Z and a lone
    // circle: pairing either with anything else yields a two-generator
    // subgroup with no dense cyclic subgroup (Z x Zp, Z(m)^2 inside T^2).
    bool ranks_ok = true;
    for (const auto& [p, d] : dec.at)
        ranks_ok = ranks_ok && !(ExtNat::finite(1) < d.rank());
    if (dec.tail) ranks_ok = ranks_ok && !(ExtNat::finite(1) < dec.tail->rank());
    bool no_primary = dec.at.empty() && !dec.tail;
    bool lone_z = zc == Cardinal::finite(1) && tc.is_zero() && no_primary;
    bool lone_t = tc == Cardinal::finite(1) && zc.is_zero() && no_primary;
    bool periodic_ranks = zc.is_zero() && tc.is_zero() && ranks_ok;
    rec.is_inductively_monothetic = rc.is_zero() && (lone_z || lone_t || periodic_ranks);

    for (const auto& [p, d] : dec.at) rec.primes.fixed.push_back(p);
    {
        std::set<PrimeSequence> seqs;
        for (const GroupExpr* c : cs)
            if (c->kind() != ExprKind::Atom && c->tmpl().uses_sequence()) seqs.insert(*c->tmpl().seq);
        rec.primes.sequences.assign(seqs.begin(), seqs.end());
    }

    for (const auto& [p, d] : dec.at)
        rec.per_prime[p] = PerPrimeRanks{d.rank(), d.rank_of_open_compact(),
                                         d.rank_of_quotient_by_open_compact()};
    if (dec.tail)
        rec.tail_ranks = PerPrimeRanks{dec.tail->rank(), dec.tail->rank_of_open_compact(),
                                       dec.tail->rank_of_quotient_by_open_compact()};

    auto sum_of = [](std::vector<GroupExpr> parts) -> std::optional<GroupExpr> {
        if (parts.empty()) return std::nullopt;
        return GroupExpr::sum(std::move(parts));
    };

    // tor(T) is dense rather than closed, and so is the torsion of an
    // infinite product or mixed restricted product over distinct primes.
    // The subgroup is an expression only when every torsion piece is
    // closed, i.e. a whole constituent.
    {
        bool representable = tc.is_zero();
        std::vector<GroupExpr> parts;
        for (const GroupExpr* c : cs) {
            if (mult_of(*c).is_zero()) continue;
            AtomKind k = kind_of(*c);
            if (k != AtomKind::Cyclic && k != AtomKind::Pruefer) continue;
            if (constituent_torsion(*c))
                parts.push_back(*c);
            else
                representable = false;
        }
        if (representable) rec.torsion_part = sum_of(std::move(parts));
    }
    {
        std::vector<GroupExpr> parts;
        for (const GroupExpr* c : cs)
            if (!mult_of(*c).is_zero() && constituent_divisible(*c)) parts.push_back(*c);
        rec.divisible_part = sum_of(std::move(parts));
    }
    {
        std::vector<GroupExpr> parts;
        for (const GroupExpr* c : cs) {
            AtomKind k = kind_of(*c);
            if (k != AtomKind::Integers && k != AtomKind::Reals && !mult_of(*c).is_zero())
                parts.push_back(*c);
        }
        rec.comp_part = sum_of(std::move(parts));
    }
    {
        std::vector<GroupExpr> parts;
        for (const GroupExpr* c : cs) {
            AtomKind k = kind_of(*c);
            if ((k == AtomKind::Reals || k == AtomKind::Circle) && !mult_of(*c).is_zero())
                parts.push_back(*c);
        }
        rec.connected_part = sum_of(std::move(parts));
    }

    bool tor_disc = tc.is_zero();
    for (const auto& [p, d] : dec.at) tor_disc = tor_disc && d.torsion_part_discrete();
    if (dec.tail)
        tor_disc = tor_disc && dec.tail->cyclic_compact_power.empty() &&
                   dec.tail->cyclic_local.empty() && dec.tail->pruefer_local.empty();
    rec.torsion_discrete = tor_disc;

    bool div_cf = true;
    for (const auto& [p, d] : dec.at)
        div_cf = div_cf && d.divisible_is_closed() && d.divisible_rank().is_finite();
    if (dec.tail)
        div_cf = div_cf && dec.tail->divisible_is_closed() && dec.tail->divisible_rank().is_finite();
    rec.divisible_closed_finite_rank = div_cf;

    Cardinal zr = zc;
    for (const auto& [p, d] : dec.at) zr += d.qp_mult;
    if (dec.tail && !dec.tail->qp_mult.is_zero()) zr = Cardinal::inf();
    rec.zrank_of_G_mod_U = ExtNat::of(zr);
    rec.dim_connected = ExtNat::of(rc + tc);

    return rec;
}

namespace {

AtomKind dual_kind(AtomKind k) {
    switch (k) {
        case AtomKind::Integers: return AtomKind::Circle;
        case AtomKind::Circle: return AtomKind::Integers;
        case AtomKind::Reals: return AtomKind::Reals;
        case AtomKind::Cyclic: return AtomKind::Cyclic;
        case AtomKind::Pruefer: return AtomKind::PadicIntegers;
        case AtomKind::PadicIntegers: return AtomKind::Pruefer;
        case AtomKind::PadicRationals: return AtomKind::PadicRationals;
    }
    throw std::logic_error("dual_kind");
}

GroupExpr dual_constituent(const GroupExpr& c, const std::string& path) {
    switch (c.kind()) {
        case ExprKind::Atom: {
            const Atom& a = c.as_atom();
            return GroupExpr::atom(Atom{dual_kind(a.kind), a.p, a.exponent});
        }
        case ExprKind::DiscreteSum: {
            if (c.tmpl().kind == AtomKind::Integers && c.card().infinite)
                throw NotDualizable(
                    "the dual of an infinite discrete sum of Z is an infinite power of the "
                    "circle, which is outside the class",
                    path);
            AtomTemplate t = c.tmpl();
            t.kind = dual_kind(t.kind);
            return GroupExpr::prod(t, c.card());
        }
        case ExprKind::Product: {
            AtomTemplate t = c.tmpl();
            t.kind = dual_kind(t.kind);
            return GroupExpr::dsum(t, c.card());
        }
        case ExprKind::LocalProduct: {
            AtomTemplate t = c.tmpl();
            int b = c.sub_index();
            switch (t.kind) {
                case AtomKind::Cyclic:
                    // The annihilator of the index-p^b subgroup is the
                    // order-p^b subgroup, of index p^(a-b).
                    return GroupExpr::locprod(t, t.exponent - b, c.card());
                case AtomKind::PadicIntegers:
                    t.kind = AtomKind::Pruefer;
                    return GroupExpr::locprod(t, b, c.card());
                case AtomKind::Pruefer:
                    t.kind = AtomKind::PadicIntegers;
                    return GroupExpr::locprod(t, b, c.card());
                case AtomKind::PadicRationals:
                    return GroupExpr::locprod(t, 0, c.card());
                default:
                    throw std::logic_error("dual: bad local product template");
            }
        }
        case ExprKind::Sum:
            throw std::logic_error("dual_constituent: sums are not constituents");
    }
    throw std::logic_error("dual_constituent");
}

}  // namespace

GroupExpr dual(const GroupExpr& e) {
    if (e.kind() == ExprKind::Sum) {
        std::vector<GroupExpr> parts;
        const auto& ps = e.parts();
        for (std::size_t i = 0; i < ps.size(); ++i)
            parts.push_back(dual_constituent(ps[i], "$.parts[" + std::to_string(i) + "]"));
        return GroupExpr::sum(std::move(parts));
    }
    return dual_constituent(e, "$");
}

namespace {

std::optional<GroupExpr> open_compact_part(const GroupExpr& c) {
    auto zp_template = [](const AtomTemplate& t) {
        AtomTemplate z = t;
        z.kind = AtomKind::PadicIntegers;
        z.exponent = 1;
        return z;
    };
    switch (c.kind()) {
        case ExprKind::Atom: {
            const Atom& a = c.as_atom();
            if (a.kind == AtomKind::Circle || a.kind == AtomKind::PadicIntegers) return c;
            if (a.kind == AtomKind::PadicRationals)
                return GroupExpr::atom(Atom::padic_integers(Prime(a.p)));
            return std::nullopt;
        }
        case ExprKind::DiscreteSum: {
            AtomKind k = c.tmpl().kind;
            if (k == AtomKind::Circle || k == AtomKind::PadicIntegers) return c;
            if (k == AtomKind::PadicRationals)
                return GroupExpr::prod(zp_template(c.tmpl()), c.card());
            return std::nullopt;
        }
        case ExprKind::Product: {
            AtomKind k = c.tmpl().kind;
            if (k == AtomKind::Circle || k == AtomKind::PadicIntegers || k == AtomKind::Cyclic)
                return c;
            if (k == AtomKind::PadicRationals)
                return GroupExpr::prod(zp_template(c.tmpl()), c.card());
            return std::nullopt;
        }
        case ExprKind::LocalProduct: {
            AtomKind k = c.tmpl().kind;
            int b = c.sub_index();
            if (!c.card().infinite) {
                if (k == AtomKind::PadicIntegers) return c;
                if (k == AtomKind::PadicRationals)
                    return GroupExpr::prod(zp_template(c.tmpl()), c.card());
                return std::nullopt;
            }
            switch (k) {
                case AtomKind::Cyclic: {
                    if (b == c.tmpl().exponent) return std::nullopt;
                    AtomTemplate t = c.tmpl();
                    t.exponent -= b;
                    return GroupExpr::prod(t, c.card());
                }
                case AtomKind::PadicIntegers:
                    return GroupExpr::prod(zp_template(c.tmpl()), c.card());
                case AtomKind::Pruefer: {
                    if (b == 0) return std::nullopt;
                    AtomTemplate t = c.tmpl();
                    t.kind = AtomKind::Cyclic;
                    t.exponent = b;
                    return GroupExpr::prod(t, c.card());
                }
                case AtomKind::PadicRationals:
                    return GroupExpr::prod(zp_template(c.tmpl()), c.card());
                default:
                    return std::nullopt;
            }
        }
        case ExprKind::Sum:
            throw std::logic_error("open_compact_part: sums are not constituents");
    }
    return std::nullopt;
}

}  // namespace

std::optional<GroupExpr> chosen_open_compact(const GroupExpr& e) {
    std::vector<GroupExpr> parts;
    for (const GroupExpr* c : e.constituents())
        if (auto u = open_compact_part(*c)) parts.push_back(std::move(*u));
    if (parts.empty()) return std::nullopt;
    return GroupExpr::sum(std::move(parts));
}

CanonicalForm canonical_form(const GroupExpr& e) {
    CanonicalForm f;
    auto cs = e.constituents();

    std::vector<const PrimeSequence*> seqs;
    for (const GroupExpr* c : cs)
        if (c->kind() != ExprKind::Atom && c->tmpl().uses_sequence()) seqs.push_back(&*c->tmpl().seq);
    auto seq_touched = [&seqs](std::uint64_t p) {
        return std::ranges::any_of(seqs, [p](const PrimeSequence* s) { return s->contains(p); });
    };

    std::map<std::uint64_t, std::vector<const GroupExpr*>> bucket;
    std::vector<GroupExpr> residual;
    for (const GroupExpr* c : cs) {
        if (!is_primary_kind(kind_of(*c)) ||
            (c->kind() != ExprKind::Atom && c->tmpl().uses_sequence())) {
            residual.push_back(*c);
            continue;
        }
        std::uint64_t p = c->kind() == ExprKind::Atom ? c->as_atom().p : c->tmpl().p;
        bucket[p].push_back(c);
    }

    for (auto& [p, list] : bucket) {
        PrimaryDescriptor d;
        for (const GroupExpr* c : list) apply_fixed(d, *c);
        if (seq_touched(p) || !d.rank().is_finite()) {
            for (const GroupExpr* c : list) residual.push_back(*c);
            continue;
        }
        CarinTuple t;
        t.m = static_cast<long long>(d.qp_mult.n);
        t.n = static_cast<long long>(d.pruefer_discrete_mult.n);
        t.k = static_cast<long long>(d.zp_mult_compact.n);
        std::vector<long long> orders;
        auto push_orders = [&](const std::map<int, Cardinal>& m) {
            for (const auto& [a, mult] : m) {
                if (orders.size() + mult.n > kSeqExpandCap)
                    throw std::length_error("finite part too large to canonicalize");
                long long q = static_cast<long long>(ipow(p, static_cast<unsigned>(a)));
                orders.insert(orders.end(), static_cast<std::size_t>(mult.n), q);
            }
        };
        push_orders(d.cyclic_discrete);
        push_orders(d.cyclic_compact_power);
        // At a single prime the invariant factors are the orders sorted
        // ascending; each then divides the next.
        std::ranges::sort(orders);
        t.finite_invariants = std::move(orders);
        f.at[p] = t;
    }

    if (!residual.empty()) f.residual = GroupExpr::sum(std::move(residual));
    return f;
}

GroupExpr canonical_expression(const CanonicalForm& f) {
    std::vector<GroupExpr> parts;
    for (const auto& [p, t] : f.at) {
        Prime pr(p);
        for (long long i = 0; i < t.m; ++i) parts.push_back(GroupExpr::atom(Atom::padic_rationals(pr)));
        for (long long i = 0; i < t.n; ++i) parts.push_back(GroupExpr::atom(Atom::pruefer(pr)));
        for (long long i = 0; i < t.k; ++i) parts.push_back(GroupExpr::atom(Atom::padic_integers(pr)));
        for (long long d : t.finite_invariants) {
            auto pp = prime_power(static_cast<std::uint64_t>(d));
            if (!pp || pp->first != p)
                throw std::invalid_argument("canonical_expression: finite invariant " +
                                            std::to_string(d) + " is not a power of " +
                                            std::to_string(p));
            parts.push_back(GroupExpr::atom(Atom::cyclic(pr, static_cast<int>(pp->second))));
        }
    }
    if (f.residual) parts.push_back(*f.residual);
    if (parts.empty()) throw std::invalid_argument("canonical_expression: empty form");
    return GroupExpr::sum(std::move(parts));
}

}  // namespace lca
