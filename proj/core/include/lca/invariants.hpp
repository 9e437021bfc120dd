#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lca/expr.hpp"

namespace lca {

/**
 * Everything a single prime contributes to an expression, tallied by slot.
 * The slots mirror the grammar's ways of spelling a p-part:
 *
 *   qp_mult              copies of Qp; an infinite value can only come from
 *                        the (Qp, Zp) restricted product, so the cardinal
 *                        alone pins the construction
 *   pruefer_discrete_mult  Pruefer summands (atoms, discrete sums)
 *   zp_mult_compact      Zp copies living compactly (atoms, products,
 *                        restricted products with the full subgroup)
 *   cyclic_discrete      exponent -> multiplicity of discrete Z(p^a) summands
 *   cyclic_compact_power exponent -> multiplicity inside product factors
 *   cyclic_local         (exponent a, sub index 0<b<a) -> multiplicity for
 *                        restricted products of Z(p^a) over the index-p^b
 *                        subgroup
 *   zp_local             sub index b>=1 -> multiplicity, restricted products
 *                        of Zp over p^b Zp
 *   pruefer_local        sub index b>=1 -> multiplicity, restricted products
 *                        of Pruefer groups over the order-p^b subgroup
 *
 * Multiplicities are nonzero.  The descriptor determines the p-primary
 * constituent up to topological isomorphism.
 */
struct PrimaryDescriptor {
    Cardinal qp_mult = Cardinal::finite(0);
    Cardinal pruefer_discrete_mult = Cardinal::finite(0);
    Cardinal zp_mult_compact = Cardinal::finite(0);
    std::map<int, Cardinal> cyclic_discrete;
    std::map<int, Cardinal> cyclic_compact_power;
    std::map<std::pair<int, int>, Cardinal> cyclic_local;
    std::map<int, Cardinal> zp_local;
    std::map<int, Cardinal> pruefer_local;

    bool empty() const;
    bool has_local_part() const;

    // p-rank of the whole p-part; any restricted product makes it infinite.
    ExtNat rank() const;
    // Ranks relative to the canonical open compact subgroup U (compact
    // slots, the C part of each restricted product, one Zp under each Qp).
    ExtNat rank_of_open_compact() const;
    ExtNat rank_of_quotient_by_open_compact() const;

    // The divisible summands that split off directly.
    ExtNat divisible_rank() const;
    // False exactly when a restricted product hides a dense divisible part.
    bool divisible_is_closed() const;
    // Is the quotient by the divisible part compact?
    bool quotient_by_divisible_compact() const;

    bool is_torsion() const;            // no Qp, no Zp in any spelling
    bool entirely_discrete() const;     // only discrete slots (meets U in 0)
    bool entirely_compact() const;      // only compact slots (lies inside U)
    bool torsion_part_discrete() const;
    bool operator==(const PrimaryDescriptor&) const = default;
};

/**
 * Primary decomposition of the periodic constituents.  Concrete primes give
 * explicit descriptors; when distinct-prime sequences occur, every prime
 * above `tail_above` receives the same `tail` descriptor (all sequence
 * seeds and fixed primes are expanded below that threshold, which is what
 * makes the tail uniform).  Non-periodic constituents (Z, R, Circle parts)
 * are passed through in `residual`.
 */
struct PrimaryDecomposition {
    std::map<std::uint64_t, PrimaryDescriptor> at;
    std::optional<PrimaryDescriptor> tail;
    std::uint64_t tail_above = 0;
    std::vector<PrimeSequence> tail_sequences;
    std::vector<GroupExpr> residual;

    const PrimaryDescriptor* descriptor_for(std::uint64_t p) const;
};

struct NotPeriodic : std::runtime_error {
    std::string path;
    NotPeriodic(const std::string& what, std::string path)
        : std::runtime_error(what), path(std::move(path)) {}
};

// With require_periodic, throws NotPeriodic instead of filling residual.
PrimaryDecomposition primary_decompose(const GroupExpr& e, bool require_periodic = false);

ExtNat p_rank(const GroupExpr& e, Prime p);

struct PerPrimeRanks {
    ExtNat rank;
    ExtNat rank_of_open_compact;
    ExtNat rank_of_quotient_by_open_compact;
    bool operator==(const PerPrimeRanks&) const = default;
};

// pi(G): the finitely many named primes plus any sequences they are drawn
// from.
struct PrimeSupport {
    std::vector<std::uint64_t> fixed;
    std::vector<PrimeSequence> sequences;
};

struct InvariantRecord {
    bool is_discrete = false;
    bool is_compact = false;
    bool is_periodic = false;
    bool is_totally_disconnected = false;
    bool is_torsion = false;
    bool is_divisible = false;
    bool is_reduced = false;
    bool is_inductively_monothetic = false;

    PrimeSupport primes;
    std::map<std::uint64_t, PerPrimeRanks> per_prime;
    std::optional<PerPrimeRanks> tail_ranks;  // uniform above the sequence threshold

    // Parts that exist as closed subgroups expressible in the grammar;
    // absent means trivial, or not representable when the expression has a
    // connected part.
    std::optional<GroupExpr> torsion_part;
    std::optional<GroupExpr> divisible_part;  // the divisible direct factor
    std::optional<GroupExpr> comp_part;       // union of compact subgroups
    std::optional<GroupExpr> connected_part;

    bool torsion_discrete = false;
    bool divisible_closed_finite_rank = false;
    ExtNat zrank_of_G_mod_U;  // free-rank count: Z summands plus Qp summands
    ExtNat dim_connected;
};

InvariantRecord invariants(const GroupExpr& e);

struct NotDualizable : std::runtime_error {
    std::string path;
    NotDualizable(const std::string& what, std::string path)
        : std::runtime_error(what), path(std::move(path)) {}
};

/**
 * Pontryagin dual, within the grammar.  Atom pairs Z|Circle, Pruefer|Zp,
 * with R, Qp and the finite cyclics self-dual; discrete sums and products
 * swap; restricted products pair with the annihilator of their designated
 * subgroup.  The one unrepresentable dual is an infinite discrete sum of Z
 * (its dual would be an infinite power of the circle), reported as
 * NotDualizable.
 */
GroupExpr dual(const GroupExpr& e);

// The canonical open compact subgroup U the classifiers measure against:
// compact constituents, the C part of each restricted product, one Zp
// under each Qp.  Absent means U = 0 (the expression is discrete, or has no
// compact open subgroup at all when R is present).
std::optional<GroupExpr> chosen_open_compact(const GroupExpr& e);

struct CarinTuple {
    long long m = 0;  // Qp copies
    long long n = 0;  // Pruefer copies
    long long k = 0;  // Zp copies
    std::vector<long long> finite_invariants;  // invariant factors, ascending divisibility

    bool operator==(const CarinTuple&) const = default;
};

/**
 * Per-prime canonical shape Qp^m + Pruefer^n + Zp^k + finite part, for
 * every concrete prime of finite rank.  Constituents at infinite-rank
 * primes, sequence families and the non-primary parts (Z, R, Circle) stay
 * in `residual` unchanged.
 */
struct CanonicalForm {
    std::map<std::uint64_t, CarinTuple> at;
    std::optional<GroupExpr> residual;

    bool operator==(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const GroupExpr& e);

// Rebuilds an expression from a canonical form; canonical_form of the
// result reproduces it.
GroupExpr canonical_expression(const CanonicalForm& f);

// Group-level predicates for a single non-sum constituent, shared by the
// record computation and the classifier's routing.  These see behaviour
// the per-prime descriptors cannot: an infinite product of cyclic groups
// over distinct primes has torsion primary components but is not torsion
// (coordinate orders multiply up), and a restricted product of divisible
// factors over distinct primes is divisible while its one-prime analogue
// is not.
bool constituent_discrete(const GroupExpr& e);
bool constituent_compact(const GroupExpr& e);
bool constituent_torsion(const GroupExpr& e);
bool constituent_divisible(const GroupExpr& e);

}  // namespace lca
