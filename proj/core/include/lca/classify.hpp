#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lca/errors.hpp"
#include "lca/invariants.hpp"

namespace lca {

/**
 * How an expression was decided.  The route is a function of the invariant
 * record alone:
 *
 *   NoncompactComponent           a vector part is present
 *   Discrete / Compact            immediate positives
 *   ConnectedViaDual              circle parts but no vector part; the
 *                                 verdict transfers across the dual
 *   PGroup / Torsion / Periodic   totally disconnected with trivial free
 *                                 part, keyed on one prime / all torsion /
 *                                 the general periodic machinery
 *   TotallyDisconnectedNonperiodic  a free part over a periodic kernel
 */
enum class Route {
    Discrete,
    Compact,
    NoncompactComponent,
    ConnectedViaDual,
    PGroup,
    Torsion,
    Periodic,
    TotallyDisconnectedNonperiodic,
};

std::string route_name(Route r);

// One evaluated condition in the decision trace.  `theorem` is a stable
// rule identifier, `quote` states the condition in words, `witness` pins
// the data the decision was made on.
struct Clause {
    std::string theorem;
    std::string quote;
    bool ok = false;
    std::string witness;
};

struct Verdict {
    bool tm = false;
    bool stqh = false;
    Route route = Route::Discrete;
    std::vector<Clause> clauses;
    std::optional<GroupExpr> chosen_U;  // absent = the zero subgroup
};

/**
 * Decides both properties.  The two flags come from structurally
 * independent condition trees that the classification theorems prove
 * coincident on p-groups; the clause list records every condition that
 * was evaluated, in evaluation order.  Precondition: validate(e).ok().
 */
Verdict classify(const GroupExpr& e);

// The two names the callers use; both return the full verdict.
Verdict classify_tm(const GroupExpr& e);
Verdict classify_stqh(const GroupExpr& e);

// A set of primes, optionally together with every prime above the
// decomposition threshold.
struct PrimeClassSet {
    std::vector<std::uint64_t> primes;
    bool includes_tail = false;

    bool empty() const { return primes.empty() && !includes_tail; }
};

/**
 * The partition of the prime support of a periodic expression, measured
 * against the chosen open compact subgroup U:
 *   delta  primes whose component misses U entirely (discrete slots only)
 *   gamma  primes whose component lies inside U (compact slots only)
 *   mu     remaining primes of rank at most one
 *   phi    everything else
 */
struct PeriodicPartition {
    PrimeClassSet delta, gamma, phi, mu;
    std::uint64_t tail_above = 0;
};

// Precondition: e periodic (throws NotPeriodic otherwise).
PeriodicPartition partition_periodic(const GroupExpr& e);

struct Decomposition {
    std::vector<std::pair<std::string, GroupExpr>> summands;
    std::string theorem;
};

/**
 * The labeled direct decomposition asserted by the positive classification
 * on the expression's route; throws NotApplicable when the governing
 * verdict is negative.  Summing the summands reproduces the input up to
 * the grammar's canonical bookkeeping.
 */
Decomposition decompose(const GroupExpr& e);

}  // namespace lca
