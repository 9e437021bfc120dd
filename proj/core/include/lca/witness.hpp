#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lca/errors.hpp"
#include "lca/fgab.hpp"

namespace lca {

/**
 * Level-indexed truncation families.  Each negative verdict of the
 * classifier traces back to one of three concrete groups; the families
 * below replay those groups through finite quotients so the failure can
 * be certified by exact integer computation instead of argued about.
 *
 *   GraphOverMonothetic(p, q)     Z plus a compact monothetic q-part;
 *                                 level n is Z + Z(q^n).  The defect is a
 *                                 meet that vanishes only at infinity.
 *   DiscreteTimesCompactSocle(p)  discrete sum against compact product of
 *                                 Z(p); level n is Z(p)^n + Z(p)^n.  The
 *                                 defect is a sum that is dense but proper.
 *   LocalProductPSquared(p)       local product of Z(p^2) over pZ(p^2);
 *                                 level n is Z(p^2)^n.  Reduces to the
 *                                 previous family through a subquotient.
 *
 * Levels are connected by coordinate-dropping epimorphisms, and every
 * named subgroup is compatible with them: the image of the level-(n+1)
 * subgroup is the level-n subgroup.
 */

struct BadParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnknownLabel : std::invalid_argument {
    explicit UnknownLabel(const std::string& label)
        : std::invalid_argument("no subgroup labeled \"" + label + "\" in this family") {}
};

enum class FamilyId {
    GraphOverMonothetic,
    DiscreteTimesCompactSocle,
    LocalProductPSquared,
};

std::string family_name(FamilyId id);

struct TruncationFamily {
    FamilyId id;
    long long p = 0;  // every family carries a prime
    long long q = 0;  // second prime, GraphOverMonothetic only

    // The level-n truncation, n >= 1.
    FgAbGroup level_group(int n) const;

    // Connecting epimorphism: coordinates of level n mapped into level
    // n-1.  Requires n >= 2 and v.size() == level_group(n).dim().
    std::vector<long long> project(int n, const std::vector<long long>& v) const;

    // Labels are family-specific; "G" always names the whole level group.
    //   GraphOverMonothetic:       A = pZ, B = graph of 1 -> 1, C = Z + 0
    //   DiscreteTimesCompactSocle: A = first block, B = diagonal graph,
    //                              C = first block + constant line, K = the
    //                              constant line alone
    //   LocalProductPSquared:      socle, A = even coordinates, B = image
    //                              of the paired graph (even carrier, p
    //                              times the odd partner)
    Subgroup named_subgroup(const std::string& label, int n) const;

    std::vector<std::string> labels() const;
};

// Throws BadParams unless the primes fit the family: GraphOverMonothetic
// takes two distinct primes, the other two take one (q must be 0).
TruncationFamily make_family(FamilyId id, long long p, long long q = 0);

// X_n + Y_n.  The family of these sums represents the closure of X + Y,
// which is what the join in the closed-subgroup lattice computes.
Subgroup closure_level(const TruncationFamily& f, const std::string& x_label,
                       const std::string& y_label, int n);

/**
 * Proof that the sum A + B is a proper dense subgroup: the target lies in
 * A_n + B_n at every level, yet any single element of A + B matching the
 * level-n truncation needs support at least lower_bound(n) in the discrete
 * block, and that bound grows without bound.
 */
struct EscapeCertificate {
    FamilyId family;
    long long p = 0;
    int levels = 0;
    std::string target;                 // the element of the closure, described
    std::vector<long long> lower_bound; // index k holds the bound at level k+1
    bool monotone = false;
    std::string unbounded_rule;
    std::string verdict;
};

/**
 * lower_bound is computed per level by an exact solve: decompose the
 * truncated target over the generators of B, check the decomposition is
 * unique, count the nonzero coefficients.  For DiscreteTimesCompactSocle
 * the bound is exactly n; for LocalProductPSquared it is the paired
 * subquotient's bound, floor(n/2).
 *
 * target_support, when given, replaces the all-ones target by one
 * supported on the first k coordinates; the bound then stabilizes at k,
 * showing that element does lie in A + B.
 *
 * Throws NotApplicable for GraphOverMonothetic: its sums are closed, the
 * defect there is the meet.
 */
EscapeCertificate escape_certificate(const TruncationFamily& f, int n_max,
                                     std::optional<int> target_support = std::nullopt);

/**
 * The meet computed both ways: once through the finite levels, once in
 * the limit.  For B and C in GraphOverMonothetic the finite meets are
 * nonzero of index q^n while the limit meet is zero, which is exactly the
 * failure of meets to commute with truncation.
 */
struct ExactMeetResult {
    std::string meet_at_infinity;  // "0" or a subgroup label
    std::string rationale;
    std::vector<Subgroup> finite_level_meets;  // levels 1..n_max
};

// GraphOverMonothetic only; throws NotApplicable otherwise.
ExactMeetResult exact_meet(const TruncationFamily& f, const std::string& b_label,
                           const std::string& c_label, int n_max = 20);

struct DistinctnessCert {
    std::string left, right;
    std::string evidence;  // element and level separating the pair
};

/**
 * The five-subgroup obstruction in a GraphOverMonothetic family:
 *
 *        A|B = G
 *       /       \
 *      C         |
 *      |         B
 *      A         |
 *       \       /
 *        B&C = 0
 *
 * with A < C, A|B = C|B = G (joins checked level-wise) and
 * A&B = C&B = 0 (meets at infinity).  All ten pairs of nodes come with
 * a separating membership certificate.
 */
struct PentagonInstance {
    std::string top;     // join of A and B
    std::string upper;   // C
    std::string lower;   // A
    std::string side;    // B
    std::string bottom;  // meet of B and C
    std::vector<std::string> relations;
    std::vector<DistinctnessCert> distinctness;
};

// c_label defaults to the genuine pentagon; passing "G" degenerates the
// configuration to a modular one and throws NotApplicable.
PentagonInstance pentagon_instance(const TruncationFamily& f,
                                  const std::string& c_label = "C");

/**
 * Integers a, b with 0 < |2a + b*sqrt(2)| < eps, witnessing density of
 * 2Z + sqrt(2)Z in R.  Found along the continued-fraction convergents of
 * sqrt(2); certified without floating point through
 *
 *   |2a + b*sqrt(2)| = |(2a)^2 - 2b^2| / |2a - b*sqrt(2)| < |norm| / (2|a| + b)
 *
 * so the returned pair satisfies the integer inequality
 * eps_den * |norm| < eps_num * (2|a| + b), and norm != 0 rules out zero.
 */
struct DensityWitness {
    long long a = 0;
    long long b = 0;
    long long norm = 0;  // (2a)^2 - 2b^2, always +-2 on the convergent path
    long long eps_num = 0;
    long long eps_den = 0;
    std::string certificate;
};

// Throws BadParams unless 0 < eps_num/eps_den < 1.
DensityWitness sqrt2_density_witness(long long eps_num, long long eps_den);

}  // namespace lca
