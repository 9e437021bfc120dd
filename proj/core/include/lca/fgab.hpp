#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lca {

using Mat = std::vector<std::vector<long long>>;

/**
 * Exact integer linear algebra over row lattices.  All row operations are
 * carried out in 128-bit intermediates and checked on narrowing, so inputs
 * whose entries and pivots stay below 2^62 are handled without silent
 * wraparound.
 */

// Canonical row Hermite normal form.  Pivots move left to right, each pivot
// is positive, entries above a pivot lie in [0, pivot), zero rows are
// dropped.  Row space is preserved; the result is the unique canonical
// basis of it.
Mat hnf(Mat a);

// Same reduction, also returning the square unimodular U with U*A equal to
// the result padded back to A's row count (rows past the rank map to zero).
std::pair<Mat, Mat> hnf_with_transform(Mat a);

// Basis (in HNF) of { x : x * a = 0 }.
Mat left_kernel(const Mat& a);

struct SnfResult {
    Mat s;  // diagonal, d_i | d_{i+1}
    Mat l;  // unimodular
    Mat r;  // unimodular, l * input * r = s
};
SnfResult snf(Mat a);

Mat mat_mul(const Mat& a, const Mat& b);
Mat identity_mat(std::size_t n);

/**
 * A finitely generated abelian group in invariant-factor presentation:
 * Z^rank plus one cyclic summand per torsion order, with each order at
 * least 2 and d_i dividing d_{i+1}.
 */
struct FgAbGroup {
    long long rank = 0;
    std::vector<long long> torsion_orders;

    static FgAbGroup free_group(long long rank);
    // Canonicalizes arbitrary cyclic orders into invariant factors, so
    // from_orders(0, {4, 9}) and from_orders(0, {36}) build the same value.
    static FgAbGroup from_orders(long long rank, std::vector<long long> orders);

    std::size_t dim() const { return static_cast<std::size_t>(rank) + torsion_orders.size(); }
    bool finite() const { return rank == 0; }
    unsigned long long order() const;  // throws std::domain_error when infinite

    bool operator==(const FgAbGroup&) const = default;
};

/**
 * A subgroup, stored as the HNF basis of its preimage lattice in Z^dim.
 * The ambient relations are part of the lattice, so the zero subgroup of
 * Z(4) has basis [[4]] and equality of subgroups is equality of matrices.
 */
struct Subgroup {
    FgAbGroup ambient;
    Mat basis;

    bool operator==(const Subgroup&) const = default;
};

struct AmbientMismatch : std::invalid_argument {
    AmbientMismatch() : std::invalid_argument("subgroups live in different ambients") {}
};

Subgroup sub_from_generators(const FgAbGroup& g, const Mat& generators);
Subgroup sub_zero(const FgAbGroup& g);
Subgroup sub_full(const FgAbGroup& g);

Subgroup sub_sum(const Subgroup& x, const Subgroup& y);
Subgroup sub_meet(const Subgroup& x, const Subgroup& y);
bool member(const std::vector<long long>& elem, const Subgroup& x);
bool sub_leq(const Subgroup& x, const Subgroup& y);

// [y : x] for x a subgroup of y; throws std::domain_error when infinite.
unsigned long long subgroup_index(const Subgroup& x, const Subgroup& y);

// Invariant-factor structure of ambient/x.
FgAbGroup quotient_group(const Subgroup& x);

// Kernel of multiplication by p.
Subgroup socle(const FgAbGroup& g, long long p);
// Sum over primes p of p * (p-primary part); for an invariant-factor
// coordinate of order d this is radical(d) times the coordinate.
Subgroup frattini(const FgAbGroup& g);

// All elements as coordinate vectors, free coordinates excluded.
// Throws when infinite.
std::vector<std::vector<long long>> all_elements(const FgAbGroup& g);

}  // namespace lca
