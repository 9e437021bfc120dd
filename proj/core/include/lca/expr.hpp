#pragma once

// Closed expression grammar for the groups the toolkit reasons about.
//
//   atoms      Z   R   T   Z(p^a)   Zinf(p)   Zp(p)   Qp(p)
//   sums       e1 + e2 + ... (finite)
//   families   dsum[k](A)  prod[k](A)  locprod[k](G, sub)   with k a
//              natural number or inf, and A an atom template whose prime
//              may be drawn from a bound prime sequence
//
// Expressions are immutable values.  Smart constructors keep sums
// flattened and sorted under a fixed total order, so structural equality
// coincides with canonical-form equality and render() needs no brackets.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "lca/numbers.hpp"

namespace lca {

enum class AtomKind {
    Integers,        // Z, discrete
    Reals,           // R
    Circle,          // T = R/Z
    Cyclic,          // Z(p^a), discrete
    Pruefer,         // Z(p^inf), discrete
    PadicIntegers,   // Z_p, compact
    PadicRationals,  // Q_p
};

bool atom_kind_needs_prime(AtomKind k);

struct Atom {
    AtomKind kind = AtomKind::Integers;
    std::uint64_t p = 0;  // 0 when the kind carries no prime
    int exponent = 0;     // Cyclic only, >= 1

    static Atom integers() { return {AtomKind::Integers, 0, 0}; }
    static Atom reals() { return {AtomKind::Reals, 0, 0}; }
    static Atom circle() { return {AtomKind::Circle, 0, 0}; }
    static Atom cyclic(Prime p, int a);
    static Atom pruefer(Prime p) { return {AtomKind::Pruefer, p.value, 0}; }
    static Atom padic_integers(Prime p) { return {AtomKind::PadicIntegers, p.value, 0}; }
    static Atom padic_rationals(Prime p) { return {AtomKind::PadicRationals, p.value, 0}; }

    bool is_discrete() const;
    bool is_compact() const;

    friend bool operator==(const Atom&, const Atom&) = default;
};

// Total order on atoms used for canonical rendering: by kind, then prime,
// then exponent.
std::strong_ordering atom_order(const Atom& a, const Atom& b);

// An atom whose prime slot is either fixed or ranges over a prime
// sequence (families only).  Primeless kinds ignore both fields.
struct AtomTemplate {
    AtomKind kind = AtomKind::Integers;
    std::optional<PrimeSequence> seq;  // set => prime drawn from the sequence
    std::uint64_t p = 0;               // fixed prime otherwise
    int exponent = 1;                  // Cyclic only

    static AtomTemplate fixed(Atom a) {
        return AtomTemplate{a.kind, std::nullopt, a.p, a.exponent == 0 ? 1 : a.exponent};
    }
    static AtomTemplate over(AtomKind k, PrimeSequence s, int exponent = 1) {
        return AtomTemplate{k, std::move(s), 0, exponent};
    }

    bool uses_sequence() const { return seq.has_value(); }
    Atom instantiate(std::uint64_t prime) const;  // substitute a concrete prime
    Atom as_atom() const;                         // fixed templates only

    friend bool operator==(const AtomTemplate&, const AtomTemplate&) = default;
};

enum class ExprKind { Atom, Sum, DiscreteSum, Product, LocalProduct };

// Local products pair a factor template G with the designated compact
// open subgroup of each factor:
//   Qp(p)   with  Zp(p)                      sub_index ignored
//   Z(p^a)  with  the index-p^b subgroup     0 <= b <= a
//   Zp(p)   with  p^b Zp(p)                  b >= 0
//   Zinf(p) with  the p^b-torsion subgroup   b >= 0
// The last two pairs are dual to each other; the first two are self-dual.

class GroupExpr {
  public:
    GroupExpr() : kind_(ExprKind::Atom), atom_(Atom::integers()) {}

    static GroupExpr atom(Atom a);
    // Flattens nested sums and sorts parts; empty part list is rejected.
    static GroupExpr sum(std::vector<GroupExpr> parts);
    static GroupExpr dsum(AtomTemplate tmpl, Cardinal card);
    static GroupExpr prod(AtomTemplate tmpl, Cardinal card);
    static GroupExpr locprod(AtomTemplate tmpl, int sub_index, Cardinal card);

    ExprKind kind() const { return kind_; }
    const Atom& as_atom() const { return atom_; }
    const std::vector<GroupExpr>& parts() const { return parts_; }
    const AtomTemplate& tmpl() const { return tmpl_; }
    Cardinal card() const { return card_; }
    int sub_index() const { return sub_index_; }

    // The constituents of an expression: its sum parts, or the expression
    // itself when it is not a sum.
    std::vector<const GroupExpr*> constituents() const;

    friend bool operator==(const GroupExpr&, const GroupExpr&) = default;

  private:
    ExprKind kind_;
    Atom atom_;                     // Atom
    std::vector<GroupExpr> parts_;  // Sum, flattened + sorted
    AtomTemplate tmpl_;             // families
    Cardinal card_;                 // families
    int sub_index_ = 0;             // LocalProduct
};

// Fixed total order on expressions, extending atom_order.
std::strong_ordering expr_order(const GroupExpr& a, const GroupExpr& b);

// Canonical spelling.  parse(render(e)) == e for every well-formed e.
std::string render(const GroupExpr& e);
std::string render(const Atom& a);

}  // namespace lca
