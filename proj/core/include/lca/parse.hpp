#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "lca/expr.hpp"

namespace lca {

/**
 * Errors raised while reading the expression language.  Every error carries
 * the byte offset of the offending token in the input.
 */
struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& what, std::size_t pos) : std::runtime_error(what), pos(pos) {}
};

struct SyntaxError : ParseError {
    using ParseError::ParseError;
};

// Identifier in atom position that names no atom, or atom parameters that
// name no group (Z(6), Zp(9), exponent 0).
struct UnknownAtom : ParseError {
    using ParseError::ParseError;
};

// Identifier in prime position with no enclosing let binding.
struct UnboundPrimeSequence : ParseError {
    using ParseError::ParseError;
};

/*
 * Grammar (ASCII, whitespace-insensitive, "#" starts a line comment):
 *
 *   expr     := term ("+" term)*
 *   term     := atom | family | "(" expr ")" | letexpr
 *   letexpr  := "let" IDENT "=" "primes" seqspec "in" expr
 *   seqspec  := "distinct" ("(" INT ("," INT)* ")")? | "const" "(" INT ")"
 *   atom     := "Z" | "R" | "T"
 *             | "Z" "(" slot ("^" INT)? ")"
 *             | ("Zinf" | "Zp" | "Qp") "(" slot ")"
 *   family   := ("dsum" | "prod") "[" card "]" "(" atom ")"
 *             | "locprod" "[" card "]" "(" atom "," subdes ")"
 *   card     := INT | "inf"
 *   subdes   := "sub" "(" slot "^" INT ")" | "Zp" "(" slot ")"
 *   slot     := INT | IDENT        (IDENT refers to a bound sequence)
 *
 * Z(n) for a prime power n = p^a is normalised to the (p, a) spelling, so
 * Z(4) and Z(2^2) parse to the same node.  A "const" binding substitutes its
 * prime at parse time and leaves no trace in the AST; "distinct" bindings
 * survive as PrimeSequence values.  The optional seed of "distinct" lists
 * strictly increasing primes that start the sequence.
 */
GroupExpr parse(const std::string& text);

}  // namespace lca
