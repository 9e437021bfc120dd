#pragma once

#include <string>
#include <vector>

#include "lca/expr.hpp"

namespace lca {

struct Violation {
    std::string path;  // "$" for the whole expression, "$.parts[i]" inside a sum
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/**
 * Checks that an expression denotes a locally compact group.  The parser
 * already guarantees shape; this pass rejects the combinations that leave
 * the class:
 *
 *   - infinite products over a non-compact atom, infinite discrete sums
 *     over a non-discrete one,
 *   - infinite families of the circle (the circle is kept finite-only so
 *     every expression stays dualizable within the grammar),
 *   - local product sub indices beyond the cyclic exponent.
 *
 * Violations are data, not exceptions; an empty report means valid.
 */
ValidationReport validate(const GroupExpr& e);

}  // namespace lca
