#pragma once

#include <stdexcept>

namespace lca {

// Raised when an operation's governing hypothesis fails for the given
// input: asking for a decomposition the verdict does not assert, or a
// witness construction whose failure mode the family does not exhibit.
struct NotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lca
