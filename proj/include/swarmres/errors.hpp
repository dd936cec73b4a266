#pragma once

#include <stdexcept>

namespace swarmres {

// A well-formed request the instance cannot satisfy (disconnected candidate
// pool, empty feasible set, ...). Distinct from std::invalid_argument so the
// CLI can map it to its infeasibility exit code.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace swarmres
