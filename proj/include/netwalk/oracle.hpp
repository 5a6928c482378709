#pragma once

#include <vector>

#include "netwalk/graph.hpp"
#include "netwalk/walks.hpp"

namespace netwalk {

/// Exact expected coverage per step for the memoryless dynamics (RW, RWD,
/// RWID), by propagating probabilities over (current node, visited bitmask)
/// states. Restricted to N <= 12 and n_steps <= 60; TSAW is rejected because
/// its edge counters blow up the state space.
std::vector<double> oracle_expected_coverage(const Graph& g, WalkKind kind, NodeId start,
                                             int n_steps);

} // namespace netwalk
