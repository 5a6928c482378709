#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "netwalk/graph.hpp"
#include "netwalk/rng.hpp"

namespace netwalk {

enum class WalkKind { RW, RWD, RWID, TSAW };

const char* to_string(WalkKind kind);
WalkKind walk_kind_from_string(const std::string& name);

struct WalkDynamics {
    WalkKind kind = WalkKind::RW;
    double lambda = std::numbers::ln2; // TSAW decay, exp(-lambda * edge visits)
};

/// Position, step counter and (for TSAW) per-edge traversal counts. The counts
/// are undirected: either direction of an edge bumps the same counter. They are
/// indexed by the graph's dense edge ids and only allocated for TSAW.
class WalkState {
  public:
    static WalkState start_at(const Graph& g, NodeId start, const WalkDynamics& dyn);

    NodeId current() const { return current_; }
    std::uint64_t step_count() const { return step_; }

    /// Visit count of edge (u, v); zero when never traversed.
    std::uint32_t edge_visits(const Graph& g, NodeId u, NodeId v) const;
    std::uint64_t total_edge_visits() const;

    friend void step(const Graph& g, WalkState& state, const WalkDynamics& dyn, Rng& rng);
    friend std::vector<double> transition_distribution(const Graph& g, const WalkState& state,
                                                       const WalkDynamics& dyn);

  private:
    NodeId current_ = 0;
    std::uint64_t step_ = 0;
    std::vector<std::uint32_t> edge_counts_; // by edge id, TSAW only
};

/// Transition probabilities out of state.current(), aligned with the sorted
/// neighbor list. RW is uniform, RWD proportional to neighbor degree, RWID to
/// inverse neighbor degree, TSAW to exp(-lambda * edge visit count).
std::vector<double> transition_distribution(const Graph& g, const WalkState& state,
                                            const WalkDynamics& dyn);

/// Advances one step: inverse-CDF sample over the sorted neighbor order, using
/// one uniform draw. TSAW bumps the traversed edge's counter.
void step(const Graph& g, WalkState& state, const WalkDynamics& dyn, Rng& rng);

struct VisitSequence {
    std::vector<NodeId> nodes; // length steps + 1, starts at the start node
};

/// Precomputed per-node cumulative transition weights for the memoryless
/// biased dynamics (RWD, RWID). Shared read-only across concurrent walks.
class TransitionTable {
  public:
    static TransitionTable build(const Graph& g, WalkKind kind);
    WalkKind kind() const { return kind_; }

    friend VisitSequence run_walk(const Graph& g, const WalkDynamics& dyn, NodeId start,
                                  std::uint64_t n_steps, Rng& rng, const TransitionTable* table);

  private:
    WalkKind kind_ = WalkKind::RW;
    std::vector<std::size_t> offsets_;
    std::vector<double> prefix_; // running weight sums per node block
};

/// Full walk of n_steps steps. Deterministic in (graph, dynamics, start, rng
/// seed); identical to repeated step() calls on the same stream. Passing a
/// prebuilt table for RWD/RWID skips the per-call weight scan.
VisitSequence run_walk(const Graph& g, const WalkDynamics& dyn, NodeId start,
                       std::uint64_t n_steps, Rng& rng, const TransitionTable* table = nullptr);

/// One node index per line, LF-terminated.
std::string format_visit_sequence(const VisitSequence& seq);

} // namespace netwalk
