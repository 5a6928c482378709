#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netwalk {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable simple undirected graph. Adjacency is stored in CSR form with
/// neighbor lists sorted ascending, so transition-probability vectors have a
/// deterministic order. Each undirected edge carries a dense id in [0, m),
/// shared by both directions (used by walks that keep per-edge memory).
class Graph {
  public:
    Graph() = default;

    /// Builds from an edge list. Throws UsageError on self-loops, duplicate
    /// edges or out-of-range endpoints; generators are expected to emit clean
    /// lists.
    static Graph from_edges(NodeId node_count, std::span<const Edge> edges);

    NodeId node_count() const { return node_count_; }
    std::size_t edge_count() const { return edge_count_; }

    NodeId degree(NodeId i) const;
    std::span<const NodeId> neighbors(NodeId i) const;

    /// Id of the undirected edge behind neighbors(i)[pos].
    std::uint32_t edge_id_at(NodeId i, std::size_t pos) const {
        return edge_ids_[offsets_[i] + pos];
    }

    double average_degree() const;

    bool has_coords() const { return !coords_.empty(); }
    std::array<double, 2> coord(NodeId i) const { return coords_[i]; }
    void set_coords(std::vector<std::array<double, 2>> coords);

    bool has_communities() const { return !community_.empty(); }
    std::uint32_t community(NodeId i) const { return community_[i]; }
    void set_communities(std::vector<std::uint32_t> community);

    /// Edges as (u, v) with u < v, ordered by u then v.
    std::vector<Edge> edges() const;

  private:
    NodeId node_count_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::size_t> offsets_;      // size node_count + 1
    std::vector<NodeId> neighbors_;         // size 2m, sorted per node
    std::vector<std::uint32_t> edge_ids_;   // aligned with neighbors_
    std::vector<std::array<double, 2>> coords_;
    std::vector<std::uint32_t> community_;
};

struct GiantComponent {
    Graph graph;
    /// old index -> new index, -1 for nodes outside the component
    std::vector<std::int64_t> old_to_new;
};

/// Largest connected component, relabeled to dense indices that preserve the
/// original order. Ties between equal-size components go to the one containing
/// the smallest original index. Coordinates and community labels carry over.
GiantComponent giant_component(const Graph& g);

/// True if every node is reachable from node 0 (single component).
bool is_connected(const Graph& g);

} // namespace netwalk
