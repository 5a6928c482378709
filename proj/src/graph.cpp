#include "netwalk/graph.hpp"

#include <algorithm>
#include <queue>

#include "netwalk/errors.hpp"

namespace netwalk {

Graph Graph::from_edges(NodeId node_count, std::span<const Edge> edges) {
    Graph g;
    g.node_count_ = node_count;

    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw UsageError("edge endpoint out of range: (" + std::to_string(u) + ", " +
                             std::to_string(v) + ")");
        if (u == v)
            throw UsageError("self-loop at node " + std::to_string(u));
        canon.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(canon.begin(), canon.end());
    if (std::adjacent_find(canon.begin(), canon.end()) != canon.end())
        throw UsageError("duplicate edge in edge list");

    g.edge_count_ = canon.size();
    std::vector<NodeId> deg(node_count, 0);
    for (const auto& [u, v] : canon) {
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(node_count + 1, 0);
    for (NodeId i = 0; i < node_count; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    g.neighbors_.resize(g.offsets_[node_count]);
    g.edge_ids_.resize(g.offsets_[node_count]);

    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // canon is sorted by (u, v); inserting in that order keeps every list sorted
    // for the u side. The v side gets its entries in increasing u order, also
    // sorted. One undirected id per canonical edge.
    for (std::uint32_t id = 0; id < canon.size(); ++id) {
        const auto& [u, v] = canon[id];
        g.neighbors_[cursor[u]] = v;
        g.edge_ids_[cursor[u]] = id;
        ++cursor[u];
    }
    for (std::uint32_t id = 0; id < canon.size(); ++id) {
        const auto& [u, v] = canon[id];
        g.neighbors_[cursor[v]] = u;
        g.edge_ids_[cursor[v]] = id;
        ++cursor[v];
    }
    // v-side entries (neighbors < node) precede u-side ones (> node) only if we
    // merge; fix by sorting each list together with its edge ids.
    for (NodeId i = 0; i < node_count; ++i) {
        const std::size_t lo = g.offsets_[i], hi = g.offsets_[i + 1];
        std::vector<std::pair<NodeId, std::uint32_t>> tmp;
        tmp.reserve(hi - lo);
        for (std::size_t p = lo; p < hi; ++p) tmp.emplace_back(g.neighbors_[p], g.edge_ids_[p]);
        std::sort(tmp.begin(), tmp.end());
        for (std::size_t p = lo; p < hi; ++p) {
            g.neighbors_[p] = tmp[p - lo].first;
            g.edge_ids_[p] = tmp[p - lo].second;
        }
    }
    return g;
}

NodeId Graph::degree(NodeId i) const {
    if (i >= node_count_) throw UsageError("node index out of range: " + std::to_string(i));
    return static_cast<NodeId>(offsets_[i + 1] - offsets_[i]);
}

std::span<const NodeId> Graph::neighbors(NodeId i) const {
    if (i >= node_count_) throw UsageError("node index out of range: " + std::to_string(i));
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

double Graph::average_degree() const {
    if (node_count_ == 0) throw UsageError("average degree of empty graph");
    return 2.0 * static_cast<double>(edge_count_) / static_cast<double>(node_count_);
}

void Graph::set_coords(std::vector<std::array<double, 2>> coords) {
    if (coords.size() != node_count_) throw UsageError("coords size mismatch");
    coords_ = std::move(coords);
}

void Graph::set_communities(std::vector<std::uint32_t> community) {
    if (community.size() != node_count_) throw UsageError("community size mismatch");
    community_ = std::move(community);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count_; ++u)
        for (NodeId v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

GiantComponent giant_component(const Graph& g) {
    const NodeId n = g.node_count();
    if (n == 0) throw UsageError("giant component of empty graph");

    std::vector<std::int32_t> comp(n, -1);
    std::int32_t n_comp = 0;
    std::vector<std::size_t> comp_size;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        const std::int32_t c = n_comp++;
        comp_size.push_back(0);
        stack.push_back(s);
        comp[s] = c;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            ++comp_size[c];
            for (NodeId v : g.neighbors(u)) {
                if (comp[v] < 0) {
                    comp[v] = c;
                    stack.push_back(v);
                }
            }
        }
    }

    // components are discovered in order of their smallest member, so the first
    // maximum wins ties with the smallest contained original index
    std::int32_t best = 0;
    for (std::int32_t c = 1; c < n_comp; ++c)
        if (comp_size[c] > comp_size[best]) best = c;

    GiantComponent out;
    out.old_to_new.assign(n, -1);
    std::vector<NodeId> new_to_old;
    new_to_old.reserve(comp_size[best]);
    for (NodeId u = 0; u < n; ++u) {
        if (comp[u] == best) {
            out.old_to_new[u] = static_cast<std::int64_t>(new_to_old.size());
            new_to_old.push_back(u);
        }
    }

    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
        if (comp[u] != best) continue;
        for (NodeId v : g.neighbors(u))
            if (u < v)
                edges.emplace_back(static_cast<NodeId>(out.old_to_new[u]),
                                   static_cast<NodeId>(out.old_to_new[v]));
    }
    out.graph = Graph::from_edges(static_cast<NodeId>(new_to_old.size()), edges);

    if (g.has_coords()) {
        std::vector<std::array<double, 2>> coords(new_to_old.size());
        for (std::size_t i = 0; i < new_to_old.size(); ++i) coords[i] = g.coord(new_to_old[i]);
        out.graph.set_coords(std::move(coords));
    }
    if (g.has_communities()) {
        std::vector<std::uint32_t> community(new_to_old.size());
        for (std::size_t i = 0; i < new_to_old.size(); ++i)
            community[i] = g.community(new_to_old[i]);
        out.graph.set_communities(std::move(community));
    }
    return out;
}

bool is_connected(const Graph& g) {
    const NodeId n = g.node_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        ++count;
        for (NodeId v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return count == n;
}

} // namespace netwalk
