#include "netwalk/walks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netwalk/errors.hpp"

namespace netwalk {

const char* to_string(WalkKind kind) {
    switch (kind) {
        case WalkKind::RW: return "RW";
        case WalkKind::RWD: return "RWD";
        case WalkKind::RWID: return "RWID";
        case WalkKind::TSAW: return "TSAW";
    }
    return "?";
}

WalkKind walk_kind_from_string(const std::string& name) {
    if (name == "RW") return WalkKind::RW;
    if (name == "RWD") return WalkKind::RWD;
    if (name == "RWID") return WalkKind::RWID;
    if (name == "TSAW") return WalkKind::TSAW;
    throw UsageError("unknown dynamics: " + name);
}

WalkState WalkState::start_at(const Graph& g, NodeId start, const WalkDynamics& dyn) {
    if (start >= g.node_count())
        throw UsageError("start node out of range: " + std::to_string(start));
    if (dyn.kind == WalkKind::TSAW && !(dyn.lambda > 0.0))
        throw UsageError("TSAW lambda must be positive");
    WalkState s;
    s.current_ = start;
    if (dyn.kind == WalkKind::TSAW) s.edge_counts_.assign(g.edge_count(), 0);
    return s;
}

std::uint32_t WalkState::edge_visits(const Graph& g, NodeId u, NodeId v) const {
    if (edge_counts_.empty()) return 0;
    const auto nbrs = g.neighbors(u);
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
    if (it == nbrs.end() || *it != v) return 0;
    return edge_counts_[g.edge_id_at(u, static_cast<std::size_t>(it - nbrs.begin()))];
}

std::uint64_t WalkState::total_edge_visits() const {
    std::uint64_t sum = 0;
    for (auto c : edge_counts_) sum += c;
    return sum;
}

namespace {

// Unnormalized weight of the pos-th neighbor of u. exp_cache holds
// exp(-lambda*f) for small TSAW counts so the hot path avoids libm calls.
inline double neighbor_weight(const Graph& g, NodeId u, std::size_t pos, NodeId nbr,
                              const WalkDynamics& dyn, const std::vector<std::uint32_t>& counts,
                              const std::vector<double>& exp_cache) {
    switch (dyn.kind) {
        case WalkKind::RW: return 1.0;
        case WalkKind::RWD: return static_cast<double>(g.degree(nbr));
        case WalkKind::RWID: return 1.0 / static_cast<double>(g.degree(nbr));
        case WalkKind::TSAW: {
            const std::uint32_t f = counts[g.edge_id_at(u, pos)];
            if (f < exp_cache.size()) return exp_cache[f];
            return std::exp(-dyn.lambda * static_cast<double>(f));
        }
    }
    return 0.0;
}

std::vector<double> tsaw_exp_cache(double lambda) {
    std::vector<double> cache(64);
    for (std::size_t f = 0; f < cache.size(); ++f)
        cache[f] = std::exp(-lambda * static_cast<double>(f));
    return cache;
}

} // namespace

std::vector<double> transition_distribution(const Graph& g, const WalkState& state,
                                            const WalkDynamics& dyn) {
    const NodeId u = state.current();
    const auto nbrs = g.neighbors(u);
    if (nbrs.empty())
        throw NumericError("dead end: node " + std::to_string(u) + " has degree 0");

    std::vector<double> cache;
    if (dyn.kind == WalkKind::TSAW) cache = tsaw_exp_cache(dyn.lambda);

    std::vector<double> probs(nbrs.size());
    double total = 0.0;
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
        const double w = neighbor_weight(g, u, j, nbrs[j], dyn, state.edge_counts_, cache);
        probs[j] = w;
        total += w;
    }
    for (double& p : probs) p /= total;
    return probs;
}

void step(const Graph& g, WalkState& state, const WalkDynamics& dyn, Rng& rng) {
    const NodeId u = state.current_;
    const auto nbrs = g.neighbors(u);
    if (nbrs.empty())
        throw NumericError("dead end: node " + std::to_string(u) + " has degree 0");

    const double u01 = rng.next_double();
    std::size_t pick = nbrs.size() - 1;

    if (dyn.kind == WalkKind::RW) {
        pick = std::min(static_cast<std::size_t>(u01 * static_cast<double>(nbrs.size())),
                        nbrs.size() - 1);
    } else {
        std::vector<double> cache;
        if (dyn.kind == WalkKind::TSAW) cache = tsaw_exp_cache(dyn.lambda);
        // two-pass inverse CDF: total first, then scan for cum > u * total
        double total = 0.0;
        for (std::size_t j = 0; j < nbrs.size(); ++j)
            total += neighbor_weight(g, u, j, nbrs[j], dyn, state.edge_counts_, cache);
        const double threshold = u01 * total;
        double cum = 0.0;
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
            cum += neighbor_weight(g, u, j, nbrs[j], dyn, state.edge_counts_, cache);
            if (cum > threshold) {
                pick = j;
                break;
            }
        }
    }

    if (dyn.kind == WalkKind::TSAW) ++state.edge_counts_[g.edge_id_at(u, pick)];
    state.current_ = nbrs[pick];
    ++state.step_;
}

TransitionTable TransitionTable::build(const Graph& g, WalkKind kind) {
    TransitionTable t;
    t.kind_ = kind;
    if (kind != WalkKind::RWD && kind != WalkKind::RWID) return t;

    const NodeId n = g.node_count();
    t.offsets_.assign(n + 1, 0);
    for (NodeId i = 0; i < n; ++i) t.offsets_[i + 1] = t.offsets_[i] + g.degree(i);
    t.prefix_.resize(t.offsets_[n]);
    for (NodeId i = 0; i < n; ++i) {
        double cum = 0.0;
        const auto nbrs = g.neighbors(i);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
            const double d = static_cast<double>(g.degree(nbrs[j]));
            cum += (kind == WalkKind::RWD) ? d : 1.0 / d;
            t.prefix_[t.offsets_[i] + j] = cum;
        }
    }
    return t;
}

VisitSequence run_walk(const Graph& g, const WalkDynamics& dyn, NodeId start,
                       std::uint64_t n_steps, Rng& rng, const TransitionTable* table) {
    if (start >= g.node_count())
        throw UsageError("start node out of range: " + std::to_string(start));
    if (table && table->kind() != dyn.kind) throw UsageError("transition table kind mismatch");

    VisitSequence seq;
    seq.nodes.reserve(n_steps + 1);
    seq.nodes.push_back(start);
    if (n_steps == 0) return seq;

    const bool tsaw = dyn.kind == WalkKind::TSAW;
    std::vector<std::uint32_t> counts;
    std::vector<double> cache;
    if (tsaw) {
        counts.assign(g.edge_count(), 0);
        cache = tsaw_exp_cache(dyn.lambda);
    }

    TransitionTable local;
    if (!table && (dyn.kind == WalkKind::RWD || dyn.kind == WalkKind::RWID)) {
        local = TransitionTable::build(g, dyn.kind);
        table = &local;
    }

    NodeId cur = start;
    for (std::uint64_t s = 0; s < n_steps; ++s) {
        const auto nbrs = g.neighbors(cur);
        if (nbrs.empty())
            throw NumericError("dead end: node " + std::to_string(cur) + " has degree 0");
        const double u01 = rng.next_double();
        std::size_t pick = nbrs.size() - 1;

        switch (dyn.kind) {
            case WalkKind::RW:
                pick = std::min(static_cast<std::size_t>(u01 * static_cast<double>(nbrs.size())),
                                nbrs.size() - 1);
                break;
            case WalkKind::RWD:
            case WalkKind::RWID: {
                const double* first = table->prefix_.data() + table->offsets_[cur];
                const double* last = table->prefix_.data() + table->offsets_[cur + 1];
                const double threshold = u01 * *(last - 1);
                pick = static_cast<std::size_t>(std::upper_bound(first, last, threshold) - first);
                if (pick >= nbrs.size()) pick = nbrs.size() - 1;
                break;
            }
            case WalkKind::TSAW: {
                double total = 0.0;
                for (std::size_t j = 0; j < nbrs.size(); ++j) {
                    const std::uint32_t f = counts[g.edge_id_at(cur, j)];
                    total += f < cache.size() ? cache[f]
                                              : std::exp(-dyn.lambda * static_cast<double>(f));
                }
                const double threshold = u01 * total;
                double cum = 0.0;
                for (std::size_t j = 0; j < nbrs.size(); ++j) {
                    const std::uint32_t f = counts[g.edge_id_at(cur, j)];
                    cum += f < cache.size() ? cache[f]
                                            : std::exp(-dyn.lambda * static_cast<double>(f));
                    if (cum > threshold) {
                        pick = j;
                        break;
                    }
                }
                ++counts[g.edge_id_at(cur, pick)];
                break;
            }
        }
        cur = nbrs[pick];
        seq.nodes.push_back(cur);
    }
    return seq;
}

std::string format_visit_sequence(const VisitSequence& seq) {
    std::string out;
    for (NodeId v : seq.nodes) {
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

} // namespace netwalk
