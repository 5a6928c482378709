#include "netwalk/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "netwalk/errors.hpp"

namespace netwalk {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
}

} // namespace

void GeneratorSpec::validate() const {
    if (n < 2) throw UsageError("generator needs n >= 2");
    if (!(target_k > 0.0)) throw UsageError("target_k must be positive");
    if (!(target_k < static_cast<double>(n) - 1.0))
        throw UsageError("target_k must be below n - 1");
    switch (model) {
        case Model::ER:
            break;
        case Model::BA:
            if (std::llround(target_k / 2.0) < 1)
                throw UsageError("BA needs target_k/2 to round to at least 1");
            break;
        case Model::WAX:
            if (!(waxman_beta > 0.0)) throw UsageError("waxman beta must be positive");
            break;
        case Model::LFR:
            if (lfr.n_communities < 1) throw UsageError("LFR needs at least one community");
            if (lfr.mu < 0.0 || lfr.mu > 1.0) throw UsageError("LFR mu must lie in [0, 1]");
            if (lfr.t2 != 0.0)
                throw UsageError("LFR community-size exponent t2 != 0 is not supported");
            if (lfr.max_k != 0 && static_cast<double>(lfr.max_k) < target_k)
                throw UsageError("LFR max_k must be at least target_k");
            break;
    }
}

Graph gen_er(std::uint32_t n, std::size_t m_edges, Rng& rng) {
    if (n == 0) throw UsageError("gen_er needs n >= 1");
    const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (m_edges > total_pairs)
        throw UsageError("gen_er: requested " + std::to_string(m_edges) + " edges but only " +
                         std::to_string(total_pairs) + " pairs exist");

    std::vector<Edge> edges;
    edges.reserve(m_edges);
    if (2 * static_cast<std::uint64_t>(m_edges) > total_pairs) {
        // dense request: partial Fisher-Yates over the materialized pair list
        std::vector<Edge> pairs;
        pairs.reserve(total_pairs);
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        for (std::size_t i = 0; i < m_edges; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.next_below(pairs.size() - i));
            std::swap(pairs[i], pairs[j]);
            edges.push_back(pairs[i]);
        }
    } else {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(m_edges * 2);
        while (edges.size() < m_edges) {
            const auto u = static_cast<NodeId>(rng.next_below(n));
            const auto v = static_cast<NodeId>(rng.next_below(n));
            if (u == v) continue;
            if (seen.insert(edge_key(u, v)).second) edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

Graph gen_ba(std::uint32_t n, std::uint32_t m_attach, Rng& rng) {
    if (m_attach < 1 || m_attach >= n) throw UsageError("gen_ba needs 1 <= m_attach < n");

    std::vector<Edge> edges;
    // endpoint multiset: every node appears once per unit of degree, so a
    // uniform draw lands on a node with probability proportional to its degree
    std::vector<NodeId> endpoints;
    edges.reserve(static_cast<std::size_t>(m_attach) * n);
    endpoints.reserve(2 * static_cast<std::size_t>(m_attach) * n);

    for (NodeId u = 0; u <= m_attach; ++u)
        for (NodeId v = u + 1; v <= m_attach; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }

    std::vector<NodeId> targets;
    targets.reserve(m_attach);
    for (NodeId node = m_attach + 1; node < n; ++node) {
        targets.clear();
        while (targets.size() < m_attach) {
            const NodeId pick = endpoints[rng.next_below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), pick) == targets.end())
                targets.push_back(pick);
        }
        for (NodeId t : targets) {
            edges.emplace_back(node, t);
            endpoints.push_back(node);
            endpoints.push_back(t);
        }
    }
    return Graph::from_edges(n, edges);
}

namespace {

std::vector<std::array<double, 2>> sample_unit_square(std::uint32_t n, Rng& rng) {
    std::vector<std::array<double, 2>> coords(n);
    for (auto& c : coords) {
        c[0] = rng.next_double();
        c[1] = rng.next_double();
    }
    return coords;
}

// exp(-d_ij/beta) for all pairs i < j, in (i, j) order. Stored as float: the
// rounding is orders of magnitude below the calibration tolerance.
std::vector<float> waxman_weights(const std::vector<std::array<double, 2>>& coords, double beta) {
    const std::size_t n = coords.size();
    std::vector<float> w;
    w.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = coords[i][0], yi = coords[i][1];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = xi - coords[j][0], dy = yi - coords[j][1];
            const double d = std::sqrt(dx * dx + dy * dy);
            w.push_back(static_cast<float>(std::exp(-d / beta)));
        }
    }
    return w;
}

double waxman_expected_edges(const std::vector<float>& weights, double a) {
    double sum = 0.0;
    for (float w : weights) sum += std::min(1.0, a * static_cast<double>(w));
    return sum;
}

constexpr double kWaxmanAMax = 1e12;

WaxmanCalibration calibrate_on(const std::vector<float>& weights, std::uint32_t n,
                               double target_k) {
    const double target = static_cast<double>(n) * target_k / 2.0;
    if (target <= 0.0) return {std::numeric_limits<double>::min(), 0.0};
    const double tol = 0.005 * target;

    double hi = 1.0;
    double e_hi = waxman_expected_edges(weights, hi);
    while (e_hi < target - tol) {
        hi *= 2.0;
        if (hi > kWaxmanAMax)
            throw GenerationError(
                "waxman calibration cannot reach the requested density; increase beta");
        e_hi = waxman_expected_edges(weights, hi);
    }
    if (std::abs(e_hi - target) <= tol) return {hi, e_hi};

    double lo = 0.0; // E(0) = 0 < target, so the crossing always lies inside
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double e = waxman_expected_edges(weights, mid);
        if (std::abs(e - target) <= tol) return {mid, e};
        (e < target ? lo : hi) = mid;
    }
    throw GenerationError("waxman calibration did not converge");
}

} // namespace

WaxmanCalibration calibrate_waxman(std::uint32_t n, double target_k, double beta, Rng& rng) {
    if (n < 2) throw UsageError("calibrate_waxman needs n >= 2");
    if (!(beta > 0.0)) throw UsageError("waxman beta must be positive");
    const auto coords = sample_unit_square(n, rng);
    return calibrate_on(waxman_weights(coords, beta), n, target_k);
}

Graph gen_waxman(std::uint32_t n, double target_k, double beta, Rng& rng) {
    if (n < 2) throw UsageError("gen_waxman needs n >= 2");
    if (!(beta > 0.0)) throw UsageError("waxman beta must be positive");

    auto coords = sample_unit_square(n, rng);
    const auto weights = waxman_weights(coords, beta);
    const auto cal = calibrate_on(weights, n, target_k);

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(cal.expected_edges * 1.1) + 16);
    std::size_t p = 0;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j, ++p) {
            const double prob = std::min(1.0, cal.a * static_cast<double>(weights[p]));
            if (rng.next_double() < prob) edges.emplace_back(i, j);
        }
    }
    Graph g = Graph::from_edges(n, edges);
    g.set_coords(std::move(coords));
    return g;
}

namespace {

// ---- LFR helpers ------------------------------------------------------------

// probability mass of [x1, x2] under density ~ x^-t on [a, b]
double power_mass(double x1, double x2, double a, double b, double t) {
    if (t == 1.0) return (std::log(x2) - std::log(x1)) / (std::log(b) - std::log(a));
    const double e = 1.0 - t;
    return (std::pow(x1, e) - std::pow(x2, e)) / (std::pow(a, e) - std::pow(b, e));
}

// mean of floor(x) for x ~ power law on [a, b)
double power_floor_mean(double a, double b, double t) {
    double mean = 0.0;
    const auto k_lo = static_cast<long>(std::floor(a));
    const auto k_hi = static_cast<long>(std::ceil(b)) - 1;
    for (long k = k_lo; k <= k_hi; ++k) {
        const double x1 = std::max(a, static_cast<double>(k));
        const double x2 = std::min(b, static_cast<double>(k + 1));
        if (x2 <= x1) continue;
        mean += static_cast<double>(k) * power_mass(x1, x2, a, b, t);
    }
    return mean;
}

double power_icdf(double u, double a, double b, double t) {
    if (t == 1.0) return a * std::pow(b / a, u);
    const double e = 1.0 - t;
    const double pa = std::pow(a, e), pb = std::pow(b, e);
    return std::pow(pa - u * (pa - pb), 1.0 / e);
}

// minimum degree (continuous) so that floor-sampled degrees on [x_min, max_k]
// average to target_k
double solve_power_law_min(double target_k, int max_k, double t) {
    const double b = static_cast<double>(max_k) + 1.0;
    double lo = 1.0, hi = b - 1.0;
    if (power_floor_mean(lo, b, t) > target_k)
        throw GenerationError("LFR degree target below the distribution's reachable mean");
    if (power_floor_mean(hi, b, t) < target_k)
        throw GenerationError("LFR degree target above max_k; raise max_k");
    for (int iter = 0; iter < 100; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double mean = power_floor_mean(mid, b, t);
        if (std::abs(mean - target_k) <= 0.003 * target_k) return mid;
        (mean < target_k ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct StubPair {
    NodeId u, v;
};

// Configuration-model repair: reshuffle partners of invalid pairs until every
// pair is a fresh simple edge. `valid` checks the pair itself (loops, community
// constraints); duplicates are tracked against `committed` plus the batch.
bool repair_pairs(std::vector<StubPair>& pairs, const std::unordered_set<std::uint64_t>& committed,
                  const std::function<bool(NodeId, NodeId)>& valid, Rng& rng, int max_sweeps) {
    if (pairs.empty()) return true;
    std::unordered_set<std::uint64_t> batch;
    std::vector<std::size_t> bad;
    for (int sweep = 0;; ++sweep) {
        batch.clear();
        bad.clear();
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto [u, v] = pairs[p];
            const std::uint64_t key = edge_key(u, v);
            if (u != v && valid(u, v) && !committed.contains(key) && batch.insert(key).second)
                continue;
            bad.push_back(p);
        }
        if (bad.empty()) return true;
        if (sweep >= max_sweeps) return false;
        for (std::size_t p : bad) {
            const std::size_t q = rng.next_below(pairs.size());
            std::swap(pairs[p].v, pairs[q].v);
        }
    }
}

std::vector<StubPair> pair_up(std::vector<NodeId>& stubs, Rng& rng) {
    if (stubs.size() % 2 != 0) throw GenerationError("LFR stub pool has odd size");
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.next_below(i)]);
    std::vector<StubPair> pairs;
    pairs.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        pairs.push_back({stubs[i], stubs[i + 1]});
    return pairs;
}

} // namespace

Graph gen_lfr(std::uint32_t n, double target_k, const LfrParams& params, Rng& rng) {
    GeneratorSpec check{Model::LFR, n, target_k, 0.1, params};
    check.validate();
    const auto n_comm = static_cast<std::uint32_t>(params.n_communities);
    if (n < n_comm) throw UsageError("gen_lfr needs n >= n_communities");

    // equal community sizes (t2 = 0), remainder spread one per community
    std::vector<std::uint32_t> comm_size(n_comm, n / n_comm);
    for (std::uint32_t c = 0; c < n % n_comm; ++c) ++comm_size[c];
    std::vector<std::uint32_t> community(n);
    std::vector<std::vector<NodeId>> members(n_comm);
    {
        NodeId next = 0;
        for (std::uint32_t c = 0; c < n_comm; ++c) {
            members[c].reserve(comm_size[c]);
            for (std::uint32_t i = 0; i < comm_size[c]; ++i, ++next) {
                community[next] = c;
                members[c].push_back(next);
            }
        }
    }
    const std::uint32_t min_size = *std::min_element(comm_size.begin(), comm_size.end());

    int max_k = params.max_k;
    if (max_k == 0)
        max_k = static_cast<int>(std::min<double>(30.0 * target_k, static_cast<double>(n) / 10.0));
    max_k = std::min<int>(max_k, static_cast<int>(min_size) - 1);
    if (static_cast<double>(max_k) < target_k)
        throw GenerationError("LFR max_k cap below target_k; too many communities for this n");

    const double x_min = solve_power_law_min(target_k, max_k, params.t1);
    const double b = static_cast<double>(max_k) + 1.0;

    // sample a degree sequence whose realized mean also lands near target
    std::vector<std::uint32_t> degree(n);
    bool mean_ok = false;
    for (int attempt = 0; attempt < 50 && !mean_ok; ++attempt) {
        std::uint64_t sum = 0;
        for (auto& k : degree) {
            const double x = power_icdf(rng.next_double(), x_min, b, params.t1);
            k = std::clamp<std::uint32_t>(static_cast<std::uint32_t>(x), 1,
                                          static_cast<std::uint32_t>(max_k));
            sum += k;
        }
        if (sum % 2 != 0) { // force an even stub total
            for (auto& k : degree) {
                if (k < static_cast<std::uint32_t>(max_k)) {
                    ++k;
                    ++sum;
                    break;
                }
            }
        }
        const double mean = static_cast<double>(sum) / n;
        mean_ok = std::abs(mean - target_k) <= 0.03 * target_k;
    }
    if (!mean_ok) throw GenerationError("LFR degree sequence mean did not reach target_k");

    const std::uint64_t total_degree = std::accumulate(degree.begin(), degree.end(), 0ULL);

    // external stub quotas by largest remainder, so the inter-community edge
    // fraction lands on mu instead of the floor bias of a per-node split
    std::vector<std::uint32_t> external(n, 0);
    if (params.mu > 0.0) {
        const auto target_ext =
            static_cast<std::uint64_t>(std::llround(params.mu * static_cast<double>(total_degree)));
        std::uint64_t assigned = 0;
        std::vector<std::pair<double, NodeId>> remainder;
        remainder.reserve(n);
        for (NodeId i = 0; i < n; ++i) {
            const double exact = params.mu * static_cast<double>(degree[i]);
            external[i] = static_cast<std::uint32_t>(exact);
            assigned += external[i];
            remainder.emplace_back(exact - std::floor(exact), i);
        }
        std::sort(remainder.begin(), remainder.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        for (const auto& [frac, i] : remainder) {
            if (assigned >= target_ext) break;
            if (external[i] < degree[i]) {
                ++external[i];
                ++assigned;
            }
        }
    }

    // per-community internal stub totals must be even before pairing
    for (std::uint32_t c = 0; c < n_comm; ++c) {
        std::uint64_t internal_sum = 0;
        for (NodeId i : members[c]) internal_sum += degree[i] - external[i];
        if (internal_sum % 2 == 0) continue;
        // an odd sum guarantees at least one node with an internal stub
        NodeId pick = members[c].front();
        bool found = false;
        for (NodeId i : members[c]) {
            if (degree[i] - external[i] >= 1 && (!found || degree[i] > degree[pick])) {
                pick = i;
                found = true;
            }
        }
        if (params.mu > 0.0)
            ++external[pick]; // move one stub across; keeps the global total even
        else
            --degree[pick]; // mu = 0 must stay free of inter-community stubs
    }

    std::unordered_set<std::uint64_t> edge_set;
    std::vector<Edge> edges;
    edges.reserve(total_degree / 2);
    const auto commit = [&](const std::vector<StubPair>& pairs) {
        for (const auto& [u, v] : pairs) {
            edge_set.insert(edge_key(u, v));
            edges.emplace_back(u, v);
        }
    };

    const auto always_valid = [](NodeId, NodeId) { return true; };
    for (std::uint32_t c = 0; c < n_comm; ++c) {
        std::vector<NodeId> stubs;
        for (NodeId i : members[c])
            for (std::uint32_t s = external[i]; s < degree[i]; ++s) stubs.push_back(i);
        auto pairs = pair_up(stubs, rng);
        if (!repair_pairs(pairs, edge_set, always_valid, rng, 100))
            throw GenerationError("LFR intra-community matching did not converge");
        commit(pairs);
    }

    {
        std::vector<NodeId> stubs;
        for (NodeId i = 0; i < n; ++i)
            for (std::uint32_t s = 0; s < external[i]; ++s) stubs.push_back(i);
        const auto cross_community = [&](NodeId u, NodeId v) {
            return community[u] != community[v];
        };
        auto pairs = pair_up(stubs, rng);
        if (!repair_pairs(pairs, edge_set, cross_community, rng, 100))
            throw GenerationError("LFR inter-community matching did not converge");
        commit(pairs);
    }

    if (!edges.empty()) {
        std::size_t inter = 0;
        for (const auto& [u, v] : edges)
            if (community[u] != community[v]) ++inter;
        const double mixing = static_cast<double>(inter) / static_cast<double>(edges.size());
        if (std::abs(mixing - params.mu) > 0.02)
            throw GenerationError("LFR realized mixing " + std::to_string(mixing) +
                                  " outside mu +- 0.02");
    }

    Graph g = Graph::from_edges(n, edges);
    g.set_communities(std::move(community));
    return g;
}

Graph generate(const GeneratorSpec& spec, Rng& rng) {
    spec.validate();
    switch (spec.model) {
        case Model::ER: {
            const auto m = static_cast<std::size_t>(
                std::llround(static_cast<double>(spec.n) * spec.target_k / 2.0));
            return gen_er(spec.n, m, rng);
        }
        case Model::BA: {
            const auto m = static_cast<std::uint32_t>(std::llround(spec.target_k / 2.0));
            return gen_ba(spec.n, m, rng);
        }
        case Model::WAX:
            return gen_waxman(spec.n, spec.target_k, spec.waxman_beta, rng);
        case Model::LFR:
            return gen_lfr(spec.n, spec.target_k, spec.lfr, rng);
    }
    throw UsageError("unknown model");
}

} // namespace netwalk
