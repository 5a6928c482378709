#include "netwalk/oracle.hpp"

#include <bit>
#include <cmath>

#include "netwalk/errors.hpp"

namespace netwalk {

std::vector<double> oracle_expected_coverage(const Graph& g, WalkKind kind, NodeId start,
                                             int n_steps) {
    const NodeId n = g.node_count();
    if (n == 0 || n > 12) throw UsageError("oracle supports 1 <= N <= 12");
    if (n_steps < 0 || n_steps > 60) throw UsageError("oracle supports at most 60 steps");
    if (kind == WalkKind::TSAW) throw UsageError("oracle handles memoryless dynamics only");
    if (start >= n) throw UsageError("start node out of range");

    // static transition rows, written out independently of the walks engine
    std::vector<std::vector<double>> trans(n);
    for (NodeId u = 0; u < n; ++u) {
        const auto nbrs = g.neighbors(u);
        trans[u].resize(nbrs.size());
        double total = 0.0;
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
            double w = 1.0;
            if (kind == WalkKind::RWD) w = static_cast<double>(g.degree(nbrs[j]));
            if (kind == WalkKind::RWID) w = 1.0 / static_cast<double>(g.degree(nbrs[j]));
            trans[u][j] = w;
            total += w;
        }
        for (double& p : trans[u]) p /= total;
    }

    const std::size_t n_masks = std::size_t{1} << n;
    std::vector<double> prob(n_masks * n, 0.0), next(n_masks * n);
    prob[(std::size_t{1} << start) * n + start] = 1.0;

    std::vector<double> coverage;
    coverage.reserve(n_steps + 1);
    const auto expected = [&](const std::vector<double>& dist) {
        double e = 0.0, total = 0.0;
        for (std::size_t mask = 1; mask < n_masks; ++mask) {
            const double bits = static_cast<double>(std::popcount(mask));
            for (NodeId u = 0; u < n; ++u) {
                const double p = dist[mask * n + u];
                if (p == 0.0) continue;
                e += p * bits;
                total += p;
            }
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw NumericError("oracle probability mass drifted: " + std::to_string(total));
        return e / static_cast<double>(n);
    };

    coverage.push_back(expected(prob));
    for (int t = 0; t < n_steps; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t mask = 1; mask < n_masks; ++mask) {
            for (NodeId u = 0; u < n; ++u) {
                const double p = prob[mask * n + u];
                if (p == 0.0) continue;
                if (g.degree(u) == 0)
                    throw NumericError("oracle hit a dead end at node " + std::to_string(u));
                const auto nbrs = g.neighbors(u);
                for (std::size_t j = 0; j < nbrs.size(); ++j) {
                    const NodeId v = nbrs[j];
                    next[(mask | (std::size_t{1} << v)) * n + v] += p * trans[u][j];
                }
            }
        }
        prob.swap(next);
        coverage.push_back(expected(prob));
    }
    return coverage;
}

} // namespace netwalk
