#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netwalk/coverage.hpp"
#include "netwalk/errors.hpp"
#include "netwalk/generators.hpp"
#include "netwalk/oracle.hpp"
#include "netwalk/rng.hpp"

using namespace netwalk;

namespace {

VisitSequence seq_of(std::vector<NodeId> nodes) {
    VisitSequence s;
    s.nodes = std::move(nodes);
    return s;
}

} // namespace

TEST_CASE("learning curve examples") {
    SUBCASE("a,b,a,c over 4 nodes") {
        const auto curve = learning_curve(seq_of({0, 1, 0, 2}), 4);
        CHECK(curve.values == std::vector<double>{0.25, 0.50, 0.50, 0.75});
    }
    SUBCASE("constant sequence stays at 1/N") {
        const auto curve = learning_curve(seq_of({7, 7, 7, 7, 7}), 10);
        for (double v : curve.values) CHECK(v == doctest::Approx(0.1));
        CHECK(curve.values.size() == 5);
    }
    SUBCASE("hamiltonian order reaches full coverage at index N-1") {
        std::vector<NodeId> order(12);
        std::iota(order.begin(), order.end(), 0);
        const auto curve = learning_curve(seq_of(order), 12);
        CHECK(curve.values[11] == doctest::Approx(1.0));
        CHECK(curve.values[10] < 1.0);
    }
    SUBCASE("out-of-range visit is a usage error") {
        CHECK_THROWS_AS(learning_curve(seq_of({0, 5}), 4), UsageError);
    }
}

TEST_CASE("learning curve is non-decreasing and bounded") {
    Rng rng(13);
    const Graph g = giant_component(gen_er(50, 120, rng)).graph;
    const auto seq = run_walk(g, {WalkKind::RW}, 0, 300, rng);
    const auto curve = learning_curve(seq, g.node_count());
    const double n = g.node_count();
    CHECK(curve.values.front() == doctest::Approx(1.0 / n));
    for (std::size_t t = 1; t < curve.values.size(); ++t) {
        CHECK(curve.values[t] >= curve.values[t - 1]);
        CHECK(curve.values[t] <= std::min(1.0, static_cast<double>(t + 1) / n) + 1e-15);
    }
}

TEST_CASE("learning curve is invariant under node relabeling") {
    Rng rng(31);
    const std::uint32_t n = 40;
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);

    std::vector<NodeId> visits;
    for (int t = 0; t < 200; ++t) visits.push_back(static_cast<NodeId>(rng.next_below(n)));
    std::vector<NodeId> relabeled;
    for (NodeId v : visits) relabeled.push_back(perm[v]);

    CHECK(learning_curve(seq_of(visits), n).values ==
          learning_curve(seq_of(relabeled), n).values);
}

TEST_CASE("ensemble mean and std") {
    SUBCASE("identical curves have zero std") {
        LearningCurve c;
        c.values = {0.1, 0.2, 0.5};
        const auto ens = ensemble(std::vector<LearningCurve>{c, c}, CurveMeta{});
        CHECK(ens.mean == c.values);
        for (double s : ens.std) CHECK(s == 0.0);
    }
    SUBCASE("two opposite curves at one step") {
        LearningCurve a, b;
        a.values = {0.0, 1.0};
        b.values = {0.0, 0.0};
        const auto ens = ensemble(std::vector<LearningCurve>{a, b}, CurveMeta{});
        CHECK(ens.mean[1] == doctest::Approx(0.5));
        CHECK(ens.std[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9)); // 0.7071...
    }
    SUBCASE("mismatched lengths rejected") {
        LearningCurve a, b;
        a.values = {0.0, 1.0};
        b.values = {0.0};
        CHECK_THROWS_AS(ensemble(std::vector<LearningCurve>{a, b}, CurveMeta{}), UsageError);
    }
    SUBCASE("fewer than two curves rejected") {
        LearningCurve a;
        a.values = {0.0};
        CHECK_THROWS_AS(ensemble(std::vector<LearningCurve>{a}, CurveMeta{}), UsageError);
    }
}

TEST_CASE("rate features") {
    SUBCASE("constant curve gives all-zero features") {
        const std::vector<double> curve(501, 0.4);
        for (double f : rate_features(curve)) CHECK(f == 0.0);
    }
    SUBCASE("linear curve gives constant features") {
        std::vector<double> curve(501);
        const double slope = 1e-3;
        for (std::size_t t = 0; t < curve.size(); ++t) curve[t] = slope * static_cast<double>(t);
        for (double f : rate_features(curve)) CHECK(f == doctest::Approx(0.1).epsilon(1e-9));
    }
    SUBCASE("5000-step curve yields exactly 50 features") {
        const std::vector<double> curve(5001, 0.0);
        CHECK(rate_features(curve).size() == 50);
    }
    SUBCASE("indivisible length rejected") {
        const std::vector<double> curve(500, 0.0);
        CHECK_THROWS_AS(rate_features(curve), UsageError);
    }
}

TEST_CASE("feature sum telescopes to the coverage gain") {
    Rng rng(71);
    const Graph g = giant_component(gen_er(300, 900, rng)).graph;
    const auto seq = run_walk(g, {WalkKind::RW}, 0, 2000, rng);
    const auto curve = learning_curve(seq, g.node_count());
    const auto features = rate_features(curve.values);
    const double sum = std::accumulate(features.begin(), features.end(), 0.0);
    CHECK(std::abs(sum - (curve.values.back() - curve.values.front())) < 1e-12);
    for (double f : features) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
    }
}

TEST_CASE("RW on complete graphs matches the coupon-collector expectation") {
    // on K_N the next node is uniform among the other N-1, so a fixed non-start
    // node is still unvisited after t steps with probability ((N-2)/(N-1))^t
    for (std::uint32_t n = 4; n <= 10; ++n) {
        std::vector<Edge> edges;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
        const Graph g = Graph::from_edges(n, edges);
        const auto dp = oracle_expected_coverage(g, WalkKind::RW, 0, 40);
        for (int t = 0; t <= 40; ++t) {
            const double stay = std::pow((n - 2.0) / (n - 1.0), t);
            const double expected = (1.0 + (n - 1.0) * (1.0 - stay)) / n;
            CHECK(std::abs(dp[static_cast<std::size_t>(t)] - expected) < 1e-12);
        }
    }
}

TEST_CASE("pipeline sanity: ER ensemble final coverage above one half") {
    // 250 RW realizations on 5 dense random graphs
    Rng rng(2024);
    std::vector<LearningCurve> curves;
    for (int net = 0; net < 5; ++net) {
        const Graph g = giant_component(gen_er(5000, 25000, rng)).graph;
        for (int w = 0; w < 50; ++w) {
            const auto start = static_cast<NodeId>(rng.next_below(g.node_count()));
            const auto seq = run_walk(g, {WalkKind::RW}, start, 5000, rng);
            curves.push_back(learning_curve(seq, g.node_count()));
        }
    }
    const auto ens = ensemble(curves, CurveMeta{});
    CHECK(ens.mean.back() > 0.5);
}
