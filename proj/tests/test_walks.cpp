#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "netwalk/errors.hpp"
#include "netwalk/generators.hpp"
#include "netwalk/graph.hpp"
#include "netwalk/walks.hpp"

using namespace netwalk;

namespace {

// node 0 with pendant chains sized so its neighbors have prescribed degrees
Graph hub_with_neighbor_degrees(const std::vector<int>& degrees) {
    std::vector<Edge> edges;
    NodeId next = 1 + static_cast<NodeId>(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const auto nbr = static_cast<NodeId>(1 + i);
        edges.push_back({0, nbr});
        for (int extra = 1; extra < degrees[i]; ++extra) edges.push_back({nbr, next++});
    }
    return Graph::from_edges(next, edges);
}

double checked_sum(const std::vector<double>& probs) {
    double s = 0.0;
    for (double p : probs) {
        CHECK(p >= 0.0);
        s += p;
    }
    return s;
}

} // namespace

TEST_CASE("RW distribution is uniform") {
    const Graph g = hub_with_neighbor_degrees({1, 1, 1});
    const auto state = WalkState::start_at(g, 0, {WalkKind::RW});
    const auto probs = transition_distribution(g, state, {WalkKind::RW});
    REQUIRE(probs.size() == 3);
    for (double p : probs) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(checked_sum(probs) - 1.0) < 1e-12);
}

TEST_CASE("RWD distribution proportional to neighbor degrees (2,4,6)") {
    const Graph g = hub_with_neighbor_degrees({2, 4, 6});
    REQUIRE(g.degree(1) == 2);
    REQUIRE(g.degree(2) == 4);
    REQUIRE(g.degree(3) == 6);
    const auto state = WalkState::start_at(g, 0, {WalkKind::RWD});
    const auto probs = transition_distribution(g, state, {WalkKind::RWD});
    REQUIRE(probs.size() == 3);
    CHECK(probs[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(probs[2] == doctest::Approx(1.0 / 2.0).epsilon(1e-12));
}

TEST_CASE("RWID distribution proportional to inverse degrees (2,4)") {
    const Graph g = hub_with_neighbor_degrees({2, 4});
    const auto state = WalkState::start_at(g, 0, {WalkKind::RWID});
    const auto probs = transition_distribution(g, state, {WalkKind::RWID});
    REQUIRE(probs.size() == 2);
    CHECK(probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("TSAW with lambda=ln2 and edge visits (0,1) gives (2/3, 1/3)") {
    // path 1 - 0 - 2; arriving from 2 leaves edge (0,2) visited once
    const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {0, 2}});
    const WalkDynamics dyn{WalkKind::TSAW, std::numbers::ln2};
    auto state = WalkState::start_at(g, 2, dyn);
    Rng rng(1);
    step(g, state, dyn, rng); // forced move to 0
    REQUIRE(state.current() == 0);
    REQUIRE(state.edge_visits(g, 0, 2) == 1);
    REQUIRE(state.edge_visits(g, 0, 1) == 0);
    const auto probs = transition_distribution(g, state, dyn);
    REQUIRE(probs.size() == 2);
    CHECK(std::abs(probs[0] - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(probs[1] - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("distributions normalize to 1 within 1e-12 on random graphs") {
    Rng rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        const Graph g = giant_component(gen_er(30, 60, rng)).graph;
        for (WalkKind kind : {WalkKind::RW, WalkKind::RWD, WalkKind::RWID, WalkKind::TSAW}) {
            const WalkDynamics dyn{kind, std::numbers::ln2};
            auto state = WalkState::start_at(g, static_cast<NodeId>(rng.next_below(g.node_count())),
                                             dyn);
            for (int s = 0; s < 10; ++s) {
                const auto probs = transition_distribution(g, state, dyn);
                CHECK(std::abs(checked_sum(probs) - 1.0) < 1e-12);
                step(g, state, dyn, rng);
            }
        }
    }
}

TEST_CASE("on regular graphs RW, RWD and RWID coincide exactly") {
    // C6 ring, K4 and K5 cover degrees 2, 3 and 4
    const Graph ring =
        Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    const Graph k4 =
        Graph::from_edges(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    std::vector<Edge> k5_edges;
    for (NodeId u = 0; u < 5; ++u)
        for (NodeId v = u + 1; v < 5; ++v) k5_edges.push_back({u, v});
    const Graph k5 = Graph::from_edges(5, k5_edges);

    for (const Graph* g : {&ring, &k4, &k5}) {
        for (NodeId u = 0; u < g->node_count(); ++u) {
            const auto s_rw = WalkState::start_at(*g, u, {WalkKind::RW});
            const auto p_rw = transition_distribution(*g, s_rw, {WalkKind::RW});
            const auto p_rwd = transition_distribution(*g, s_rw, {WalkKind::RWD});
            const auto p_rwid = transition_distribution(*g, s_rw, {WalkKind::RWID});
            CHECK(p_rw == p_rwd);
            CHECK(p_rw == p_rwid);
        }
    }
}

TEST_CASE("TSAW at vanishing lambda matches the uniform walk") {
    Rng rng(5);
    const Graph g = giant_component(gen_er(40, 100, rng)).graph;
    const WalkDynamics dyn{WalkKind::TSAW, 1e-12};
    auto state = WalkState::start_at(g, 0, dyn);
    for (int s = 0; s < 200; ++s) step(g, state, dyn, rng);
    const auto probs = transition_distribution(g, state, dyn);
    const double uniform = 1.0 / static_cast<double>(probs.size());
    for (double p : probs) CHECK(std::abs(p - uniform) < 1e-9);
}

TEST_CASE("TSAW edge counters sum to the step count") {
    const Graph k3 = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    const WalkDynamics dyn{WalkKind::TSAW, std::numbers::ln2};
    Rng rng(17);
    auto state = WalkState::start_at(k3, 0, dyn);
    for (int s = 1; s <= 50; ++s) {
        step(k3, state, dyn, rng);
        CHECK(state.total_edge_visits() == static_cast<std::uint64_t>(s));
        CHECK(state.step_count() == static_cast<std::uint64_t>(s));
    }
}

TEST_CASE("TSAW on a triangle: 3 steps leave counters matching traversals") {
    const Graph k3 = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    const WalkDynamics dyn{WalkKind::TSAW, std::numbers::ln2};
    Rng rng(3);
    auto state = WalkState::start_at(k3, 0, dyn);
    NodeId prev = 0;
    std::map<std::pair<NodeId, NodeId>, std::uint32_t> traversed;
    for (int s = 0; s < 3; ++s) {
        step(k3, state, dyn, rng);
        const NodeId cur = state.current();
        ++traversed[{std::min(prev, cur), std::max(prev, cur)}];
        prev = cur;
    }
    std::uint64_t total = 0;
    for (const auto& [edge, count] : traversed) {
        CHECK(state.edge_visits(k3, edge.first, edge.second) == count);
        total += count;
    }
    CHECK(total == 3);
}

TEST_CASE("single-neighbor nodes force the move") {
    const Graph path = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
    Rng rng(1);
    auto state = WalkState::start_at(path, 0, {WalkKind::RW});
    step(path, state, {WalkKind::RW}, rng);
    CHECK(state.current() == 1);
}

TEST_CASE("dead ends raise an error") {
    const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1}});
    Rng rng(1);
    auto state = WalkState::start_at(g, 2, {WalkKind::RW});
    CHECK_THROWS_AS(step(g, state, {WalkKind::RW}, rng), NumericError);
    CHECK_THROWS_AS(run_walk(g, {WalkKind::RW}, 2, 5, rng), NumericError);
}

TEST_CASE("RW on K3 picks neighbors uniformly over many steps") {
    const Graph k3 = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    Rng rng(29);
    const int n_steps = 100000;
    const auto seq = run_walk(k3, {WalkKind::RW}, 0, n_steps, rng);
    // each step chooses between 2 neighbors; count picks of the smaller one
    int low_picks = 0;
    for (int s = 0; s < n_steps; ++s) {
        const auto nbrs = k3.neighbors(seq.nodes[s]);
        if (seq.nodes[s + 1] == nbrs[0]) ++low_picks;
    }
    const double freq = static_cast<double>(low_picks) / n_steps;
    const double se = std::sqrt(0.25 / n_steps);
    CHECK(std::abs(freq - 0.5) <= 3.0 * se);
}

TEST_CASE("run_walk basics") {
    const Graph path = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
    Rng rng(1);
    SUBCASE("zero steps returns just the start") {
        const auto seq = run_walk(path, {WalkKind::RW}, 0, 0, rng);
        CHECK(seq.nodes == std::vector<NodeId>{0});
    }
    SUBCASE("forced alternation on a 2-path, any dynamics") {
        for (WalkKind kind : {WalkKind::RW, WalkKind::RWD, WalkKind::RWID, WalkKind::TSAW}) {
            Rng r(5);
            const auto seq = run_walk(path, {kind, std::numbers::ln2}, 0, 4, r);
            CHECK(seq.nodes == std::vector<NodeId>{0, 1, 0, 1, 0});
        }
    }
}

TEST_CASE("walks are reproducible and consistent across sampling paths") {
    Rng gen_rng(41);
    const Graph g = giant_component(gen_er(80, 240, gen_rng)).graph;
    for (WalkKind kind : {WalkKind::RW, WalkKind::RWD, WalkKind::RWID, WalkKind::TSAW}) {
        const WalkDynamics dyn{kind, std::numbers::ln2};

        Rng r1(123), r2(123);
        const auto a = run_walk(g, dyn, 7, 500, r1);
        const auto b = run_walk(g, dyn, 7, 500, r2);
        CHECK(a.nodes == b.nodes);

        for (std::size_t t = 0; t + 1 < a.nodes.size(); ++t) {
            const auto nbrs = g.neighbors(a.nodes[t]);
            REQUIRE(std::find(nbrs.begin(), nbrs.end(), a.nodes[t + 1]) != nbrs.end());
        }

        // the step-by-step engine consumes the stream identically
        Rng r3(123);
        auto state = WalkState::start_at(g, 7, dyn);
        for (int s = 0; s < 500; ++s) {
            step(g, state, dyn, r3);
            REQUIRE(state.current() == a.nodes[static_cast<std::size_t>(s) + 1]);
        }

        // a prebuilt table must not change the sequence
        if (kind == WalkKind::RWD || kind == WalkKind::RWID) {
            const auto table = TransitionTable::build(g, kind);
            Rng r4(123);
            const auto c = run_walk(g, dyn, 7, 500, r4, &table);
            CHECK(c.nodes == a.nodes);
        }
    }
}

TEST_CASE("visit sequence export is one index per line") {
    VisitSequence seq;
    seq.nodes = {3, 1, 2};
    CHECK(format_visit_sequence(seq) == "3\n1\n2\n");
}
