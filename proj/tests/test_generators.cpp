#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netwalk/errors.hpp"
#include "netwalk/generators.hpp"
#include "netwalk/graph.hpp"
#include "netwalk/rng.hpp"

using namespace netwalk;

TEST_CASE("gen_er edge counts") {
    Rng rng(1);
    CHECK(gen_er(10, 0, rng).edge_count() == 0);
    const Graph k4 = gen_er(4, 6, rng);
    CHECK(k4.edge_count() == 6);
    for (NodeId i = 0; i < 4; ++i) CHECK(k4.degree(i) == 3);
    CHECK_THROWS_AS(gen_er(4, 7, rng), UsageError);

    const Graph big = gen_er(5000, 25000, rng);
    CHECK(big.average_degree() == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("gen_er degree variance is Poisson-like at n=5000") {
    Rng rng(2);
    const Graph g = gen_er(5000, 25000, rng);
    const double mean = g.average_degree();
    double ss = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const double d = static_cast<double>(g.degree(i)) - mean;
        ss += d * d;
    }
    const double variance = ss / (g.node_count() - 1.0);
    CHECK(variance == doctest::Approx(mean).epsilon(0.15));
}

TEST_CASE("gen_ba edge count and seed clique") {
    Rng rng(3);
    CHECK(gen_ba(5, 2, rng).edge_count() == 7); // C(3,2) + 2*2
    const Graph k4 = gen_ba(4, 3, rng);         // n = m+1: just the seed clique
    CHECK(k4.edge_count() == 6);
    for (NodeId i = 0; i < 4; ++i) CHECK(k4.degree(i) == 3);
    CHECK_THROWS_AS(gen_ba(4, 0, rng), UsageError);
    CHECK_THROWS_AS(gen_ba(4, 4, rng), UsageError);
}

TEST_CASE("gen_ba produces hubs and a power-law degree tail") {
    Rng rng(4);
    std::vector<std::uint32_t> degrees;
    std::uint32_t max_degree = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const Graph g = gen_ba(5000, 2, rng);
        for (NodeId i = 0; i < g.node_count(); ++i) {
            degrees.push_back(g.degree(i));
            max_degree = std::max(max_degree, g.degree(i));
        }
    }
    CHECK(max_degree > 100);

    // least-squares slope of the pooled CCDF on log-log axes; exponent-3
    // densities have CCDF slope -2
    const double total = static_cast<double>(degrees.size());
    std::sort(degrees.begin(), degrees.end());
    std::vector<double> xs, ys;
    for (std::uint32_t k = 4; k <= max_degree; k *= 2) {
        const auto it = std::lower_bound(degrees.begin(), degrees.end(), k);
        const double ccdf = static_cast<double>(degrees.end() - it) / total;
        if (ccdf < 1e-4) break;
        xs.push_back(std::log(static_cast<double>(k)));
        ys.push_back(std::log(ccdf));
    }
    REQUIRE(xs.size() >= 3);
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.25)); // -2 +- 0.5
}

TEST_CASE("waxman link probability formula") {
    CHECK(waxman_link_probability(0.5, 0.0, 0.1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(waxman_link_probability(1.0, 0.7, 1e18) == 1.0); // beta -> inf limit
    CHECK(waxman_link_probability(1.0, 0.2, 0.1) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("waxman calibration self-consistency") {
    SUBCASE("zero target collapses to the smallest bracket") {
        Rng rng(5);
        const auto cal = calibrate_waxman(50, 0.0, 0.1, rng);
        CHECK(cal.a > 0.0);
        CHECK(cal.a < 1e-15);
        CHECK(cal.expected_edges == 0.0);
    }
    SUBCASE("near-zero distances and full density give a = 1") {
        Rng rng(6);
        const auto cal = calibrate_waxman(20, 19.0, 1e9, rng);
        CHECK(cal.a == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("n=500 k=10 beta=0.1 lands within 0.5% of 2500 expected edges") {
        Rng rng(7);
        const auto cal = calibrate_waxman(500, 10.0, 0.1, rng);
        CHECK(std::abs(cal.expected_edges - 2500.0) <= 12.5);
    }
    SUBCASE("unreachable density reports a generation error") {
        Rng rng(8);
        CHECK_THROWS_AS(calibrate_waxman(500, 10.0, 1e-4, rng), GenerationError);
    }
}

TEST_CASE("gen_waxman realized degree, coordinates and the dense limit") {
    SUBCASE("beta -> inf with full density yields the complete graph") {
        Rng rng(9);
        const Graph g = gen_waxman(20, 19.0, 1e9, rng);
        CHECK(g.edge_count() == 190);
        CHECK(g.has_coords());
    }
    SUBCASE("ensemble average degree within 2% at n=500, k=4") {
        Rng rng(10);
        double sum_k = 0.0;
        for (int rep = 0; rep < 10; ++rep) sum_k += gen_waxman(500, 4.0, 0.1, rng).average_degree();
        const double avg = sum_k / 10.0;
        CHECK(avg >= 3.92);
        CHECK(avg <= 4.08);
    }
    SUBCASE("coordinates live in the unit square") {
        Rng rng(11);
        const Graph g = gen_waxman(100, 4.0, 0.1, rng);
        for (NodeId i = 0; i < g.node_count(); ++i) {
            const auto [x, y] = g.coord(i);
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
            CHECK(y >= 0.0);
            CHECK(y < 1.0);
        }
    }
}

namespace {

double measured_mixing(const Graph& g) {
    std::size_t inter = 0;
    for (const auto& [u, v] : g.edges())
        if (g.community(u) != g.community(v)) ++inter;
    return static_cast<double>(inter) / static_cast<double>(g.edge_count());
}

} // namespace

TEST_CASE("gen_lfr structure") {
    LfrParams params; // n_C=5, t1=3, t2=0, mu=0.2, auto max_k

    SUBCASE("equal community sizes at n=1000") {
        Rng rng(12);
        const Graph g = gen_lfr(1000, 6.0, params, rng);
        REQUIRE(g.has_communities());
        std::vector<int> sizes(5, 0);
        for (NodeId i = 0; i < g.node_count(); ++i) ++sizes[g.community(i)];
        for (int s : sizes) CHECK(s == 200);
    }
    SUBCASE("labels partition the nodes") {
        Rng rng(13);
        const Graph g = gen_lfr(503, 4.0, params, rng);
        CHECK(g.node_count() == 503);
        for (NodeId i = 0; i < g.node_count(); ++i) CHECK(g.community(i) < 5);
    }
    SUBCASE("mu = 0 leaves no inter-community edges") {
        LfrParams isolated = params;
        isolated.mu = 0.0;
        Rng rng(14);
        const Graph g = gen_lfr(500, 6.0, isolated, rng);
        CHECK(measured_mixing(g) == 0.0);
    }
    SUBCASE("measured mixing within [0.18, 0.22] at n=5000, k=6") {
        Rng rng(15);
        double total_inter = 0.0, total_edges = 0.0;
        for (int rep = 0; rep < 3; ++rep) {
            const Graph g = gen_lfr(5000, 6.0, params, rng);
            total_inter += measured_mixing(g) * static_cast<double>(g.edge_count());
            total_edges += static_cast<double>(g.edge_count());
        }
        const double mixing = total_inter / total_edges;
        CHECK(mixing >= 0.18);
        CHECK(mixing <= 0.22);
    }
    SUBCASE("t2 != 0 is rejected") {
        LfrParams bad = params;
        bad.t2 = 1.0;
        Rng rng(16);
        CHECK_THROWS_AS(gen_lfr(500, 6.0, bad, rng), UsageError);
    }
}

TEST_CASE("all generators hit the requested density within 5% at n=500") {
    const double target = 6.0;
    for (Model model : {Model::ER, Model::BA, Model::WAX, Model::LFR}) {
        GeneratorSpec spec;
        spec.model = model;
        spec.n = 500;
        spec.target_k = target;
        Rng rng(100 + static_cast<std::uint64_t>(model));
        double sum_k = 0.0;
        const int reps = 10;
        for (int rep = 0; rep < reps; ++rep) sum_k += generate(spec, rng).average_degree();
        const double avg = sum_k / reps;
        INFO("model ", to_string(model), " realized <k> = ", avg);
        CHECK(std::abs(avg - target) <= 0.05 * target);
    }
}

TEST_CASE("generator outputs are deterministic in the seed") {
    for (Model model : {Model::ER, Model::BA, Model::WAX, Model::LFR}) {
        GeneratorSpec spec;
        spec.model = model;
        spec.n = 300;
        spec.target_k = 4.0;
        Rng r1(77), r2(77);
        CHECK(generate(spec, r1).edges() == generate(spec, r2).edges());
    }
}

TEST_CASE("spec validation") {
    GeneratorSpec spec;
    spec.model = Model::ER;
    spec.n = 10;
    spec.target_k = 20.0;
    CHECK_THROWS_AS(spec.validate(), UsageError); // k >= n-1
    spec.target_k = 4.0;
    spec.model = Model::WAX;
    spec.waxman_beta = 0.0;
    CHECK_THROWS_AS(spec.validate(), UsageError);
}
