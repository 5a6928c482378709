#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "netwalk/graph.hpp"
#include "netwalk/model.hpp"
#include "netwalk/rng.hpp"

namespace netwalk {

struct LfrParams {
    int n_communities = 5;
    double t1 = 3.0;  // degree-distribution exponent
    double t2 = 0.0;  // community-size exponent; 0 means equal sizes
    double mu = 0.20; // fraction of inter-community edges
    int max_k = 0;    // 0 selects min(30 * target_k, n / 10)
};

struct GeneratorSpec {
    Model model = Model::ER;
    std::uint32_t n = 0;
    double target_k = 0.0;
    double waxman_beta = 0.1;
    LfrParams lfr;

    void validate() const; // throws UsageError
};

/// G(n, m): exactly m edges drawn uniformly without replacement.
Graph gen_er(std::uint32_t n, std::size_t m_edges, Rng& rng);

/// Preferential attachment from a clique seed on m_attach+1 nodes; every later
/// node attaches to m_attach distinct nodes with probability proportional to
/// current degree.
Graph gen_ba(std::uint32_t n, std::uint32_t m_attach, Rng& rng);

struct WaxmanCalibration {
    double a = 0.0;
    double expected_edges = 0.0; // sum of min(1, a*exp(-d/beta)) at the returned a
};

/// Linking rule of the geographic model; probability decays exponentially with
/// distance.
inline double waxman_link_probability(double a, double d, double beta) {
    return std::min(1.0, a * std::exp(-d / beta));
}

/// Bisection for the normalization factor a so that the expected edge count
/// over a freshly sampled coordinate set matches n*target_k/2 within 0.5%.
WaxmanCalibration calibrate_waxman(std::uint32_t n, double target_k, double beta, Rng& rng);

/// Geographic model: nodes uniform in the unit square, pair (i, j) linked with
/// probability min(1, a*exp(-d_ij/beta)), a calibrated on the sampled
/// coordinates. Coordinates are attached to the returned graph.
Graph gen_waxman(std::uint32_t n, double target_k, double beta, Rng& rng);

/// Community-structured benchmark graph: power-law degrees (exponent t1),
/// equal-size communities (t2 = 0), stubs split so that the inter-community
/// edge fraction lands within mu +- 0.02, configuration-model matching with
/// rewiring of self-loops, duplicates and intra-community external pairs.
/// Community labels are attached to the returned graph.
Graph gen_lfr(std::uint32_t n, double target_k, const LfrParams& params, Rng& rng);

/// Dispatch on spec.model. The output is the raw generated graph; callers that
/// need a connected node universe take its giant component.
Graph generate(const GeneratorSpec& spec, Rng& rng);

} // namespace netwalk
