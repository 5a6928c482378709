#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netwalk/model.hpp"
#include "netwalk/walks.hpp"

namespace netwalk {

struct CurveMeta {
    Model model = Model::ER;
    std::uint32_t n = 0;
    double target_k = 0.0;
    WalkKind dynamics = WalkKind::RW;
    int n_networks = 0;
    int n_walks_per_network = 0;
    std::uint64_t master_seed = 0;
};

/// Fraction of distinct nodes visited after each step; values[0] counts the
/// start node, so it equals 1/n_effective.
struct LearningCurve {
    std::vector<double> values;
};

LearningCurve learning_curve(const VisitSequence& seq, std::uint32_t n_effective);

struct EnsembleCurve {
    std::vector<double> mean;
    std::vector<double> std; // sample standard deviation, divisor n-1
    CurveMeta meta;
};

/// Pointwise mean and sample standard deviation over same-length curves.
EnsembleCurve ensemble(std::span<const LearningCurve> curves, const CurveMeta& meta);

struct FeatureVector {
    std::vector<double> features;
    CurveMeta meta;
};

/// Coverage gained per window of steps along the ensemble mean curve:
/// feature[j] = mean[(j+1)*window] - mean[j*window]. With 5000 steps and the
/// default window this is the 50-dimensional rate-curve sample.
std::vector<double> rate_features(const std::vector<double>& mean_curve, int window = 100);

} // namespace netwalk
