#include "netwalk/coverage.hpp"

#include <cmath>

#include "netwalk/errors.hpp"

namespace netwalk {

LearningCurve learning_curve(const VisitSequence& seq, std::uint32_t n_effective) {
    if (n_effective == 0) throw UsageError("n_effective must be positive");
    LearningCurve curve;
    curve.values.reserve(seq.nodes.size());
    std::vector<char> visited(n_effective, 0);
    std::uint32_t distinct = 0;
    const double scale = 1.0 / static_cast<double>(n_effective);
    for (NodeId v : seq.nodes) {
        if (v >= n_effective)
            throw UsageError("visit index " + std::to_string(v) + " >= n_effective");
        if (!visited[v]) {
            visited[v] = 1;
            ++distinct;
        }
        curve.values.push_back(static_cast<double>(distinct) * scale);
    }
    return curve;
}

EnsembleCurve ensemble(std::span<const LearningCurve> curves, const CurveMeta& meta) {
    if (curves.size() < 2) throw UsageError("ensemble needs at least 2 curves");
    const std::size_t len = curves.front().values.size();
    for (const auto& c : curves)
        if (c.values.size() != len) throw UsageError("ensemble curves have mismatched lengths");

    EnsembleCurve out;
    out.meta = meta;
    out.mean.assign(len, 0.0);
    out.std.assign(len, 0.0);
    const double r = static_cast<double>(curves.size());
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        for (const auto& c : curves) sum += c.values[t];
        const double mean = sum / r;
        double ss = 0.0;
        for (const auto& c : curves) {
            const double d = c.values[t] - mean;
            ss += d * d;
        }
        out.mean[t] = mean;
        out.std[t] = std::sqrt(ss / (r - 1.0));
    }
    return out;
}

std::vector<double> rate_features(const std::vector<double>& mean_curve, int window) {
    if (window <= 0) throw UsageError("window must be positive");
    if (mean_curve.empty() || (mean_curve.size() - 1) % static_cast<std::size_t>(window) != 0)
        throw UsageError("curve length - 1 must be divisible by the window");
    const std::size_t count = (mean_curve.size() - 1) / static_cast<std::size_t>(window);
    std::vector<double> features(count);
    for (std::size_t j = 0; j < count; ++j)
        features[j] = mean_curve[(j + 1) * window] - mean_curve[j * window];
    return features;
}

} // namespace netwalk
