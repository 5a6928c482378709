#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace netwalk {

struct PcaResult {
    std::vector<double> mean_vector;
    std::vector<std::vector<double>> components; // orthonormal rows, descending eigenvalue
    std::vector<double> eigenvalues;
    std::vector<double> explained_variance_ratio;
    std::vector<std::array<double, 2>> projections; // fitted rows onto the first two components
    bool degenerate = false;                        // all-zero variance input
};

/// PCA of the row matrix: columns are centered (never variance-scaled), the
/// sample covariance (divisor rows-1) is diagonalized with cyclic Jacobi
/// rotations, and each component is sign-fixed so its loading sum is
/// non-negative. Zero-variance input is reported via `degenerate` rather than
/// rejected.
PcaResult pca_fit(const std::vector<std::vector<double>>& rows);

/// Coordinates of a vector on the first two components, after centering.
std::array<double, 2> project(const PcaResult& result, std::span<const double> vec);

/// Loadings of component `axis` (1 or 2) mapped to their epochs: feature j sits
/// at epoch (j+1)*window.
std::vector<std::pair<int, double>> axis_profile(const PcaResult& result, int axis,
                                                 int window = 100);

/// Curve scaled by its maximum value; the result peaks at 1.
std::vector<double> normalize_curve(const std::vector<double>& curve);

} // namespace netwalk
