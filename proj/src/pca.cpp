#include "netwalk/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netwalk/errors.hpp"

namespace netwalk {

namespace {

// Cyclic Jacobi diagonalization of a symmetric matrix. Rotates every
// off-diagonal (p, q) per sweep until all are below tol.
void jacobi_eigen(std::vector<std::vector<double>>& a, std::vector<std::vector<double>>& v,
                  double tol, int max_sweeps) {
    const std::size_t n = a.size();
    v.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    if (n < 2) return;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[p][q]));
        if (off <= tol) return;

        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p][q];
                if (std::abs(apq) <= tol) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                // smaller-angle root of t^2 + 2*theta*t - 1 = 0
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a[p][q]));
    if (off > tol) throw NumericError("Jacobi eigensolver did not converge");
}

} // namespace

PcaResult pca_fit(const std::vector<std::vector<double>>& rows) {
    if (rows.size() < 2) throw UsageError("PCA needs at least 2 rows");
    const std::size_t dim = rows.front().size();
    if (dim == 0) throw UsageError("PCA rows are empty");
    for (const auto& r : rows) {
        if (r.size() != dim) throw UsageError("PCA rows have mismatched lengths");
        for (double x : r)
            if (!std::isfinite(x)) throw UsageError("PCA input contains non-finite values");
    }

    PcaResult out;
    out.mean_vector.assign(dim, 0.0);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < dim; ++j) out.mean_vector[j] += r[j];
    for (double& m : out.mean_vector) m /= static_cast<double>(rows.size());

    std::vector<std::vector<double>> centered(rows.size(), std::vector<double>(dim));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) centered[i][j] = rows[i][j] - out.mean_vector[j];

    std::vector<std::vector<double>> cov(dim, std::vector<double>(dim, 0.0));
    const double divisor = static_cast<double>(rows.size()) - 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = j; k < dim; ++k) {
            double s = 0.0;
            for (const auto& r : centered) s += r[j] * r[k];
            cov[j][k] = cov[k][j] = s / divisor;
        }
    }

    std::vector<std::vector<double>> diag = cov;
    std::vector<std::vector<double>> vecs;
    jacobi_eigen(diag, vecs, 1e-12, 100);

    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return diag[a][a] > diag[b][b]; });

    out.eigenvalues.resize(dim);
    out.components.assign(dim, std::vector<double>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
        const std::size_t src = order[c];
        out.eigenvalues[c] = std::max(0.0, diag[src][src]);
        double loading_sum = 0.0;
        for (std::size_t j = 0; j < dim; ++j) loading_sum += vecs[j][src];
        const double sign = loading_sum < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < dim; ++j) out.components[c][j] = sign * vecs[j][src];
    }

    const double total = std::accumulate(out.eigenvalues.begin(), out.eigenvalues.end(), 0.0);
    out.explained_variance_ratio.assign(dim, 0.0);
    if (total > 0.0) {
        for (std::size_t c = 0; c < dim; ++c)
            out.explained_variance_ratio[c] = out.eigenvalues[c] / total;
    } else {
        out.degenerate = true;
    }

    out.projections.reserve(rows.size());
    for (const auto& r : rows) out.projections.push_back(project(out, r));
    return out;
}

std::array<double, 2> project(const PcaResult& result, std::span<const double> vec) {
    const std::size_t dim = result.mean_vector.size();
    if (vec.size() != dim) throw UsageError("projection vector length mismatch");
    std::array<double, 2> coords{0.0, 0.0};
    const std::size_t n_axes = std::min<std::size_t>(2, result.components.size());
    for (std::size_t c = 0; c < n_axes; ++c) {
        double dot = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
            dot += (vec[j] - result.mean_vector[j]) * result.components[c][j];
        coords[c] = dot;
    }
    return coords;
}

std::vector<std::pair<int, double>> axis_profile(const PcaResult& result, int axis, int window) {
    if (axis < 1 || static_cast<std::size_t>(axis) > result.components.size())
        throw UsageError("axis out of range: " + std::to_string(axis));
    const auto& comp = result.components[static_cast<std::size_t>(axis - 1)];
    std::vector<std::pair<int, double>> profile;
    profile.reserve(comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j)
        profile.emplace_back(static_cast<int>(j + 1) * window, comp[j]);
    return profile;
}

std::vector<double> normalize_curve(const std::vector<double>& curve) {
    if (curve.empty()) throw UsageError("cannot normalize an empty curve");
    const double peak = *std::max_element(curve.begin(), curve.end());
    if (!(peak > 0.0)) throw UsageError("cannot normalize a non-positive curve");
    std::vector<double> out(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) out[i] = curve[i] / peak;
    return out;
}

} // namespace netwalk
