#include <doctest.h>

#include <cmath>
#include <numeric>

#include "netwalk/errors.hpp"
#include "netwalk/pca.hpp"
#include "netwalk/rng.hpp"

using namespace netwalk;

namespace {

std::vector<std::vector<double>> random_rows(std::size_t rows, std::size_t cols,
                                             std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
    for (auto& r : out)
        for (auto& x : r) x = rng.next_double() - 0.5;
    return out;
}

std::vector<std::vector<double>> covariance_of(const std::vector<std::vector<double>>& rows) {
    const std::size_t dim = rows.front().size();
    std::vector<double> mean(dim, 0.0);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < dim; ++j) mean[j] += r[j];
    for (auto& m : mean) m /= static_cast<double>(rows.size());
    std::vector<std::vector<double>> cov(dim, std::vector<double>(dim, 0.0));
    for (const auto& r : rows)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k)
                cov[j][k] += (r[j] - mean[j]) * (r[k] - mean[k]);
    for (auto& row : cov)
        for (auto& x : row) x /= static_cast<double>(rows.size()) - 1.0;
    return cov;
}

} // namespace

TEST_CASE("degenerate input is flagged, not rejected") {
    const std::vector<std::vector<double>> rows(4, std::vector<double>{1.0, 2.0, 3.0});
    const auto fit = pca_fit(rows);
    CHECK(fit.degenerate);
    for (double r : fit.explained_variance_ratio) CHECK(r == 0.0);
    for (double e : fit.eigenvalues) CHECK(e == 0.0);
}

TEST_CASE("points on a line concentrate all variance in one component") {
    std::vector<std::vector<double>> rows;
    for (double x : {1.0, 2.0, 3.0, 4.0, 5.0}) rows.push_back({x, 2.0 * x});
    const auto fit = pca_fit(rows);
    CHECK(std::abs(fit.explained_variance_ratio[0] - 1.0) <= 1e-9);
    CHECK(std::abs(fit.explained_variance_ratio[1]) <= 1e-9);
}

TEST_CASE("components are orthonormal") {
    const auto rows = random_rows(12, 8, 42);
    const auto fit = pca_fit(rows);
    for (std::size_t a = 0; a < fit.components.size(); ++a) {
        for (std::size_t b = a; b < fit.components.size(); ++b) {
            double dot = 0.0;
            for (std::size_t j = 0; j < 8; ++j) dot += fit.components[a][j] * fit.components[b][j];
            if (a == b)
                CHECK(std::abs(dot - 1.0) <= 1e-9);
            else
                CHECK(std::abs(dot) <= 1e-9);
        }
    }
}

TEST_CASE("eigenvalues conserve total variance and decrease") {
    const auto rows = random_rows(20, 10, 7);
    const auto fit = pca_fit(rows);
    const auto cov = covariance_of(rows);
    double trace = 0.0;
    for (std::size_t j = 0; j < cov.size(); ++j) trace += cov[j][j];
    const double total = std::accumulate(fit.eigenvalues.begin(), fit.eigenvalues.end(), 0.0);
    CHECK(std::abs(total - trace) <= 1e-9 * trace);
    for (std::size_t c = 1; c < fit.eigenvalues.size(); ++c)
        CHECK(fit.eigenvalues[c] <= fit.eigenvalues[c - 1] + 1e-15);
    double cumulative = 0.0;
    for (double r : fit.explained_variance_ratio) {
        CHECK(r >= 0.0);
        CHECK(r <= 1.0 + 1e-12);
        cumulative += r;
    }
    CHECK(cumulative == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("top eigenvalue agrees with a power-iteration oracle") {
    const auto rows = random_rows(25, 12, 99);
    const auto fit = pca_fit(rows);
    const auto cov = covariance_of(rows);
    const std::size_t dim = cov.size();

    std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    double eigen = 0.0;
    for (int iter = 0; iter < 5000; ++iter) {
        std::vector<double> w(dim, 0.0);
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) w[j] += cov[j][k] * v[k];
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        for (std::size_t j = 0; j < dim; ++j) v[j] = w[j] / norm;
        eigen = norm;
    }
    CHECK(std::abs(fit.eigenvalues[0] - eigen) <= 1e-6 * eigen);
}

TEST_CASE("projection basics") {
    const auto rows = random_rows(10, 6, 3);
    const auto fit = pca_fit(rows);

    SUBCASE("the mean projects to the origin") {
        const auto p = project(fit, fit.mean_vector);
        CHECK(std::abs(p[0]) <= 1e-12);
        CHECK(std::abs(p[1]) <= 1e-12);
    }
    SUBCASE("mean plus first component projects to (1, 0)") {
        std::vector<double> v(6);
        for (std::size_t j = 0; j < 6; ++j) v[j] = fit.mean_vector[j] + fit.components[0][j];
        const auto p = project(fit, v);
        CHECK(std::abs(p[0] - 1.0) <= 1e-9);
        CHECK(std::abs(p[1]) <= 1e-9);
    }
    SUBCASE("stored projections match re-projection exactly") {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto p = project(fit, rows[i]);
            CHECK(p[0] == fit.projections[i][0]);
            CHECK(p[1] == fit.projections[i][1]);
        }
    }
    SUBCASE("length mismatch rejected") {
        const std::vector<double> bad(5, 0.0);
        CHECK_THROWS_AS(project(fit, bad), UsageError);
    }
}

TEST_CASE("full-rank reconstruction recovers each row") {
    const auto rows = random_rows(9, 7, 55);
    const auto fit = pca_fit(rows);
    for (const auto& row : rows) {
        std::vector<double> rebuilt = fit.mean_vector;
        for (const auto& comp : fit.components) {
            double coord = 0.0;
            for (std::size_t j = 0; j < row.size(); ++j)
                coord += (row[j] - fit.mean_vector[j]) * comp[j];
            for (std::size_t j = 0; j < row.size(); ++j) rebuilt[j] += coord * comp[j];
        }
        for (std::size_t j = 0; j < row.size(); ++j) CHECK(std::abs(rebuilt[j] - row[j]) <= 1e-8);
    }
}

TEST_CASE("sign convention keeps loading sums non-negative") {
    const auto fit = pca_fit(random_rows(15, 9, 123));
    for (const auto& comp : fit.components) {
        const double sum = std::accumulate(comp.begin(), comp.end(), 0.0);
        CHECK(sum >= -1e-12);
    }
}

TEST_CASE("axis profile maps features to epochs") {
    const auto fit = pca_fit(random_rows(8, 5, 9));
    const auto profile = axis_profile(fit, 1);
    REQUIRE(profile.size() == 5);
    CHECK(profile[0].first == 100);
    CHECK(profile[4].first == 500);
    double norm = 0.0;
    for (const auto& [epoch, loading] : profile) norm += loading * loading;
    CHECK(std::abs(std::sqrt(norm) - 1.0) <= 1e-9);
    CHECK_THROWS_AS(axis_profile(fit, 0), UsageError);
    CHECK_THROWS_AS(axis_profile(fit, 6), UsageError);
}

TEST_CASE("normalize_curve") {
    CHECK(normalize_curve({0.5, 0.5, 0.5}) == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(normalize_curve({0.0, 0.5}) == std::vector<double>{0.0, 1.0});
    const std::vector<double> c{0.2, 0.6, 0.3};
    CHECK(normalize_curve(normalize_curve(c)) == normalize_curve(c)); // idempotent
    CHECK_THROWS_AS(normalize_curve({0.0, 0.0}), UsageError);
    CHECK_THROWS_AS(normalize_curve({}), UsageError);
}

TEST_CASE("pca_fit input validation") {
    CHECK_THROWS_AS(pca_fit({{1.0, 2.0}}), UsageError); // one row
    CHECK_THROWS_AS(pca_fit({{1.0, 2.0}, {1.0}}), UsageError);
    const double nan = std::nan("");
    CHECK_THROWS_AS(pca_fit({{1.0, nan}, {0.0, 1.0}}), UsageError);
}
