#include <doctest.h>

#include <cmath>

#include "gaugelab/datagen.hpp"
#include "gaugelab/geometry.hpp"

using namespace gaugelab;

namespace {

// Largest two singular values via power iteration with deflation; the
// independent oracle for the numerical-rank checks.
std::pair<double, double> top_two_singular_values(const InteractionMatrix& a) {
    const std::size_t m = a.m(), n = a.n();
    auto multiply_ata = [&](const std::vector<double>& x) {
        std::vector<double> ax(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) ax[i] += a.at(i, j) * x[j];
        std::vector<double> out(n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) out[j] += a.at(i, j) * ax[i];
        return out;
    };
    auto power = [&](const std::vector<double>* deflate) {
        std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
        double sigma_sq = 0.0;
        for (int iter = 0; iter < 3000; ++iter) {
            if (deflate) {
                double proj = 0.0;
                for (std::size_t j = 0; j < n; ++j) proj += v[j] * (*deflate)[j];
                for (std::size_t j = 0; j < n; ++j) v[j] -= proj * (*deflate)[j];
            }
            std::vector<double> w = multiply_ata(v);
            double nrm = 0.0;
            for (double x : w) nrm += x * x;
            nrm = std::sqrt(nrm);
            if (nrm == 0.0) return std::make_pair(0.0, v);
            for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / nrm;
            sigma_sq = nrm;
        }
        return std::make_pair(sigma_sq, v);
    };
    auto [s1_sq, v1] = power(nullptr);
    const double s1 = std::sqrt(s1_sq);

    // Power iteration on the deflated matrix bottoms out near sqrt(eps)
    // relative, so bound s2 from above by the Frobenius norm of the residual
    // after removing the best rank-1 fit instead: s2 <= ||A - s1 u1 v1^T||_F.
    std::vector<double> u1(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) u1[i] += a.at(i, j) * v1[j];
    if (s1 > 0.0)
        for (double& x : u1) x /= s1;
    double resid_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double r = a.at(i, j) - s1 * u1[i] * v1[j];
            resid_sq += r * r;
        }
    return {s1, std::sqrt(resid_sq)};
}

}  // namespace

TEST_CASE("noiseless rank-1 spec produces a numerically rank-1 matrix") {
    const InteractionMatrix a = generate_interactions({6, 8, 1, 0.0, 21});
    const auto [s1, s2] = top_two_singular_values(a);
    CHECK(s1 > 0.0);
    CHECK(s2 < 1e-10 * s1);
}

TEST_CASE("1x1 spec is a single product of two gaussians") {
    const InteractionMatrix a = generate_interactions({1, 1, 1, 0.0, 3});
    CHECK(a.m() == 1);
    CHECK(a.n() == 1);
    CHECK(std::isfinite(a.at(0, 0)));
    CHECK(a.at(0, 0) != 0.0);
}

TEST_CASE("generators are deterministic per seed") {
    const InteractionMatrix a1 = generate_interactions({5, 7, 2, 0.3, 99});
    const InteractionMatrix a2 = generate_interactions({5, 7, 2, 0.3, 99});
    CHECK(a1.entries() == a2.entries());
    const InteractionMatrix a3 = generate_interactions({5, 7, 2, 0.3, 100});
    CHECK(a1.entries() != a3.entries());

    const EmbeddingMatrix c1 = generate_unit_cloud(10, 4, 5);
    const EmbeddingMatrix c2 = generate_unit_cloud(10, 4, 5);
    CHECK(c1.data() == c2.data());
}

TEST_CASE("invalid synthetic specs are rejected") {
    CHECK_THROWS_AS(generate_interactions({4, 4, 5, 0.0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate_interactions({0, 4, 1, 0.0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate_interactions({4, 4, 1, -1.0, 0}), std::invalid_argument);
}

TEST_CASE("unit cloud rows are strictly unit") {
    const EmbeddingMatrix cloud = generate_unit_cloud(200, 16, 8);
    for (std::size_t i = 0; i < cloud.rows(); ++i)
        CHECK_NOTHROW(UnitVector(cloud.row_vector(i)));

    const EmbeddingMatrix tiny = generate_unit_cloud(1, 1, 2);
    CHECK(std::abs(std::abs(tiny.row(0)[0]) - 1.0) <= 1e-15);
}

TEST_CASE("unit cloud is roughly centered") {
    const EmbeddingMatrix cloud = generate_unit_cloud(10000, 2, 4);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < cloud.rows(); ++i) {
        sx += cloud.row(i)[0];
        sy += cloud.row(i)[1];
    }
    sx /= 10000.0;
    sy /= 10000.0;
    CHECK(std::sqrt(sx * sx + sy * sy) < 0.05);
}
