#include "gaugelab/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "gaugelab/rng.hpp"

namespace gaugelab {

InteractionMatrix generate_interactions(const SyntheticSpec& spec) {
    if (spec.m == 0 || spec.n == 0 || spec.true_rank == 0)
        throw std::invalid_argument("generate_interactions: m, n, true_rank must be >= 1");
    if (spec.true_rank > std::min(spec.m, spec.n))
        throw std::invalid_argument("generate_interactions: true_rank exceeds min(m, n)");
    if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma))
        throw std::invalid_argument("generate_interactions: noise_sigma must be finite and >= 0");

    Rng rng(spec.seed);
    const std::size_t r = spec.true_rank;
    std::vector<double> u(spec.m * r), v(spec.n * r);
    for (double& x : u) x = rng.gaussian();
    for (double& x : v) x = rng.gaussian();

    std::vector<double> a(spec.m * spec.n);
    for (std::size_t i = 0; i < spec.m; ++i) {
        for (std::size_t j = 0; j < spec.n; ++j) {
            double p = 0.0;
            for (std::size_t t = 0; t < r; ++t) p += u[i * r + t] * v[j * r + t];
            a[i * spec.n + j] = p;
        }
    }
    if (spec.noise_sigma > 0.0) {
        for (double& x : a) x += spec.noise_sigma * rng.gaussian();
    }
    return InteractionMatrix(spec.m, spec.n, std::move(a));
}

EmbeddingMatrix generate_unit_cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n == 0 || d == 0)
        throw std::invalid_argument("generate_unit_cloud: n and d must be >= 1");
    Rng rng(seed);
    EmbeddingMatrix cloud(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = cloud.row(i);
        double nrm = 0.0;
        do {
            nrm = 0.0;
            for (double& x : row) {
                x = rng.gaussian();
                nrm += x * x;
            }
        } while (nrm == 0.0);
        nrm = std::sqrt(nrm);
        for (double& x : row) x /= nrm;
    }
    return cloud;
}

}  // namespace gaugelab
