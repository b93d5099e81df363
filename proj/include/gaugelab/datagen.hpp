#pragma once

// Seeded synthetic fixtures: low-rank interaction matrices and uniform
// clouds on the unit sphere. Deterministic per seed (see rng.hpp).

#include <cstdint>

#include "gaugelab/factorization.hpp"
#include "gaugelab/gauge.hpp"

namespace gaugelab {

struct SyntheticSpec {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t true_rank = 0;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

// A = U V^T + sigma * E, with U (m x r), V (n x r), E (m x n) i.i.d.
// standard Gaussian.
InteractionMatrix generate_interactions(const SyntheticSpec& spec);

// n rows uniform on S^{d-1} (Gaussian, then normalize).
EmbeddingMatrix generate_unit_cloud(std::size_t n, std::size_t d, std::uint64_t seed);

}  // namespace gaugelab
