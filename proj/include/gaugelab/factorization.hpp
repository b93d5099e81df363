#pragma once

// Matrix factorization A ~ A_hat B_hat^T under the product-regularized
// Frobenius objective, trained three ways: unconstrained gradient descent,
// gradient descent with per-step sphere retraction of the item rows, and
// gradient descent with the loss evaluated on normalized item rows.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "gaugelab/gauge.hpp"

namespace gaugelab {

class InteractionMatrix {
public:
    InteractionMatrix(std::size_t m, std::size_t n, std::vector<double> entries);

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<double> entries_;
};

struct FactorizationProblem {
    InteractionMatrix a;
    std::size_t k;
    double lambda;
};

enum class SolverMode { Unconstrained, SphereRetraction, SphereLossNormalized };

const char* to_string(SolverMode mode);
SolverMode solver_mode_from_string(const std::string& s);

struct SolverConfig {
    SolverMode mode = SolverMode::Unconstrained;
    std::uint64_t seed = 0;
    std::size_t max_iters = 50000;
    double step_size = 1e-3;
    double tol_grad = 1e-8;
    double tol_obj = 1e-12;
    bool constrain_a_rows = false;  // optionally put A_hat rows on the sphere too
};

struct FactorizationSolution {
    SolverMode mode;
    std::uint64_t seed;
    std::size_t k;
    double lambda;
    EmbeddingMatrix a_hat;
    EmbeddingMatrix b_hat;
    double objective_value;
    std::size_t iterations;
    bool converged;
};

// || A - A_hat B_hat^T ||_F^2 + lambda || A_hat B_hat^T ||_F^2
double objective(const FactorizationProblem& problem, const EmbeddingMatrix& a_hat,
                 const EmbeddingMatrix& b_hat);

// Gradient descent with backtracking line search; deterministic per seed.
// Throws std::runtime_error naming the iteration if the objective becomes
// non-finite, and std::invalid_argument when k > min(m, n).
FactorizationSolution solve(const FactorizationProblem& problem, const SolverConfig& config);

// Max relative discrepancy between the analytic gradient of the objective
// and central finite differences, over all entries of A_hat and B_hat.
double gradient_check(const FactorizationProblem& problem, const EmbeddingMatrix& a_hat,
                      const EmbeddingMatrix& b_hat, double epsilon);

struct GaugeOrbitProbe {
    double objective_delta;        // always ~0 (product invariance)
    double max_row_norm_violation; // how far D^-1 B leaves the sphere
    double cosine_max_shift;       // worst cosine drift over item pairs
};

GaugeOrbitProbe gauge_orbit_probe(const FactorizationProblem& problem,
                                  const FactorizationSolution& solution, const GaugeMatrix& d);

// {mode, seed, k, lambda, objective, iterations, A_hat, B_hat} as JSON text.
std::string solution_to_json(const FactorizationSolution& solution);

}  // namespace gaugelab
