#include "gaugelab/factorization.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "gaugelab/kernels.hpp"
#include "gaugelab/rng.hpp"

namespace gaugelab {

namespace {

// Residual-weighted product term: G = -2 (A - P) + 2 lambda P, where
// P = A_hat B_hat^T. Returns the objective value and fills G (m x n).
double objective_and_pointwise_grad(const FactorizationProblem& problem,
                                    const EmbeddingMatrix& a_hat, const EmbeddingMatrix& b_hat,
                                    std::vector<double>* g) {
    const std::size_t m = problem.a.m();
    const std::size_t n = problem.a.n();
    const std::size_t k = a_hat.cols();
    if (g) g->assign(m * n, 0.0);
    double obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double* ai = a_hat.row(i).data();
        for (std::size_t j = 0; j < n; ++j) {
            const double p = kernels::dot(ai, b_hat.row(j).data(), k);
            const double r = problem.a.at(i, j) - p;
            obj += r * r + problem.lambda * p * p;
            if (g) (*g)[i * n + j] = -2.0 * r + 2.0 * problem.lambda * p;
        }
    }
    return obj;
}

void check_dims(const FactorizationProblem& problem, const EmbeddingMatrix& a_hat,
                const EmbeddingMatrix& b_hat) {
    if (a_hat.rows() != problem.a.m() || b_hat.rows() != problem.a.n() ||
        a_hat.cols() != b_hat.cols())
        throw std::invalid_argument("factorization: incompatible factor dimensions");
}

// grad_A = G B_hat, grad_B = G^T A_hat.
void factor_gradients(const std::vector<double>& g, const EmbeddingMatrix& a_hat,
                      const EmbeddingMatrix& b_hat, EmbeddingMatrix& grad_a,
                      EmbeddingMatrix& grad_b) {
    const std::size_t m = a_hat.rows();
    const std::size_t n = b_hat.rows();
    const std::size_t k = a_hat.cols();
    grad_a.data().assign(m * k, 0.0);
    grad_b.data().assign(n * k, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double gij = g[i * n + j];
            kernels::axpy(gij, b_hat.row(j).data(), grad_a.row(i).data(), k);
            kernels::axpy(gij, a_hat.row(i).data(), grad_b.row(j).data(), k);
        }
    }
}

double row_norm(std::span<const double> r) {
    return std::sqrt(kernels::dot(r.data(), r.data(), r.size()));
}

// Renormalizes every row to the unit sphere; rows that are exactly zero are
// re-seeded from the generator so training can continue.
void retract_rows(EmbeddingMatrix& e, Rng& rng) {
    const std::size_t k = e.cols();
    for (std::size_t i = 0; i < e.rows(); ++i) {
        auto r = e.row(i);
        double nrm = row_norm(r);
        if (nrm == 0.0) {
            for (double& x : r) x = rng.gaussian();
            nrm = row_norm(r);
        }
        for (double& x : r) x /= nrm;
    }
}

EmbeddingMatrix normalized_rows(const EmbeddingMatrix& e) {
    EmbeddingMatrix out = e;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        auto r = out.row(i);
        const double nrm = row_norm(r);
        if (nrm == 0.0) throw std::runtime_error("cannot normalize a zero embedding row");
        for (double& x : r) x /= nrm;
    }
    return out;
}

struct SolverState {
    EmbeddingMatrix a;
    EmbeddingMatrix b;
};

}  // namespace

InteractionMatrix::InteractionMatrix(std::size_t m, std::size_t n, std::vector<double> entries)
    : m_(m), n_(n), entries_(std::move(entries)) {
    if (m == 0 || n == 0) throw std::invalid_argument("InteractionMatrix requires m, n >= 1");
    if (entries_.size() != m * n)
        throw std::invalid_argument("InteractionMatrix entries size does not match m*n");
    for (double x : entries_) {
        if (!std::isfinite(x)) throw std::invalid_argument("InteractionMatrix entries must be finite");
    }
}

const char* to_string(SolverMode mode) {
    switch (mode) {
        case SolverMode::Unconstrained: return "unconstrained";
        case SolverMode::SphereRetraction: return "sphere_retraction";
        case SolverMode::SphereLossNormalized: return "sphere_loss_normalized";
    }
    return "unknown";
}

SolverMode solver_mode_from_string(const std::string& s) {
    if (s == "unconstrained") return SolverMode::Unconstrained;
    if (s == "sphere_retraction") return SolverMode::SphereRetraction;
    if (s == "sphere_loss_normalized") return SolverMode::SphereLossNormalized;
    throw std::invalid_argument("unknown solver mode: " + s);
}

double objective(const FactorizationProblem& problem, const EmbeddingMatrix& a_hat,
                 const EmbeddingMatrix& b_hat) {
    check_dims(problem, a_hat, b_hat);
    return objective_and_pointwise_grad(problem, a_hat, b_hat, nullptr);
}

FactorizationSolution solve(const FactorizationProblem& problem, const SolverConfig& config) {
    const std::size_t m = problem.a.m();
    const std::size_t n = problem.a.n();
    const std::size_t k = problem.k;
    if (k == 0 || k > std::min(m, n))
        throw std::invalid_argument("solve: rank k must satisfy 1 <= k <= min(m, n)");
    if (config.max_iters == 0 || config.step_size <= 0.0 || config.tol_grad <= 0.0 ||
        config.tol_obj <= 0.0)
        throw std::invalid_argument("solve: invalid config");

    Rng rng(config.seed);
    const double init_scale = 1.0 / std::sqrt(static_cast<double>(k));
    SolverState s{EmbeddingMatrix(m, k), EmbeddingMatrix(n, k)};
    for (double& x : s.a.data()) x = rng.gaussian() * init_scale;
    for (double& x : s.b.data()) x = rng.gaussian() * init_scale;

    const bool sphere_b = config.mode != SolverMode::Unconstrained;
    const bool sphere_a = sphere_b && config.constrain_a_rows;
    const bool loss_normalized = config.mode == SolverMode::SphereLossNormalized;
    if (config.mode == SolverMode::SphereRetraction) {
        retract_rows(s.b, rng);
        if (sphere_a) retract_rows(s.a, rng);
    }

    // In loss-normalized mode the loss is evaluated on the normalized rows;
    // the raw parameters stay free.
    auto eval = [&](const SolverState& st) {
        if (!loss_normalized) return objective(problem, st.a, st.b);
        const EmbeddingMatrix bn = normalized_rows(st.b);
        if (!sphere_a) return objective(problem, st.a, bn);
        return objective(problem, normalized_rows(st.a), bn);
    };

    EmbeddingMatrix grad_a(m, k), grad_b(n, k);
    std::vector<double> g;
    double obj = eval(s);
    double step = config.step_size;
    std::size_t iter = 0;
    bool converged = false;

    for (; iter < config.max_iters; ++iter) {
        if (!std::isfinite(obj))
            throw std::runtime_error("solve: objective diverged (non-finite) at iteration " +
                                     std::to_string(iter));

        // Gradient of the loss with respect to the raw parameters.
        if (!loss_normalized) {
            objective_and_pointwise_grad(problem, s.a, s.b, &g);
            factor_gradients(g, s.a, s.b, grad_a, grad_b);
        } else {
            const EmbeddingMatrix bn = normalized_rows(s.b);
            const EmbeddingMatrix an = sphere_a ? normalized_rows(s.a) : s.a;
            objective_and_pointwise_grad(problem, an, bn, &g);
            factor_gradients(g, an, bn, grad_a, grad_b);
            // Chain rule through row normalization: project out the radial
            // component and divide by the raw norm.
            auto project = [&](EmbeddingMatrix& grad, const EmbeddingMatrix& raw,
                               const EmbeddingMatrix& unit) {
                for (std::size_t j = 0; j < grad.rows(); ++j) {
                    auto gr = grad.row(j);
                    const auto u = unit.row(j);
                    const double radial = kernels::dot(gr.data(), u.data(), k);
                    kernels::axpy(-radial, u.data(), gr.data(), k);
                    const double nrm = row_norm(raw.row(j));
                    for (double& x : gr) x /= nrm;
                }
            };
            project(grad_b, s.b, bn);
            if (sphere_a) project(grad_a, s.a, an);
        }

        const double grad_sq = kernels::dot(grad_a.data().data(), grad_a.data().data(),
                                            grad_a.data().size()) +
                               kernels::dot(grad_b.data().data(), grad_b.data().data(),
                                            grad_b.data().size());
        if (std::sqrt(grad_sq) < config.tol_grad) {
            converged = true;
            break;
        }

        // Backtracking line search; a step is accepted only if it does not
        // increase the objective.
        bool accepted = false;
        double trial_obj = obj;
        SolverState trial = s;
        for (int bt = 0; bt < 60; ++bt) {
            trial = s;
            kernels::axpy(-step, grad_a.data().data(), trial.a.data().data(),
                          trial.a.data().size());
            kernels::axpy(-step, grad_b.data().data(), trial.b.data().data(),
                          trial.b.data().size());
            if (config.mode == SolverMode::SphereRetraction) {
                retract_rows(trial.b, rng);
                if (sphere_a) retract_rows(trial.a, rng);
            }
            trial_obj = eval(trial);
            if (std::isfinite(trial_obj) && trial_obj <= obj) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            converged = true;  // no descent direction at this scale
            break;
        }

        const double decrease = (obj - trial_obj) / (1.0 + obj);
        s = std::move(trial);
        obj = trial_obj;
        step *= 1.25;
        if (decrease < config.tol_obj) {
            ++iter;
            converged = true;
            break;
        }
    }

    EmbeddingMatrix b_out = loss_normalized ? normalized_rows(s.b) : std::move(s.b);
    EmbeddingMatrix a_out = (loss_normalized && sphere_a) ? normalized_rows(s.a) : std::move(s.a);
    const double final_obj = objective(problem, a_out, b_out);
    return FactorizationSolution{config.mode, config.seed,       k,    problem.lambda,
                                 std::move(a_out), std::move(b_out), final_obj, iter,
                                 converged};
}

double gradient_check(const FactorizationProblem& problem, const EmbeddingMatrix& a_hat,
                      const EmbeddingMatrix& b_hat, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1e-3))
        throw std::invalid_argument("gradient_check: epsilon must be in (0, 1e-3]");
    check_dims(problem, a_hat, b_hat);
    std::vector<double> g;
    objective_and_pointwise_grad(problem, a_hat, b_hat, &g);
    EmbeddingMatrix grad_a(a_hat.rows(), a_hat.cols());
    EmbeddingMatrix grad_b(b_hat.rows(), b_hat.cols());
    factor_gradients(g, a_hat, b_hat, grad_a, grad_b);

    double worst = 0.0;
    auto probe = [&](const EmbeddingMatrix& analytic, bool is_a) {
        EmbeddingMatrix a = a_hat;
        EmbeddingMatrix b = b_hat;
        std::vector<double>& target = is_a ? a.data() : b.data();
        for (std::size_t idx = 0; idx < target.size(); ++idx) {
            const double saved = target[idx];
            target[idx] = saved + epsilon;
            const double up = objective(problem, a, b);
            target[idx] = saved - epsilon;
            const double down = objective(problem, a, b);
            target[idx] = saved;
            const double numeric = (up - down) / (2.0 * epsilon);
            const double exact = analytic.data()[idx];
            const double rel = std::abs(exact - numeric) /
                               std::max(1.0, std::abs(exact) + std::abs(numeric));
            if (rel > worst) worst = rel;
        }
    };
    probe(grad_a, true);
    probe(grad_b, false);
    return worst;
}

GaugeOrbitProbe gauge_orbit_probe(const FactorizationProblem& problem,
                                  const FactorizationSolution& solution, const GaugeMatrix& d) {
    if (d.k() != solution.k) throw std::invalid_argument("gauge_orbit_probe: gauge k mismatch");
    const EmbeddingMatrix a_gauged = apply_gauge(solution.a_hat, d, GaugeSide::RightD);
    const EmbeddingMatrix b_gauged = apply_gauge(solution.b_hat, d, GaugeSide::RightDInverse);

    GaugeOrbitProbe probe{};
    probe.objective_delta =
        std::abs(objective(problem, a_gauged, b_gauged) - solution.objective_value);

    for (std::size_t j = 0; j < b_gauged.rows(); ++j) {
        const double dev = std::abs(row_norm(b_gauged.row(j)) - 1.0);
        if (dev > probe.max_row_norm_violation) probe.max_row_norm_violation = dev;
    }

    const std::size_t n = solution.b_hat.rows();
    const std::size_t stride = n > 128 ? n / 128 : 1;
    for (std::size_t i = 0; i < n; i += stride) {
        for (std::size_t j = i + 1; j < n; j += stride) {
            const double c0 =
                cosine_similarity(solution.b_hat.row_vector(i), solution.b_hat.row_vector(j));
            const double c1 =
                cosine_similarity(b_gauged.row_vector(i), b_gauged.row_vector(j));
            const double shift = std::abs(c1 - c0);
            if (shift > probe.cosine_max_shift) probe.cosine_max_shift = shift;
        }
    }
    return probe;
}

std::string solution_to_json(const FactorizationSolution& solution) {
    nlohmann::json j;
    j["mode"] = to_string(solution.mode);
    j["seed"] = solution.seed;
    j["k"] = solution.k;
    j["lambda"] = solution.lambda;
    j["objective"] = solution.objective_value;
    j["iterations"] = solution.iterations;
    j["A_hat"] = solution.a_hat.data();
    j["B_hat"] = solution.b_hat.data();
    return j.dump();
}

}  // namespace gaugelab
