#include "gaugelab/gauge.hpp"

#include <cmath>
#include <stdexcept>

#include "gaugelab/kernels.hpp"
#include "gaugelab/rng.hpp"

namespace gaugelab {

GaugeMatrix::GaugeMatrix(std::vector<double> diagonal) : diagonal_(std::move(diagonal)) {
    if (diagonal_.empty()) throw std::invalid_argument("GaugeMatrix requires k >= 1");
    for (double d : diagonal_) {
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("GaugeMatrix entries must be positive and finite");
    }
}

GaugeMatrix GaugeMatrix::identity(std::size_t k) {
    return GaugeMatrix(std::vector<double>(k, 1.0));
}

GaugeMatrix GaugeMatrix::inverse() const {
    std::vector<double> inv(diagonal_.size());
    for (std::size_t i = 0; i < diagonal_.size(); ++i) inv[i] = 1.0 / diagonal_[i];
    return GaugeMatrix(std::move(inv));
}

Vector GaugeMatrix::apply(const Vector& v) const {
    if (v.dim() != k()) throw std::invalid_argument("GaugeMatrix/vector dimension mismatch");
    std::vector<double> out(k());
    kernels::hadamard(diagonal_.data(), v.data(), out.data(), k());
    return Vector(std::move(out));
}

EmbeddingMatrix::EmbeddingMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("EmbeddingMatrix requires rows, cols >= 1");
}

EmbeddingMatrix::EmbeddingMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("EmbeddingMatrix requires rows, cols >= 1");
    if (data_.size() != rows * cols)
        throw std::invalid_argument("EmbeddingMatrix data size does not match rows*cols");
    for (double x : data_) {
        if (!std::isfinite(x)) throw std::invalid_argument("EmbeddingMatrix entries must be finite");
    }
}

Vector EmbeddingMatrix::row_vector(std::size_t i) const {
    auto r = row(i);
    return Vector(std::vector<double>(r.begin(), r.end()));
}

EmbeddingMatrix apply_gauge(const EmbeddingMatrix& e, const GaugeMatrix& d, GaugeSide side) {
    if (e.cols() != d.k())
        throw std::invalid_argument("apply_gauge: embedding dim does not match gauge k");
    const std::vector<double> scale =
        side == GaugeSide::RightD ? d.diagonal() : d.inverse().diagonal();
    EmbeddingMatrix out(e.rows(), e.cols());
    for (std::size_t i = 0; i < e.rows(); ++i) {
        kernels::hadamard(e.row(i).data(), scale.data(), out.row(i).data(), e.cols());
    }
    return out;
}

double product_invariance_gap(const EmbeddingMatrix& a_hat, const EmbeddingMatrix& b_hat,
                              const GaugeMatrix& d) {
    if (a_hat.cols() != b_hat.cols() || a_hat.cols() != d.k())
        throw std::invalid_argument("product_invariance_gap: dimension mismatch");
    const EmbeddingMatrix a_gauged = apply_gauge(a_hat, d, GaugeSide::RightD);
    const EmbeddingMatrix b_gauged = apply_gauge(b_hat, d, GaugeSide::RightDInverse);
    const std::size_t k = a_hat.cols();
    double sq = 0.0;
    for (std::size_t i = 0; i < a_hat.rows(); ++i) {
        for (std::size_t j = 0; j < b_hat.rows(); ++j) {
            const double p0 = kernels::dot(a_hat.row(i).data(), b_hat.row(j).data(), k);
            const double p1 = kernels::dot(a_gauged.row(i).data(), b_gauged.row(j).data(), k);
            sq += (p0 - p1) * (p0 - p1);
        }
    }
    return std::sqrt(sq);
}

UnitVector normalize(const Vector& v) { return UnitVector::renormalized(v); }

double commutation_gap(const Vector& v, const GaugeMatrix& d, bool directions_only) {
    const Vector dv = d.apply(v);
    const Vector lhs = normalize(dv).vector();
    Vector rhs = d.apply(normalize(v).vector());
    if (directions_only) rhs = normalize(rhs).vector();
    return std::sqrt(kernels::squared_l2(lhs.data(), rhs.data(), lhs.dim()));
}

double cosine_under_gauge(const Vector& b1, const Vector& b2, const GaugeMatrix& d) {
    return cosine_similarity(d.apply(b1), d.apply(b2));
}

double sphere_feasibility_violation(const EmbeddingMatrix& b, const GaugeMatrix& d) {
    if (b.cols() != d.k())
        throw std::invalid_argument("sphere_feasibility_violation: dimension mismatch");
    const GaugeMatrix d_inv = d.inverse();
    double worst = 0.0;
    for (std::size_t j = 0; j < b.rows(); ++j) {
        const Vector bj = b.row_vector(j);
        if (std::abs(bj.norm() - 1.0) > 1e-9)
            throw std::domain_error("sphere_feasibility_violation: row " + std::to_string(j) +
                                    " is not unit norm");
        const double dev = std::abs(d_inv.apply(bj).norm() - 1.0);
        if (dev > worst) worst = dev;
    }
    return worst;
}

GaugeMatrix sample_gauge(std::size_t k, double lo, double hi, Rng& rng) {
    std::vector<double> diag(k);
    for (double& d : diag) d = rng.log_uniform(lo, hi);
    return GaugeMatrix(std::move(diag));
}

}  // namespace gaugelab
