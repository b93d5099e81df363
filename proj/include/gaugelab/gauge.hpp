#pragma once

// The positive-diagonal gauge group acting on factor matrices: applying a
// gauge, checking product invariance, L2 normalization, the
// normalization/gauge commutation gap, cosine drift under a gauge, and the
// sphere feasibility violation a gauge causes.

#include <cstddef>
#include <span>
#include <vector>

#include "gaugelab/geometry.hpp"

namespace gaugelab {

// Positive diagonal matrix diag(d_1..d_k), d_i > 0 and finite.
class GaugeMatrix {
public:
    explicit GaugeMatrix(std::vector<double> diagonal);
    static GaugeMatrix identity(std::size_t k);

    std::size_t k() const { return diagonal_.size(); }
    const std::vector<double>& diagonal() const { return diagonal_; }
    GaugeMatrix inverse() const;

    // Componentwise D * v.
    Vector apply(const Vector& v) const;

private:
    std::vector<double> diagonal_;
};

// Row-major n x k matrix of embeddings; all entries finite.
class EmbeddingMatrix {
public:
    EmbeddingMatrix(std::size_t rows, std::size_t cols);
    EmbeddingMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    Vector row_vector(std::size_t i) const;
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

enum class GaugeSide { RightD, RightDInverse };

// Scales every row componentwise by D (or D^-1).
EmbeddingMatrix apply_gauge(const EmbeddingMatrix& e, const GaugeMatrix& d, GaugeSide side);

// Frobenius norm of A B^T - (A D)(B D^-1)^T; zero up to rounding for any
// gauge, which is the invariance this op exists to assert.
double product_invariance_gap(const EmbeddingMatrix& a_hat, const EmbeddingMatrix& b_hat,
                              const GaugeMatrix& d);

UnitVector normalize(const Vector& v);

// || pi(Dv) - D pi(v) ||. With directions_only, both sides are normalized
// before comparing, which is the variant that matters for cosine.
double commutation_gap(const Vector& v, const GaugeMatrix& d, bool directions_only = false);

// Cosine similarity after applying D to both vectors.
double cosine_under_gauge(const Vector& b1, const Vector& b2, const GaugeMatrix& d);

// max_j | ||D^-1 b_j|| - 1 | over the rows of B; rows must be unit within
// 1e-9.
double sphere_feasibility_violation(const EmbeddingMatrix& b, const GaugeMatrix& d);

// Log-uniform gauge with each d_i in [lo, hi].
GaugeMatrix sample_gauge(std::size_t k, double lo, double hi, class Rng& rng);

}  // namespace gaugelab
