#include "gaugelab/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "gaugelab/kernels.hpp"

namespace gaugelab {

namespace {

constexpr double kClampSlack = 1e-12;

// Clamps v into [-1, 1] when it is within kClampSlack of the interval;
// larger excursions indicate a logic bug upstream and are rejected.
double clamp_to_unit_interval(double v, const char* what) {
    if (v > 1.0) {
        if (v > 1.0 + kClampSlack)
            throw std::domain_error(std::string(what) + " outside [-1,1] beyond rounding slack");
        return 1.0;
    }
    if (v < -1.0) {
        if (v < -1.0 - kClampSlack)
            throw std::domain_error(std::string(what) + " outside [-1,1] beyond rounding slack");
        return -1.0;
    }
    return v;
}

void require_same_dim(const Vector& x, const Vector& y) {
    if (x.dim() != y.dim())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(x.dim()) +
                                    " vs " + std::to_string(y.dim()));
}

}  // namespace

Vector::Vector(std::vector<double> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("Vector requires dim >= 1");
    for (double c : components_) {
        if (!std::isfinite(c)) throw std::invalid_argument("Vector components must be finite");
    }
}

double Vector::norm_squared() const {
    return kernels::dot(data(), data(), dim());
}

double Vector::norm() const { return std::sqrt(norm_squared()); }

UnitVector::UnitVector(Vector v) : inner_(std::move(v)) {
    if (std::abs(inner_.norm() - 1.0) > kNormTolerance)
        throw std::domain_error("UnitVector: norm deviates from 1 by more than 1e-12");
}

UnitVector::UnitVector(Vector v, Renormalized) : inner_(std::move(v)) {}

UnitVector UnitVector::renormalized(Vector v) {
    const double n = v.norm();
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    std::vector<double> c = v.components();
    for (double& x : c) x /= n;
    return UnitVector(Vector(std::move(c)), Renormalized{});
}

Angle::Angle(double radians) : radians_(radians) {
    if (!(radians >= 0.0 && radians <= std::numbers::pi))
        throw std::domain_error("Angle must lie in [0, pi]");
}

double cosine_similarity(const Vector& x, const Vector& y) {
    require_same_dim(x, y);
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx == 0.0 || ny == 0.0)
        throw std::domain_error("cosine similarity undefined for the zero vector");
    const double c = kernels::dot(x.data(), y.data(), x.dim()) / (nx * ny);
    return clamp_to_unit_interval(c, "cosine similarity");
}

double cosine_distance(const Vector& x, const Vector& y) {
    return 1.0 - cosine_similarity(x, y);
}

double squared_euclidean(const Vector& x, const Vector& y) {
    require_same_dim(x, y);
    return kernels::squared_l2(x.data(), y.data(), x.dim());
}

Angle geodesic_distance(const UnitVector& x, const UnitVector& y) {
    require_same_dim(x.vector(), y.vector());
    const double c = clamp_to_unit_interval(
        kernels::dot(x.data(), y.data(), x.dim()), "geodesic inner product");
    return Angle(std::acos(c));
}

double chord_length(const Angle& theta) {
    return 2.0 * std::sin(theta.radians() / 2.0);
}

double cosine_taylor_approx(const Angle& theta, int order) {
    const double t = theta.radians();
    const double t2 = t * t;
    switch (order) {
        case 2: return t2 / 2.0;
        case 4: return t2 / 2.0 - t2 * t2 / 24.0;
        default: throw std::invalid_argument("cosine_taylor_approx: order must be 2 or 4");
    }
}

double equivalence_gap(const UnitVector& x, const UnitVector& y) {
    return std::abs(cosine_distance(x.vector(), y.vector()) -
                    0.5 * squared_euclidean(x.vector(), y.vector()));
}

std::vector<CurveRow> equivalence_curve(std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("equivalence_curve: samples must be >= 2");
    std::vector<CurveRow> rows;
    rows.reserve(samples);
    const Vector x({1.0, 0.0});
    for (std::size_t i = 0; i < samples; ++i) {
        const double deg = 180.0 * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double rad = deg * std::numbers::pi / 180.0;
        // Quadrant angles get exact coordinates so the table hits 0, 1, and 2
        // on the nose instead of within one ulp.
        double c, s;
        if (deg == 0.0) {
            c = 1.0; s = 0.0;
        } else if (deg == 90.0) {
            c = 0.0; s = 1.0;
        } else if (deg == 180.0) {
            c = -1.0; s = 0.0;
        } else {
            c = std::cos(rad);
            s = std::sin(rad);
        }
        const Vector y({c, s});
        rows.push_back({deg, cosine_distance(x, y), 0.5 * squared_euclidean(x, y)});
    }
    return rows;
}

std::string curve_to_csv(const std::vector<CurveRow>& rows) {
    std::string out = "theta_deg,cosine_distance,half_sq_euclidean\n";
    char buf[128];
    for (const CurveRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", r.theta_deg,
                      r.cosine_distance, r.half_sq_euclidean);
        out += buf;
    }
    return out;
}

}  // namespace gaugelab
