#pragma once

// Metric primitives on R^d and the unit sphere: cosine similarity and
// distance, squared Euclidean distance, geodesic (angular) distance, chord
// length, and the exact cosine/Euclidean equivalence on S^{d-1}.
//
// All functions are pure; errors are reported with std::domain_error for
// undefined inputs (zero vectors, off-sphere points) and
// std::invalid_argument for structural problems (dimension mismatch).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaugelab {

class Vector {
public:
    // Requires at least one component and all components finite.
    explicit Vector(std::vector<double> components);

    std::size_t dim() const { return components_.size(); }
    const std::vector<double>& components() const { return components_; }
    const double* data() const { return components_.data(); }
    double operator[](std::size_t i) const { return components_[i]; }

    double norm() const;
    double norm_squared() const;

private:
    std::vector<double> components_;
};

// A point on S^{d-1}. The strict constructor rejects vectors whose norm is
// more than 1e-12 away from 1; renormalized() accepts any nonzero vector.
class UnitVector {
public:
    static constexpr double kNormTolerance = 1e-12;

    explicit UnitVector(Vector v);             // strict
    static UnitVector renormalized(Vector v);  // divides by the norm

    const Vector& vector() const { return inner_; }
    std::size_t dim() const { return inner_.dim(); }
    const double* data() const { return inner_.data(); }

private:
    struct Renormalized {};
    UnitVector(Vector v, Renormalized);
    Vector inner_;
};

// An angle in [0, pi].
class Angle {
public:
    explicit Angle(double radians);
    double radians() const { return radians_; }

private:
    double radians_;
};

double cosine_similarity(const Vector& x, const Vector& y);
double cosine_distance(const Vector& x, const Vector& y);
double squared_euclidean(const Vector& x, const Vector& y);

Angle geodesic_distance(const UnitVector& x, const UnitVector& y);
double chord_length(const Angle& theta);

// Truncated series for 1 - cos(theta); order must be 2 or 4.
double cosine_taylor_approx(const Angle& theta, int order);

// | d_C(x,y) - 1/2 d_E^2(x,y) |, which is <= 1e-12 for all unit inputs.
double equivalence_gap(const UnitVector& x, const UnitVector& y);

struct CurveRow {
    double theta_deg;
    double cosine_distance;
    double half_sq_euclidean;
};

// Sweeps theta over [0, 180] degrees with `samples` points, evaluating both
// distances on an actual unit-vector pair at each angle. samples >= 2.
std::vector<CurveRow> equivalence_curve(std::size_t samples);

// CSV with header theta_deg,cosine_distance,half_sq_euclidean and %.17g
// rendering; '\n' line endings.
std::string curve_to_csv(const std::vector<CurveRow>& rows);

}  // namespace gaugelab
