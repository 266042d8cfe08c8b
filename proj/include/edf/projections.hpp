#pragma once

#include "edf/core.hpp"

#include <span>
#include <variant>
#include <vector>

namespace edf {

// Euclidean projections onto the model sets used by the experiments.
// All functions are pure.

/// Coordinate 0 clamped to [lo, hi]; every other coordinate set to 0.
Vector project_segment(const Vector& y, double lo, double hi);

/// Closed ball of radius r centered at the origin.
Vector project_ball(const Vector& y, double radius);

struct EllipsoidProjection {
    Vector point;
    double multiplier = 0.0;  // t >= 0; zero for interior points
    int iterations = 0;
};

/**
 * Projection onto the axis-aligned ellipsoid sum_i x_i^2 / a_i^2 <= 1.
 *
 * Exterior points map to x_i = a_i^2 y_i / (a_i^2 + t) with t > 0 the root of
 * sum_i a_i^2 y_i^2 / (a_i^2 + t)^2 = 1. The left side is strictly decreasing
 * in t, so the root is bracketed on (0, max_i a_i |y_i|] and found by
 * safeguarded Newton steps (bisection whenever Newton leaves the bracket).
 */
EllipsoidProjection project_ellipsoid_detail(const Vector& y, const Vector& radii, double tol = 1e-12);
Vector project_ellipsoid(const Vector& y, const Vector& radii, double tol = 1e-12);

/// Projection onto {b : ||b||_1 <= s} by sort-and-threshold.
Vector project_l1_ball(const Vector& b, double radius);

/// Q Q^T y for a basis with orthonormal columns.
Vector project_subspace(const Vector& y, const Matrix& basis);

/// Nearest point; ties go to the lowest index.
Vector project_finite_set(const Vector& y, std::span<const Vector> points);

struct Segment {
    double lo;
    double hi;
};
struct Ball {
    double radius;
};
struct Ellipsoid {
    Vector radii;
};
struct L1Ball {
    double radius;
};
struct Subspace {
    Matrix basis;
};
struct FiniteSet {
    std::vector<Vector> points;
};

/// One of the model sets, validated on construction.
class ConvexSetSpec {
public:
    using Variant = std::variant<Segment, Ball, Ellipsoid, L1Ball, Subspace, FiniteSet>;

    static ConvexSetSpec segment(double lo, double hi);
    static ConvexSetSpec ball(double radius);
    static ConvexSetSpec ellipsoid(Vector radii);
    static ConvexSetSpec l1ball(double radius);
    static ConvexSetSpec subspace(Matrix basis);
    static ConvexSetSpec finite_set(std::vector<Vector> points);

    const Variant& variant() const noexcept { return set_; }
    /// Everything except finite_set (finite sets of more than one point).
    bool is_convex() const noexcept;

    Vector project(const Vector& y) const;
    /// Membership up to `tol` (absolute, in the set's natural units).
    bool contains(const Vector& y, double tol = 1e-9) const;

private:
    explicit ConvexSetSpec(Variant v) : set_(std::move(v)) {}
    Variant set_;
};

}  // namespace edf
