#include "edf/projections.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace edf {

Vector project_segment(const Vector& y, double lo, double hi) {
    if (!(lo <= hi)) throw InvalidArgument("project_segment: lo must be <= hi");
    if (y.size() < 1) throw InvalidArgument("project_segment: empty input");
    Vector out = Vector::Zero(y.size());
    out[0] = std::clamp(y[0], lo, hi);
    return out;
}

Vector project_ball(const Vector& y, double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("project_ball: radius must be > 0");
    const double norm = y.norm();
    if (norm <= radius) return y;
    return (radius / norm) * y;
}

EllipsoidProjection project_ellipsoid_detail(const Vector& y, const Vector& radii, double tol) {
    if (radii.size() != y.size()) throw InvalidArgument("project_ellipsoid: radii length mismatch");
    if (!((radii.array() > 0.0).all()) || !radii.allFinite())
        throw InvalidArgument("project_ellipsoid: radii must be > 0");
    if (!(tol > 0.0)) throw InvalidArgument("project_ellipsoid: tol must be > 0");

    const Eigen::ArrayXd a2 = radii.array().square();
    const Eigen::ArrayXd w = a2 * y.array().square();  // a_i^2 y_i^2
    if ((y.array().square() / a2).sum() <= 1.0) return {y, 0.0, 0};

    // g(t) = sum_i w_i / (a_i^2 + t)^2 - 1 is convex and strictly decreasing on t >= 0.
    auto g = [&](double t, double& slope) {
        const Eigen::ArrayXd inv = 1.0 / (a2 + t);
        const Eigen::ArrayXd term = w * inv.square();
        slope = -2.0 * (term * inv).sum();
        return term.sum() - 1.0;
    };

    double lo = 0.0;
    double hi = radii.maxCoeff() * y.norm();
    double t = 0.0;
    double slope = 0.0;
    double value = g(t, slope);
    constexpr int kMaxIter = 500;
    int iter = 0;
    for (; iter < kMaxIter; ++iter) {
        if (std::abs(value) <= tol) break;
        if (value > 0.0) lo = t; else hi = t;
        double next = t - value / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == t || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
        t = next;
        value = g(t, slope);
    }
    if (std::abs(value) > 10.0 * tol)
        throw NumericalError("project_ellipsoid: secular equation did not converge");

    Vector x = (a2 * y.array() / (a2 + t)).matrix();
    return {std::move(x), t, iter};
}

Vector project_ellipsoid(const Vector& y, const Vector& radii, double tol) {
    return project_ellipsoid_detail(y, radii, tol).point;
}

Vector project_l1_ball(const Vector& b, double radius) {
    if (!(radius >= 0.0)) throw InvalidArgument("project_l1_ball: radius must be >= 0");
    if (b.lpNorm<1>() <= radius) return b;
    if (radius == 0.0) return Vector::Zero(b.size());

    std::vector<double> u(b.size());
    for (Index i = 0; i < b.size(); ++i) u[i] = std::abs(b[i]);
    std::sort(u.begin(), u.end(), std::greater<>());

    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cumulative += u[j];
        const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
        if (u[j] > candidate) theta = candidate;
        else break;
    }

    Vector out(b.size());
    for (Index i = 0; i < b.size(); ++i) {
        const double mag = std::max(std::abs(b[i]) - theta, 0.0);
        out[i] = std::copysign(mag, b[i]);
        if (mag == 0.0) out[i] = 0.0;
    }
    return out;
}

Vector project_subspace(const Vector& y, const Matrix& basis) {
    if (basis.rows() != y.size()) throw InvalidArgument("project_subspace: basis row count mismatch");
    return basis * (basis.transpose() * y);
}

Vector project_finite_set(const Vector& y, std::span<const Vector> points) {
    if (points.empty()) throw InvalidArgument("project_finite_set: empty point set");
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].size() != y.size()) throw InvalidArgument("project_finite_set: dimension mismatch");
        const double d = (points[k] - y).squaredNorm();
        if (d < best_dist) {
            best_dist = d;
            best = k;
        }
    }
    return points[best];
}

ConvexSetSpec ConvexSetSpec::segment(double lo, double hi) {
    if (!(lo <= hi)) throw InvalidArgument("segment: lo must be <= hi");
    return ConvexSetSpec(Segment{lo, hi});
}

ConvexSetSpec ConvexSetSpec::ball(double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("ball: radius must be > 0");
    return ConvexSetSpec(Ball{radius});
}

ConvexSetSpec ConvexSetSpec::ellipsoid(Vector radii) {
    if (radii.size() < 1 || !((radii.array() > 0.0).all()))
        throw InvalidArgument("ellipsoid: radii must be > 0");
    return ConvexSetSpec(Ellipsoid{std::move(radii)});
}

ConvexSetSpec ConvexSetSpec::l1ball(double radius) {
    if (!(radius >= 0.0)) throw InvalidArgument("l1ball: radius must be >= 0");
    return ConvexSetSpec(L1Ball{radius});
}

ConvexSetSpec ConvexSetSpec::subspace(Matrix basis) {
    const Matrix gram = basis.transpose() * basis;
    if ((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidArgument("subspace: basis columns must be orthonormal");
    return ConvexSetSpec(Subspace{std::move(basis)});
}

ConvexSetSpec ConvexSetSpec::finite_set(std::vector<Vector> points) {
    if (points.empty()) throw InvalidArgument("finite_set: must be non-empty");
    for (const auto& p : points)
        if (p.size() != points.front().size()) throw InvalidArgument("finite_set: dimension mismatch");
    return ConvexSetSpec(FiniteSet{std::move(points)});
}

bool ConvexSetSpec::is_convex() const noexcept {
    if (const auto* f = std::get_if<FiniteSet>(&set_)) return f->points.size() == 1;
    return true;
}

Vector ConvexSetSpec::project(const Vector& y) const {
    return std::visit(
        [&](const auto& s) -> Vector {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Segment>) return project_segment(y, s.lo, s.hi);
            else if constexpr (std::is_same_v<T, Ball>) return project_ball(y, s.radius);
            else if constexpr (std::is_same_v<T, Ellipsoid>) return project_ellipsoid(y, s.radii);
            else if constexpr (std::is_same_v<T, L1Ball>) return project_l1_ball(y, s.radius);
            else if constexpr (std::is_same_v<T, Subspace>) return project_subspace(y, s.basis);
            else return project_finite_set(y, s.points);
        },
        set_);
}

bool ConvexSetSpec::contains(const Vector& y, double tol) const {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Segment>) {
                const double rest = y.size() > 1 ? y.tail(y.size() - 1).cwiseAbs().maxCoeff() : 0.0;
                return y[0] >= s.lo - tol && y[0] <= s.hi + tol && rest <= tol;
            } else if constexpr (std::is_same_v<T, Ball>) {
                return y.norm() <= s.radius + tol;
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                return (y.array().square() / s.radii.array().square()).sum() <= 1.0 + tol;
            } else if constexpr (std::is_same_v<T, L1Ball>) {
                return y.lpNorm<1>() <= s.radius + tol;
            } else if constexpr (std::is_same_v<T, Subspace>) {
                return (y - project_subspace(y, s.basis)).norm() <= tol;
            } else {
                return (project_finite_set(y, s.points) - y).norm() <= tol;
            }
        },
        set_);
}

}  // namespace edf
