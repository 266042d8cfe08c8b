#include <doctest.h>

#include "edf/projections.hpp"

#include <cmath>
#include <numbers>

using namespace edf;

static Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

static Vector random_vec(RngStream& rng, Index n, double scale) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = scale * rng.normal();
    return v;
}

TEST_CASE("segment") {
    CHECK(project_segment(vec({0.5, 2}), -1, 1) == vec({0.5, 0}));
    CHECK(project_segment(vec({2, 2}), -1, 1) == vec({1, 0}));
    CHECK(project_segment(vec({-3, 1}), -1, 1) == vec({-1, 0}));
    CHECK_THROWS_AS(project_segment(vec({0, 0}), 1, -1), InvalidArgument);
}

TEST_CASE("ball") {
    CHECK(project_ball(vec({0.3, -0.4}), 1) == vec({0.3, -0.4}));
    CHECK(project_ball(vec({0, 2}), 1).isApprox(vec({0, 1}), 1e-15));
    CHECK(project_ball(vec({3, 4}), 1).isApprox(vec({0.6, 0.8}), 1e-15));
    CHECK_THROWS_AS(project_ball(vec({0, 0}), 0.0), InvalidArgument);
}

TEST_CASE("ellipsoid examples") {
    const Vector a = vec({1, 0.1});
    CHECK(project_ellipsoid(vec({0.1, 0.05}), a) == vec({0.1, 0.05}));
    CHECK((project_ellipsoid(vec({0, 2}), a) - vec({0, 0.1})).norm() < 1e-12);

    const Vector y = vec({2, 1});
    const Vector r = vec({2, 1});
    const EllipsoidProjection p = project_ellipsoid_detail(y, r);
    const double t = p.multiplier;
    CHECK(16 / ((4 + t) * (4 + t)) + 1 / ((1 + t) * (1 + t)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs((p.point.array() / r.array()).square().sum() - 1.0) <= 1e-11);
    CHECK_THROWS_AS(project_ellipsoid(y, vec({1, 0})), InvalidArgument);
    CHECK_THROWS_AS(project_ellipsoid(y, vec({1})), InvalidArgument);
}

TEST_CASE("ellipsoid agrees with a 10^6-point boundary grid (2-D)") {
    const std::vector<std::pair<Vector, Vector>> cases{
        {vec({2, 1}), vec({2, 1})}, {vec({3, 10}), vec({2.4, 0.24})}, {vec({-0.3, 5}), vec({4, 0.5})}};
    for (const auto& [y, a] : cases) {
        const double dist = (y - project_ellipsoid(y, a)).norm();
        constexpr int m = 1000000;
        double best = INFINITY;
        for (int k = 0; k < m; ++k) {
            const double th = 2.0 * std::numbers::pi * k / m;
            const double dx = y[0] - a[0] * std::cos(th);
            const double dy = y[1] - a[1] * std::sin(th);
            best = std::min(best, std::hypot(dx, dy));
        }
        CHECK(dist <= best + 1e-12);
        CHECK(best - dist <= 1e-4);
    }
}

TEST_CASE("ellipsoid agrees with a 10^6-point boundary grid (3-D)") {
    const Vector y = vec({4, 3, 2});
    const Vector a = vec({3, 2, 1});
    const double dist = (y - project_ellipsoid(y, a)).norm();
    constexpr int m = 1000;
    double best = INFINITY;
    for (int i = 0; i < m; ++i) {
        const double th = std::numbers::pi * (i + 0.5) / m;
        for (int j = 0; j < m; ++j) {
            const double ph = 2.0 * std::numbers::pi * j / m;
            const Vector x = vec({a[0] * std::sin(th) * std::cos(ph), a[1] * std::sin(th) * std::sin(ph),
                                  a[2] * std::cos(th)});
            best = std::min(best, (y - x).norm());
        }
    }
    CHECK(dist <= best + 1e-12);
    CHECK(best - dist <= 1e-4);
}

TEST_CASE("ball and ellipsoid with equal radii agree") {
    RngStream rng(3, 0);
    for (int k = 0; k < 1000; ++k) {
        const Vector y = random_vec(rng, 4, 2.0);
        CHECK((project_ball(y, 1.3) - project_ellipsoid(y, Vector::Constant(4, 1.3))).norm() <= 1e-10);
    }
}

TEST_CASE("l1 ball examples") {
    CHECK(project_l1_ball(vec({3, 0}), 1) == vec({1, 0}));
    CHECK(project_l1_ball(vec({0.2, 0.3}), 1) == vec({0.2, 0.3}));
    CHECK((project_l1_ball(vec({2, 1}), 1) - vec({1, 0})).norm() < 1e-15);
    CHECK(project_l1_ball(vec({2, -1}), 0) == vec({0, 0}));
    CHECK_THROWS_AS(project_l1_ball(vec({1}), -1), InvalidArgument);

    RngStream rng(4, 0);
    for (int k = 0; k < 1000; ++k) {
        const Vector b = random_vec(rng, 6, 3.0);
        const double s = 4.0 * rng.uniform();
        CHECK(project_l1_ball(b, s).lpNorm<1>() <= s + 1e-12 * (1 + s));
    }
}

TEST_CASE("l1 ball matches grid search over the sphere") {
    SUBCASE("2-D") {
        const Vector b = vec({2, 1});
        const double d = (b - project_l1_ball(b, 1)).norm();
        double best = INFINITY;
        constexpr int m = 400000;
        for (int k = 0; k < m; ++k) {
            // perimeter parameter on |x| + |y| = 1
            const double u = 4.0 * k / m;
            const int side = static_cast<int>(u);
            const double f = u - side;
            const double sx = side == 0 || side == 3 ? 1 : -1;
            const double sy = side < 2 ? 1 : -1;
            best = std::min(best, (b - vec({sx * (1 - f), sy * f})).norm());
        }
        CHECK(d <= best + 1e-12);
        CHECK(best - d <= 1e-5);
    }
    SUBCASE("3-D") {
        const Vector b = vec({1.5, -0.7, 0.4});
        const double s = 1.2;
        const double d = (b - project_l1_ball(b, s)).norm();
        double best = INFINITY;
        constexpr int m = 600;
        for (int sgn = 0; sgn < 8; ++sgn) {
            const double s0 = sgn & 1 ? -1 : 1, s1 = sgn & 2 ? -1 : 1, s2 = sgn & 4 ? -1 : 1;
            for (int i = 0; i <= m; ++i)
                for (int j = 0; i + j <= m; ++j) {
                    const double u = s * i / m, v = s * j / m;
                    best = std::min(best, (b - vec({s0 * u, s1 * v, s2 * (s - u - v)})).norm());
                }
        }
        CHECK(d <= best + 1e-12);
        CHECK(best - d <= 1e-4);
    }
}

TEST_CASE("subspace") {
    const Vector y = vec({3, 4});
    CHECK(project_subspace(y, Matrix::Identity(2, 2)) == y);
    Matrix e1 = Matrix::Zero(2, 1);
    e1(0, 0) = 1;
    CHECK(project_subspace(y, e1) == vec({3, 0}));
    RngStream rng(6, 0);
    Matrix q = Eigen::HouseholderQR<Matrix>(Matrix::NullaryExpr(6, 3, [&] { return rng.normal(); }))
                   .householderQ() *
               Matrix::Identity(6, 3);
    const Vector z = random_vec(rng, 6, 1.0);
    const Vector p = project_subspace(z, q);
    CHECK((project_subspace(p, q) - p).norm() <= 1e-12);
}

TEST_CASE("finite set") {
    const std::vector<Vector> pts{vec({0, -1}), vec({0, 1})};
    CHECK(project_finite_set(vec({0.1, 0.5}), pts) == vec({0, 1}));
    CHECK(project_finite_set(vec({0.1, -0.5}), pts) == vec({0, -1}));
    CHECK(project_finite_set(vec({0, 0}), pts) == vec({0, -1}));
    CHECK_THROWS_AS(project_finite_set(vec({0, 0}), std::vector<Vector>{}), InvalidArgument);
}

TEST_CASE("non-expansiveness, idempotence and feasibility on 10^4 pairs per convex variant") {
    RngStream rng(2024, 0);
    Matrix basis = Eigen::HouseholderQR<Matrix>(Matrix::NullaryExpr(3, 2, [&] { return rng.normal(); }))
                       .householderQ() *
                   Matrix::Identity(3, 2);
    const std::vector<std::pair<const char*, ConvexSetSpec>> sets{
        {"segment", ConvexSetSpec::segment(-1, 1)},
        {"ball", ConvexSetSpec::ball(1.0)},
        {"ellipsoid", ConvexSetSpec::ellipsoid(vec({2.0, 0.5, 0.1}))},
        {"l1ball", ConvexSetSpec::l1ball(1.5)},
        {"subspace", ConvexSetSpec::subspace(basis)},
    };
    for (const auto& [name, set] : sets) {
        CAPTURE(name);
        CHECK(set.is_convex());
        long expansions = 0, not_idempotent = 0, infeasible = 0;
        for (int k = 0; k < 10000; ++k) {
            const Vector a = random_vec(rng, 3, 2.0);
            const Vector b = random_vec(rng, 3, 2.0);
            const Vector pa = set.project(a);
            const Vector pb = set.project(b);
            if ((pa - pb).norm() > (a - b).norm() + 1e-12) ++expansions;
            if ((set.project(pa) - pa).norm() > 1e-10) ++not_idempotent;
            if (!set.contains(pa)) ++infeasible;
        }
        CHECK(expansions == 0);
        CHECK(not_idempotent == 0);
        CHECK(infeasible == 0);
    }
    const ConvexSetSpec two = ConvexSetSpec::finite_set({vec({0, -1, 0}), vec({0, 1, 0})});
    CHECK(!two.is_convex());
    for (int k = 0; k < 1000; ++k) {
        const Vector p = two.project(random_vec(rng, 3, 1.0));
        CHECK(two.project(p) == p);
    }
}

TEST_CASE("set invariants") {
    CHECK_THROWS_AS(ConvexSetSpec::ball(-1), InvalidArgument);
    CHECK_THROWS_AS(ConvexSetSpec::ellipsoid(vec({1, 0})), InvalidArgument);
    CHECK_THROWS_AS(ConvexSetSpec::finite_set({}), InvalidArgument);
    CHECK_THROWS_AS(ConvexSetSpec::subspace(Matrix::Ones(3, 2)), InvalidArgument);
}
