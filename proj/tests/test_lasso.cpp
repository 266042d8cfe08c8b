#include <doctest.h>

#include "edf/experiments.hpp"
#include "edf/lasso.hpp"
#include "edf/projections.hpp"
#include "edf/smoothers.hpp"

#include <cmath>

using namespace edf;

static Matrix random_matrix(RngStream& rng, Index r, Index c) {
    return Matrix::NullaryExpr(r, c, [&] { return rng.normal(); });
}

static double soft(double z, double t) { return z > t ? z - t : (z < -t ? z + t : 0.0); }

static void check_kkt(const Matrix& x, const Vector& y, const LassoSolution& s, double lambda, double tol) {
    const Vector g = 2.0 * x.transpose() * (y - x * s.beta);
    for (Index j = 0; j < s.beta.size(); ++j) {
        if (s.beta[j] != 0.0)
            CHECK(std::abs(g[j] - lambda * (s.beta[j] > 0 ? 1.0 : -1.0)) <= tol * (1 + lambda));
        else
            CHECK(std::abs(g[j]) <= lambda + tol);
    }
}

TEST_CASE("penalized: lambda = 0 is OLS") {
    RngStream rng(1, 0);
    const Matrix xm = random_matrix(rng, 25, 4);
    const DesignMatrix x(xm);
    const Vector y = random_matrix(rng, 25, 1);
    const LassoSolution s = lasso_penalized(x, y, 0.0);
    CHECK((s.mu_hat - ridge_fit(RidgeSpec(x, 0.0), y)).norm() <= 1e-8);
    CHECK(stein_df_penalized(s) == 4);
}

TEST_CASE("penalized: large lambda zeroes everything") {
    RngStream rng(2, 0);
    const Matrix xm = random_matrix(rng, 25, 4);
    const Vector y = random_matrix(rng, 25, 1);
    const double lmax = 2.0 * (xm.transpose() * y).cwiseAbs().maxCoeff();
    const LassoSolution s = lasso_penalized(DesignMatrix(xm), y, lmax);
    CHECK(s.beta.isZero(0.0));
    CHECK(s.active_set.empty());
    CHECK(stein_df_penalized(s) == 0);
}

TEST_CASE("penalized: orthonormal design soft-thresholds at lambda / 2") {
    RngStream rng(3, 0);
    const Matrix q = Eigen::HouseholderQR<Matrix>(random_matrix(rng, 12, 4)).householderQ() * Matrix::Identity(12, 4);
    const Vector y = 2.0 * random_matrix(rng, 12, 1);
    for (double lambda : {0.1, 0.8, 2.0}) {
        const LassoSolution s = lasso_penalized(DesignMatrix(q), y, lambda);
        const Vector z = q.transpose() * y;
        for (Index j = 0; j < 4; ++j) CHECK(std::abs(s.beta[j] - soft(z[j], lambda / 2)) <= 1e-10);
    }
}

TEST_CASE("penalized: KKT, monotone objective, shrinking l1 path") {
    RngStream rng(4, 0);
    const Matrix xm = random_matrix(rng, 30, 6);
    const DesignMatrix x(xm);
    const LassoSolver solver(x);
    const Vector y = xm * Vector::LinSpaced(6, -1, 1) + random_matrix(rng, 30, 1);
    LassoOptions opts;
    opts.record_objective = true;
    opts.polish = false;
    double prev_l1 = INFINITY;
    for (double lambda : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 30.0}) {
        const LassoSolution s = solver.penalized(y, lambda, opts);
        check_kkt(xm, y, s, lambda, 1e-8);
        for (std::size_t k = 1; k < s.objective_trace.size(); ++k)
            CHECK(s.objective_trace[k] <= s.objective_trace[k - 1] * (1 + 1e-14));
        const double l1 = s.beta.lpNorm<1>();
        CHECK(l1 <= prev_l1 + 1e-9);
        prev_l1 = l1;
        for (Index j = 0; j < 6; ++j) {
            const bool in = std::find(s.active_set.begin(), s.active_set.end(), j) != s.active_set.end();
            if (!in) CHECK(s.beta[j] == 0.0);
        }
    }
    CHECK_THROWS_AS(solver.penalized(y, -1.0), InvalidArgument);
}

TEST_CASE("constrained: examples") {
    RngStream rng(5, 0);
    const Matrix xm = random_matrix(rng, 20, 3);
    const DesignMatrix x(xm);
    const Vector y = random_matrix(rng, 20, 1);
    const Vector ols = RidgeSpec(x, 0.0).coefficients(y);

    const LassoSolution big = lasso_constrained(x, y, 2.0 * ols.lpNorm<1>());
    CHECK((big.beta - ols).norm() <= 1e-8);
    CHECK(!big.constraint_active);
    CHECK(stein_df_constrained(big) == 3);

    const LassoSolution zero = lasso_constrained(x, y, 0.0);
    CHECK(zero.beta.isZero(0.0));
    CHECK(zero.mu_hat.isZero(0.0));
    CHECK(stein_df_constrained(zero) == 0);

    CHECK_THROWS_AS(lasso_constrained(x, y, -1.0), InvalidArgument);
    CHECK_THROWS_AS(stein_df_constrained(big.form == LassoForm::constrained ? lasso_penalized(x, y, 1.0) : big),
                    InvalidArgument);
    CHECK_THROWS_AS(stein_df_penalized(big), InvalidArgument);
}

TEST_CASE("constrained: feasibility and the |A| - 1 branch") {
    RngStream rng(6, 0);
    const Matrix xm = random_matrix(rng, 20, 4);
    const DesignMatrix x(xm);
    const Vector y = xm * Vector::Ones(4) + random_matrix(rng, 20, 1);
    const LassoSolver solver(x);
    for (double s : {0.1, 0.5, 1.0, 2.0, 3.0}) {
        const LassoSolution sol = solver.constrained(y, s);
        CHECK(sol.beta.lpNorm<1>() <= s * (1 + 1e-10));
        CHECK(sol.constraint_active);
        CHECK(stein_df_constrained(sol) == static_cast<int>(sol.active_set.size()) - 1);
    }
}

TEST_CASE("duality round trip between the two forms") {
    RngStream rng(7, 0);
    const Matrix xm = random_matrix(rng, 30, 5);
    const DesignMatrix x(xm);
    const LassoSolver solver(x);
    for (int k = 0; k < 10; ++k) {
        const Vector y = xm * random_matrix(rng, 5, 1) + random_matrix(rng, 30, 1);
        for (double lambda : {0.3, 2.0, 8.0}) {
            const LassoSolution pen = solver.penalized(y, lambda);
            const double s = pen.beta.lpNorm<1>();
            if (s == 0.0) continue;
            const LassoSolution con = solver.constrained(y, s);
            CHECK((pen.mu_hat - con.mu_hat).norm() <= 1e-6);
        }
    }
}

TEST_CASE("projecting onto the column space first does not change the constrained fit") {
    RngStream rng(8, 0);
    const Matrix xm = random_matrix(rng, 15, 4);
    const DesignMatrix x(xm);
    const LassoSolver solver(x);
    for (int k = 0; k < 20; ++k) {
        const Vector y = random_matrix(rng, 15, 1) * 2.0;
        const Vector py = project_subspace(y, x.left_vectors());
        const double s = 0.2 + rng.uniform();
        CHECK((solver.constrained(y, s).mu_hat - solver.constrained(py, s).mu_hat).norm() <= 1e-8);
    }
}

TEST_CASE("counterexample design") {
    const Matrix x = lasso_counterexample_design();
    CHECK(x.rows() == 1001);
    CHECK(x.cols() == 3);
    for (Index j = 0; j < 3; ++j) CHECK(x.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
    const Matrix g = x.transpose() * x;
    CHECK(std::abs(g(0, 1)) < 1e-12);
    CHECK(g(0, 2) == doctest::Approx(g(1, 2)));
    const Vector mu = lasso_counterexample_mean();
    CHECK((mu - x * Eigen::Vector3d(1, 1, -0.1)).norm() < 1e-14);
}

TEST_CASE("active set size can fall as lambda decreases") {
    // path on the counterexample mean: x3 enters then leaves
    const LassoSolver solver{DesignMatrix(lasso_counterexample_design())};
    const Vector mu = lasso_counterexample_mean();
    std::vector<std::size_t> sizes;
    for (int k = 0; k <= 200; ++k) {
        const double lambda = 3.0 * std::pow(1e-3, k / 200.0);
        sizes.push_back(solver.penalized(mu, lambda).active_set.size());
    }
    bool decreased = false;
    for (std::size_t k = 1; k < sizes.size(); ++k) decreased = decreased || sizes[k] < sizes[k - 1];
    CHECK(decreased);
}

TEST_CASE("active indices rule") {
    Vector b(4);
    b << 0.0, 1e-9, -0.5, 2.0;
    CHECK(active_indices(b) == std::vector<Index>{2, 3});
    b << 0.0, 5e-8, 0.0, 10.0;
    CHECK(active_indices(b) == std::vector<Index>{3});
}
