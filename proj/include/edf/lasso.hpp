#pragma once

#include "edf/core.hpp"

#include <vector>

namespace edf {

enum class LassoForm { penalized, constrained };

struct LassoOptions {
    /// KKT tolerance (penalized) / step and objective-decrease tolerance (constrained).
    double tol = 1e-10;
    long max_iter = 200000;
    /// Relative slack below which ||beta||_1 = s counts as binding.
    double active_tol = 1e-6;
    /// Keep the objective value after every sweep / iteration.
    bool record_objective = false;
    /// Re-solve the identified active face exactly and keep it if it passes KKT.
    bool polish = true;
};

struct LassoSolution {
    Vector beta;
    Vector mu_hat;
    std::vector<Index> active_set;
    LassoForm form = LassoForm::penalized;
    double lambda = 0.0;        // penalized form
    double radius = 0.0;        // constrained form
    bool constraint_active = false;
    long iterations = 0;
    std::vector<double> objective_trace;
};

/**
 * Lasso solvers sharing the Gram matrix of one design.
 *
 * Penalized: minimizes ||y - X beta||^2 + lambda ||beta||_1 (no 1/2 or 1/n),
 * so the coordinate update soft-thresholds at lambda / 2.
 * Constrained: minimizes ||y - X beta||^2 over ||beta||_1 <= s by projected
 * gradient with step 1 / (2 d_max^2).
 */
class LassoSolver {
public:
    explicit LassoSolver(const DesignMatrix& design);

    LassoSolution penalized(const Vector& y, double lambda, const LassoOptions& options = {}) const;
    LassoSolution constrained(const Vector& y, double radius, const LassoOptions& options = {}) const;

    /// ||y - X beta||^2 + lambda ||beta||_1 (lambda = 0 gives the constrained objective).
    double objective(const Vector& y, const Vector& beta, double lambda) const;

    const Matrix& gram() const noexcept { return gram_; }

private:
    double smooth_part(double yty, const Vector& c, const Vector& beta, const Vector& gbeta) const;
    void finish(LassoSolution& sol) const;
    bool polish_penalized(LassoSolution& sol, const Vector& c, double tol) const;
    bool polish_constrained(LassoSolution& sol, const Vector& c, double tol) const;

    Matrix x_;
    Matrix gram_;
    double step_scale_;  // d_max^2
};

LassoSolution lasso_penalized(const DesignMatrix& x, const Vector& y, double lambda, double tol = 1e-10,
                              long max_iter = 200000);
LassoSolution lasso_constrained(const DesignMatrix& x, const Vector& y, double radius, double tol = 1e-10,
                                long max_iter = 200000);

/// |A|, the Stein df estimate for the penalized form.
int stein_df_penalized(const LassoSolution& sol);
/// |A| - 1 on a binding constraint with |A| >= 1, else |A|.
int stein_df_constrained(const LassoSolution& sol);

/// Indices with |beta_j| > 1e-8 * max(1, ||beta||_inf).
std::vector<Index> active_indices(const Vector& beta);

}  // namespace edf
