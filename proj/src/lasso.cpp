#include "edf/lasso.hpp"

#include "edf/projections.hpp"

#include <cmath>
#include <string>

namespace edf {

namespace {

double soft_threshold(double value, double threshold) {
    if (value > threshold) return value - threshold;
    if (value < -threshold) return value + threshold;
    return 0.0;
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Max KKT violation of the penalized problem given half-gradient h = c - G beta.
double penalized_kkt_excess(const Vector& beta, const Vector& h, double lambda, double tol) {
    double worst = -1.0;
    for (Index j = 0; j < beta.size(); ++j) {
        const double g = 2.0 * h[j];
        double excess;
        if (beta[j] != 0.0) excess = std::abs(g - lambda * sign(beta[j])) - tol * (1.0 + lambda);
        else excess = std::abs(g) - (lambda + tol);
        worst = std::max(worst, excess);
    }
    return worst;
}

}  // namespace

std::vector<Index> active_indices(const Vector& beta) {
    const double scale = std::max(1.0, beta.size() > 0 ? beta.cwiseAbs().maxCoeff() : 0.0);
    std::vector<Index> active;
    for (Index j = 0; j < beta.size(); ++j)
        if (std::abs(beta[j]) > 1e-8 * scale) active.push_back(j);
    return active;
}

LassoSolver::LassoSolver(const DesignMatrix& design)
    : x_(design.entries()), gram_(design.entries().transpose() * design.entries()) {
    const double dmax = design.singular_values()[0];
    step_scale_ = dmax * dmax;
}

double LassoSolver::smooth_part(double yty, const Vector& c, const Vector& beta, const Vector& gbeta) const {
    return yty - 2.0 * c.dot(beta) + beta.dot(gbeta);
}

double LassoSolver::objective(const Vector& y, const Vector& beta, double lambda) const {
    return (y - x_ * beta).squaredNorm() + lambda * beta.lpNorm<1>();
}

void LassoSolver::finish(LassoSolution& sol) const {
    sol.mu_hat = x_ * sol.beta;
    sol.active_set = active_indices(sol.beta);
}

LassoSolution LassoSolver::penalized(const Vector& y, double lambda, const LassoOptions& options) const {
    if (!(lambda >= 0.0)) throw InvalidArgument("lasso_penalized: lambda must be >= 0");
    if (!(options.tol > 0.0)) throw InvalidArgument("lasso_penalized: tol must be > 0");
    if (y.size() != x_.rows()) throw InvalidArgument("lasso_penalized: y length must equal n");

    const Index p = gram_.cols();
    const Vector c = x_.transpose() * y;
    const double yty = y.squaredNorm();
    const double half_lambda = 0.5 * lambda;

    LassoSolution sol;
    sol.form = LassoForm::penalized;
    sol.lambda = lambda;
    sol.beta = Vector::Zero(p);
    Vector gbeta = Vector::Zero(p);

    bool converged = false;
    long sweep = 0;
    while (sweep < options.max_iter) {
        ++sweep;
        for (Index j = 0; j < p; ++j) {
            const double gjj = gram_(j, j);
            if (gjj <= 0.0) continue;
            const double old = sol.beta[j];
            const double partial = c[j] - gbeta[j] + gjj * old;
            const double updated = soft_threshold(partial, half_lambda) / gjj;
            if (updated != old) {
                gbeta.noalias() += gram_.col(j) * (updated - old);
                sol.beta[j] = updated;
            }
        }
        if (options.record_objective)
            sol.objective_trace.push_back(smooth_part(yty, c, sol.beta, gbeta) + lambda * sol.beta.lpNorm<1>());
        if (penalized_kkt_excess(sol.beta, c - gbeta, lambda, options.tol) <= 0.0) {
            gbeta.noalias() = gram_ * sol.beta;  // drop accumulated drift before the final check
            if (penalized_kkt_excess(sol.beta, c - gbeta, lambda, options.tol) <= 0.0) {
                converged = true;
                break;
            }
        }
    }
    sol.iterations = sweep;
    if (!converged)
        throw NumericalError("lasso_penalized: KKT conditions not met after " + std::to_string(sweep) + " sweeps");

    if (options.polish) polish_penalized(sol, c, options.tol);
    finish(sol);
    return sol;
}

bool LassoSolver::polish_penalized(LassoSolution& sol, const Vector& c, double tol) const {
    const std::vector<Index> active = active_indices(sol.beta);
    if (active.empty()) return false;
    const Index k = static_cast<Index>(active.size());
    Matrix gaa(k, k);
    Vector rhs(k);
    for (Index a = 0; a < k; ++a) {
        for (Index b = 0; b < k; ++b) gaa(a, b) = gram_(active[a], active[b]);
        rhs[a] = c[active[a]] - 0.5 * sol.lambda * sign(sol.beta[active[a]]);
    }
    Eigen::LDLT<Matrix> ldlt(gaa);
    if (ldlt.info() != Eigen::Success) return false;
    const Vector solved = ldlt.solve(rhs);
    Vector candidate = Vector::Zero(sol.beta.size());
    for (Index a = 0; a < k; ++a) {
        if (sign(solved[a]) != sign(sol.beta[active[a]])) return false;
        candidate[active[a]] = solved[a];
    }
    if (!candidate.allFinite()) return false;
    if (penalized_kkt_excess(candidate, c - gram_ * candidate, sol.lambda, tol) > 0.0) return false;
    sol.beta = candidate;
    return true;
}

LassoSolution LassoSolver::constrained(const Vector& y, double radius, const LassoOptions& options) const {
    if (!(radius >= 0.0)) throw InvalidArgument("lasso_constrained: radius must be >= 0");
    if (!(options.tol > 0.0)) throw InvalidArgument("lasso_constrained: tol must be > 0");
    if (y.size() != x_.rows()) throw InvalidArgument("lasso_constrained: y length must equal n");

    const Index p = gram_.cols();
    const Vector c = x_.transpose() * y;
    const double yty = y.squaredNorm();

    LassoSolution sol;
    sol.form = LassoForm::constrained;
    sol.radius = radius;
    sol.beta = Vector::Zero(p);

    if (radius > 0.0 && step_scale_ > 0.0) {
        Vector gbeta = Vector::Zero(p);
        double obj = yty;
        bool converged = false;
        long iter = 0;
        while (iter < options.max_iter) {
            ++iter;
            const Vector next = project_l1_ball(sol.beta - (gbeta - c) / step_scale_, radius);
            const Vector gnext = gram_ * next;
            const double obj_next = smooth_part(yty, c, next, gnext);
            const double decrease = obj - obj_next;
            const double step = (next - sol.beta).cwiseAbs().maxCoeff();
            sol.beta = next;
            gbeta = gnext;
            obj = obj_next;
            if (options.record_objective) sol.objective_trace.push_back(obj);
            const double scale = 1.0 + sol.beta.cwiseAbs().maxCoeff();
            if (decrease <= options.tol * (1.0 + std::abs(obj)) && step <= options.tol * scale) {
                converged = true;
                break;
            }
        }
        sol.iterations = iter;
        if (!converged)
            throw NumericalError("lasso_constrained: no convergence after " + std::to_string(iter) + " iterations");
        if (options.polish) polish_constrained(sol, c, options.tol);
    }

    sol.constraint_active = radius - sol.beta.lpNorm<1>() <= options.active_tol * (1.0 + radius);
    finish(sol);
    return sol;
}

bool LassoSolver::polish_constrained(LassoSolution& sol, const Vector& c, double tol) const {
    const double radius = sol.radius;
    const double slack_tol = 1e-6 * (1.0 + radius);
    const Index p = gram_.cols();

    if (radius - sol.beta.lpNorm<1>() > slack_tol) {
        // Interior: the unconstrained least-squares solution, if unique and feasible.
        Eigen::LDLT<Matrix> ldlt(gram_);
        if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
        const Vector ols = ldlt.solve(c);
        if (!ols.allFinite() || ols.lpNorm<1>() > radius) return false;
        if ((gram_ * ols - c).cwiseAbs().maxCoeff() > tol * (1.0 + c.cwiseAbs().maxCoeff())) return false;
        sol.beta = ols;
        return true;
    }

    const std::vector<Index> active = active_indices(sol.beta);
    if (active.empty()) return false;
    const Index k = static_cast<Index>(active.size());
    // [G_AA sigma; sigma^T 0] [beta_A; nu] = [c_A; s]
    Matrix kkt = Matrix::Zero(k + 1, k + 1);
    Vector rhs(k + 1);
    for (Index a = 0; a < k; ++a) {
        for (Index b = 0; b < k; ++b) kkt(a, b) = gram_(active[a], active[b]);
        const double sg = sign(sol.beta[active[a]]);
        kkt(a, k) = sg;
        kkt(k, a) = sg;
        rhs[a] = c[active[a]];
    }
    rhs[k] = radius;
    Eigen::FullPivLU<Matrix> lu(kkt);
    if (!lu.isInvertible()) return false;
    const Vector solved = lu.solve(rhs);
    if (!solved.allFinite()) return false;
    const double nu = solved[k];
    if (nu < -tol) return false;

    Vector candidate = Vector::Zero(p);
    for (Index a = 0; a < k; ++a) {
        if (sign(solved[a]) != sign(sol.beta[active[a]])) return false;
        candidate[active[a]] = solved[a];
    }
    const Vector h = c - gram_ * candidate;
    for (Index j = 0; j < p; ++j) {
        if (candidate[j] != 0.0) continue;
        if (std::abs(h[j]) > nu + tol * (1.0 + std::abs(nu))) return false;
    }
    // Never accept a point that is worse than the iterate it replaces.
    if (smooth_part(0.0, c, candidate, gram_ * candidate) >
        smooth_part(0.0, c, sol.beta, gram_ * sol.beta) + 1e-12 * (1.0 + c.squaredNorm()))
        return false;
    sol.beta = candidate;
    return true;
}

LassoSolution lasso_penalized(const DesignMatrix& x, const Vector& y, double lambda, double tol, long max_iter) {
    LassoOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    return LassoSolver(x).penalized(y, lambda, options);
}

LassoSolution lasso_constrained(const DesignMatrix& x, const Vector& y, double radius, double tol, long max_iter) {
    LassoOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    return LassoSolver(x).constrained(y, radius, options);
}

int stein_df_penalized(const LassoSolution& sol) {
    if (sol.form != LassoForm::penalized) throw InvalidArgument("stein_df_penalized: solution is not penalized");
    return static_cast<int>(sol.active_set.size());
}

int stein_df_constrained(const LassoSolution& sol) {
    if (sol.form != LassoForm::constrained)
        throw InvalidArgument("stein_df_constrained: solution is not constrained");
    const int size = static_cast<int>(sol.active_set.size());
    return (sol.constraint_active && size >= 1) ? size - 1 : size;
}

}  // namespace edf
