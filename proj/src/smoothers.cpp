#include "edf/smoothers.hpp"

#include <cmath>

namespace edf {

namespace {

double max_asymmetry(const Matrix& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

// d_j^2 / (d_j^2 + lambda); throws on 0/0.
Vector shrinkage_factors(const Vector& d, double lambda) {
    Vector f(d.size());
    const double dmax = d.size() > 0 ? d.maxCoeff() : 0.0;
    for (Index j = 0; j < d.size(); ++j) {
        const double d2 = d[j] * d[j];
        if (lambda == 0.0) {
            if (d[j] <= 1e-12 * dmax || d[j] == 0.0)
                throw NumericalError("ridge: singular system at lambda = 0 (rank-deficient design)");
            f[j] = 1.0;
        } else {
            f[j] = d2 / (d2 + lambda);
        }
    }
    return f;
}

// f_j / d_j, with zero for d_j = 0 (those directions are not fitted).
Vector coefficient_gains(const Vector& d, double lambda) {
    const Vector f = shrinkage_factors(d, lambda);
    Vector g(d.size());
    for (Index j = 0; j < d.size(); ++j) g[j] = d[j] > 0.0 ? f[j] / d[j] : 0.0;
    return g;
}

}  // namespace

SmootherMatrix::SmootherMatrix(Matrix s, bool claims_symmetric) : s_(std::move(s)), symmetric_(false) {
    if (s_.rows() != s_.cols()) throw InvalidArgument("smoother matrix must be square");
    if (!s_.allFinite()) throw InvalidArgument("smoother matrix has non-finite entries");
    if (claims_symmetric) {
        if (max_asymmetry(s_) > 1e-10) throw InvalidArgument("smoother matrix claimed symmetric but is not");
        symmetric_ = true;
    } else {
        symmetric_ = s_.size() == 0 || max_asymmetry(s_) <= 1e-10;
    }
}

RidgeSpec::RidgeSpec(DesignMatrix design, double lambda, std::optional<Matrix> penalty)
    : design_(std::move(design)), lambda_(lambda), penalty_(std::move(penalty)) {
    if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) throw InvalidArgument("ridge: lambda must be >= 0");
    const Index p = design_.cols();
    if (penalty_) {
        const Matrix& k = *penalty_;
        if (k.rows() != p || k.cols() != p) throw InvalidArgument("ridge: K must be p x p");
        if (max_asymmetry(k) > 1e-10) throw InvalidArgument("ridge: K must be symmetric");
        const Matrix& x = design_.entries();
        Matrix normal = x.transpose() * x + lambda_ * k;
        normal = 0.5 * (normal + normal.transpose());
        normal_factor_.compute(normal);
        if (normal_factor_.info() != Eigen::Success)
            throw NumericalError("ridge: X^T X + lambda K is not positive definite");
        // LLT succeeds on some semidefinite inputs; reject numerically singular pivots.
        const Vector diag = normal_factor_.matrixL().toDenseMatrix().diagonal();
        if (diag.minCoeff() <= 1e-12 * std::max(1.0, diag.maxCoeff()))
            throw NumericalError("ridge: X^T X + lambda K is singular");
    } else {
        shrinkage_factors(design_.singular_values(), lambda_);
    }
}

RidgeSpec RidgeSpec::with_lambda(double lambda) const { return RidgeSpec(design_, lambda, penalty_); }

Vector RidgeSpec::coefficients(const Vector& y) const {
    if (y.size() != design_.rows()) throw InvalidArgument("ridge: y length must equal n");
    if (penalty_) return normal_factor_.solve(design_.entries().transpose() * y);
    const Vector g = coefficient_gains(design_.singular_values(), lambda_);
    const Vector uty = design_.left_vectors().transpose() * y;
    return design_.right_vectors() * (g.array() * uty.array()).matrix();
}

Matrix RidgeSpec::coefficient_operator() const {
    if (penalty_) return normal_factor_.solve(design_.entries().transpose());
    const Vector g = coefficient_gains(design_.singular_values(), lambda_);
    return design_.right_vectors() * g.asDiagonal() * design_.left_vectors().transpose();
}

Vector RidgeSpec::fit(const Vector& y) const {
    if (y.size() != design_.rows()) throw InvalidArgument("ridge: y length must equal n");
    if (penalty_) return design_.entries() * coefficients(y);
    const Vector f = shrinkage_factors(design_.singular_values(), lambda_);
    const Matrix& u = design_.left_vectors();
    return u * (f.array() * (u.transpose() * y).array()).matrix();
}

Vector ridge_fit(const RidgeSpec& spec, const ObservationVector& y) { return spec.fit(y.values()); }
Vector ridge_fit(const RidgeSpec& spec, const Vector& y) { return spec.fit(y); }

SmootherMatrix smoother_matrix(const RidgeSpec& spec) {
    const DesignMatrix& design = spec.design();
    if (spec.is_plain()) {
        const Vector f = shrinkage_factors(design.singular_values(), spec.lambda());
        const Matrix& u = design.left_vectors();
        Matrix s = u * f.asDiagonal() * u.transpose();
        s = 0.5 * (s + s.transpose());
        return SmootherMatrix(std::move(s), true);
    }
    Matrix s = design.entries() * spec.coefficient_operator();
    s = 0.5 * (s + s.transpose());
    return SmootherMatrix(std::move(s), true);
}

double trace_df(const Matrix& s) {
    if (s.rows() != s.cols()) throw InvalidArgument("trace_df: matrix must be square");
    return s.trace();
}

double trace_df(const SmootherMatrix& s) { return s.matrix().trace(); }

double ridge_df_closed_form(const Vector& singular_values, double lambda) {
    if (!(lambda >= 0.0)) throw InvalidArgument("ridge_df_closed_form: lambda must be >= 0");
    if ((singular_values.array() < 0.0).any())
        throw InvalidArgument("ridge_df_closed_form: singular values must be >= 0");
    double df = 0.0;
    for (Index j = 0; j < singular_values.size(); ++j) {
        const double d2 = singular_values[j] * singular_values[j];
        if (d2 == 0.0 && lambda == 0.0)
            throw InvalidArgument("ridge_df_closed_form: d_j = 0 and lambda = 0 is undefined");
        df += d2 / (d2 + lambda);
    }
    return df;
}

double hetero_ridge_optimism(const DesignMatrix& x, double lambda, const Vector& variances) {
    if (variances.size() != x.rows()) throw InvalidArgument("hetero_ridge_optimism: variances length must be n");
    if ((variances.array() < 0.0).any()) throw InvalidArgument("hetero_ridge_optimism: variances must be >= 0");
    if (!(lambda >= 0.0)) throw InvalidArgument("hetero_ridge_optimism: lambda must be >= 0");
    const Vector& d = x.singular_values();
    const Matrix& u = x.left_vectors();
    double total = 0.0;
    for (Index i = 0; i < x.rows(); ++i) {
        double leverage = 0.0;
        for (Index j = 0; j < d.size(); ++j) {
            const double d2 = d[j] * d[j];
            if (d2 == 0.0) continue;
            leverage += d2 / (d2 + lambda) * u(i, j) * u(i, j);
        }
        total += variances[i] * leverage;
    }
    return 2.0 * total / static_cast<double>(x.rows());
}

}  // namespace edf
