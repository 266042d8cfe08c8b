#pragma once

#include "edf/core.hpp"

#include <optional>

namespace edf {

/// mu_hat = S y with S fixed.
class SmootherMatrix {
public:
    /// `claims_symmetric` is verified to 1e-10 (max-abs) and rejected when false.
    explicit SmootherMatrix(Matrix s, bool claims_symmetric = false);

    const Matrix& matrix() const noexcept { return s_; }
    Index size() const noexcept { return s_.rows(); }
    bool symmetric() const noexcept { return symmetric_; }
    Vector apply(const Vector& y) const { return s_ * y; }

private:
    Matrix s_;
    bool symmetric_;
};

/**
 * Ridge family: beta(lambda) = argmin ||y - X beta||^2 + lambda beta^T K beta.
 * K absent means K = I and the fit goes through the cached SVD; a general
 * symmetric K uses a Cholesky solve and requires X^T X + lambda K to be
 * positive definite.
 */
class RidgeSpec {
public:
    RidgeSpec(DesignMatrix design, double lambda, std::optional<Matrix> penalty = std::nullopt);

    const DesignMatrix& design() const noexcept { return design_; }
    double lambda() const noexcept { return lambda_; }
    const std::optional<Matrix>& penalty() const noexcept { return penalty_; }
    bool is_plain() const noexcept { return !penalty_.has_value(); }

    RidgeSpec with_lambda(double lambda) const;

    Vector coefficients(const Vector& y) const;
    Vector fit(const Vector& y) const;
    /// p x n map y -> beta.
    Matrix coefficient_operator() const;

private:
    DesignMatrix design_;
    double lambda_;
    std::optional<Matrix> penalty_;
    // (X^T X + lambda K) factor, general-K path only.
    Eigen::LLT<Matrix> normal_factor_;
};

Vector ridge_fit(const RidgeSpec& spec, const ObservationVector& y);
Vector ridge_fit(const RidgeSpec& spec, const Vector& y);

SmootherMatrix smoother_matrix(const RidgeSpec& spec);

double trace_df(const SmootherMatrix& s);
double trace_df(const Matrix& s);

/// sum_j d_j^2 / (d_j^2 + lambda), in df units.
double ridge_df_closed_form(const Vector& singular_values, double lambda);

/// (2/n) sum_i sigma_i^2 sum_j d_j^2/(d_j^2+lambda) u_ij^2, with u the left
/// singular vectors of X.
double hetero_ridge_optimism(const DesignMatrix& x, double lambda, const Vector& variances);

}  // namespace edf
