#pragma once

#include "edf/core.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace edf {

struct Fit {
    Vector mu_hat;
    std::optional<double> divergence;
};

/**
 * A modeling approach: deterministic map y -> mu_hat, optionally with an
 * analytic divergence sum_i d mu_hat_i / d y_i.
 *
 * Fitters whose divergence falls out of the fit itself (lasso active sets)
 * use joint(); everything else supplies plain functions.
 */
class FitterHandle {
public:
    using FitFn = std::function<Vector(const Vector&)>;
    using DivergenceFn = std::function<double(const Vector&)>;
    using JointFn = std::function<Fit(const Vector&)>;

    explicit FitterHandle(FitFn fit, DivergenceFn divergence = {});
    static FitterHandle joint(JointFn fit_with_divergence);

    Vector fit(const Vector& y) const;
    bool has_analytic_divergence() const noexcept;
    /// Fit plus the analytic divergence when one exists and is requested.
    Fit evaluate(const Vector& y, bool want_divergence) const;

private:
    FitterHandle() = default;

    FitFn fit_;
    DivergenceFn divergence_;
    JointFn joint_;
};

struct McConfig {
    long replicates = 5000;
    long batches = 50;
    std::uint64_t seed = 20240101;
    double fd_epsilon = 1e-5;
    int threads = 1;

    /// Throws InvalidArgument unless batches >= 2 divides replicates with
    /// at least two replicates per batch, fd_epsilon > 0 and threads >= 1.
    void validate() const;
};

/// A fitter threw on one replicate. The original message is kept.
class FitterFailure : public Error {
public:
    FitterFailure(long replicate, const std::string& what);
    long replicate() const noexcept { return replicate_; }

private:
    long replicate_;
};

struct MeanEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct ErrorEstimates {
    MeanEstimate train;
    MeanEstimate pred;
    /// Per-replicate pred - train; a direct estimate of the optimism.
    MeanEstimate gap;
    long replicates = 0;
};

struct SimulationRequest {
    bool covariance = true;
    /// Stein estimate scaled by this variance; requires gaussian noise.
    std::optional<double> stein_sigma2;
    bool errors = false;
};

struct SimulationSummary {
    std::optional<OptimismEstimate> covariance;
    std::optional<OptimismEstimate> stein;
    std::optional<ErrorEstimates> errors;
};

/**
 * One Monte Carlo pass serving every requested estimator.
 *
 * Replicate r draws its training y from substream r and, when errors are
 * requested, its test y from substream R + r. Replicates are grouped into
 * B contiguous batches; each batch is accumulated sequentially and the
 * batches are merged in index order, so results do not depend on
 * cfg.threads. Standard errors are the standard deviation of the B batch
 * estimates divided by sqrt(B).
 */
SimulationSummary simulate(const FitterHandle& fitter, const NoiseModel& noise, const McConfig& cfg,
                           const SimulationRequest& request);

/// (2/n) sum_i cov(mu_hat_i, y_i), sample covariances with 1/(R-1).
OptimismEstimate mc_optimism_covariance(const FitterHandle& fitter, const NoiseModel& noise, const McConfig& cfg);

/// (2 sigma2 / n) E[divergence]; finite differences when the fitter has no
/// analytic divergence. Throws EstimatorError for non-gaussian noise.
OptimismEstimate mc_optimism_stein(const FitterHandle& fitter, const NoiseModel& noise, double sigma2,
                                   const McConfig& cfg);

ErrorEstimates mc_errors(const FitterHandle& fitter, const NoiseModel& noise, const McConfig& cfg);

/// Central difference quotients [mu_i(y + h e_i) - mu_i(y - h e_i)] / (realized 2h),
/// h = eps (1 + |y_i|).
Vector central_differences(const FitterHandle& fitter, const Vector& y, double eps);

double finite_difference_divergence(const FitterHandle& fitter, const Vector& y, double eps);

/// max_i (small_i - large_i) over the central difference quotients.
double max_dominance_violation(const FitterHandle& small, const FitterHandle& large, const Vector& y, double eps);

/// True iff every diagonal difference quotient of `small` is <= that of `large` + 1e-8.
bool per_coordinate_dominance(const FitterHandle& small, const FitterHandle& large, const Vector& y, double eps);

}  // namespace edf
