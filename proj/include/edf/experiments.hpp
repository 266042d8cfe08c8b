#pragma once

#include "edf/core.hpp"
#include "edf/estimators.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace edf {

enum class RowKind { omega, df, train, pred };

std::string_view to_string(RowKind kind) noexcept;

struct ResultRow {
    std::string scenario;
    std::string param_name;
    double param_value = 0.0;
    std::string estimator;
    RowKind kind = RowKind::omega;
    double estimate = 0.0;
    double std_error = 0.0;
    long replicates = 0;
    std::uint64_t seed = 0;
};

struct ScenarioResult {
    std::vector<ResultRow> rows;

    /// Stable sort by (param_value, estimator).
    void sort_rows();
    /// The unique row matching all four keys; throws if absent.
    const ResultRow& find(std::string_view param_name, double param_value, std::string_view estimator,
                          RowKind kind) const;
    std::vector<ResultRow> select(std::string_view param_name, std::string_view estimator, RowKind kind) const;
};

// ---------------------------------------------------------------------------
// Toy segment-vs-disk example and the two-point convexity example.

enum class ToyLaw { uniform, gaussian };

inline constexpr double kToyY2 = 2.0;

/// y = (0, 2) + (e, 0); e ~ U(-1, 1) or N(0, 1/3). S: segment [-1,1] x {0}; L: unit disk.
ScenarioResult run_toy_segment_disk(const McConfig& mc, ToyLaw law);

inline constexpr double kConvexitySigma = 0.1;

/// y = (1, 0) + N(0, 0.1^2 I). S: {(0,-1), (0,1)}; L: the vertical axis.
ScenarioResult run_convexity_example(const McConfig& mc);

// ---------------------------------------------------------------------------
// Generalized ridge monotonicity (symmetric linear smoothers).

struct GenridgeSweep {
    ScenarioResult result;
    std::vector<double> lambda_grid;
    double max_violation = 0.0;   // largest df(lambda_{k+1}) - df(lambda_k), clipped at 0
    long violations = 0;          // count above 1e-9
    long trials = 0;
};

inline const std::vector<double> kGenridgeLambdaGrid{0.0, 0.1, 1.0, 10.0, 100.0};

/// tr(X (X^T X + lambda K)^-1 X^T) along `lambda_grid`.
std::vector<double> genridge_df_profile(const DesignMatrix& x, const Matrix& penalty,
                                        const std::vector<double>& lambda_grid);

/// Per trial: X is 20 x 5 standard normal, K = B B^T with B 5 x k (k uniform in 1..5).
GenridgeSweep run_genridge_monotonicity(long trials, std::uint64_t seed,
                                        const std::vector<double>& lambda_grid = kGenridgeLambdaGrid);

// ---------------------------------------------------------------------------
// Lasso counterexample.

inline constexpr Index kLassoN = 1001;
inline constexpr double kLassoNoise = 0.02;

/// The three-covariate design (n = 1001, unit-norm columns).
Matrix lasso_counterexample_design();
/// X (1, 1, -0.1)^T
Vector lasso_counterexample_mean();

struct LassoScenarioOptions {
    /// Read the 0.02 noise parameter as a standard deviation instead of a variance.
    bool noise_as_sd = false;
};

std::vector<double> default_lasso_lambda_grid();
std::vector<double> default_lasso_radius_grid();

/// Rows per grid point: stein_mc {omega, df} and covariance_mc {omega, df, train, pred};
/// param_name "lambda" (penalized) or "s" (constrained).
ScenarioResult run_lasso_counterexample(const McConfig& mc, const std::vector<double>& lambda_grid,
                                        const std::vector<double>& s_grid, const LassoScenarioOptions& options = {});

// ---------------------------------------------------------------------------
// Constrained ridge (ellipsoid) profile.

inline constexpr double kProfileEccentricity = 0.1;

struct ProfileOptions {
    /// Read diag(0.1, 3) as variances; the default reads the entries as standard deviations.
    bool noise_as_variance = false;
};

NoiseModel ridge_profile_noise(const ProfileOptions& options = {});
std::vector<double> default_profile_grid();

/// Rows per r_L: covariance_mc {omega, train, pred}; radii (r_L, 0.1 r_L).
ScenarioResult run_ridge_profile(const McConfig& mc, const std::vector<double>& rl_grid,
                                 const ProfileOptions& options = {});

// ---------------------------------------------------------------------------
// Projection onto convex subsets of a column space.

struct Theorem2Options {
    long points = 20;       // y values per trial for the dominance check
    double eps = 1e-4;      // finite-difference step
    long replicates = 1000; // Monte Carlo replicates per constrained fitter
    long batches = 50;
    int threads = 1;
};

struct Theorem2Sweep {
    ScenarioResult result;
    double max_violation = 0.0;  // over all trials, constraints, points and coordinates
    long violations = 0;         // count above 1e-6
    long df_exceedances = 0;     // constrained df > p + 3 SE
    long trials = 0;
    Index p = 0;
};

/// Per trial: X 15 x 4 standard normal, mean X beta with beta ~ N(0, I), unit noise.
/// Constrained fitters: {X b : ||b||_1 <= s} and {X b : ||b||_2 <= r}; larger: the column space.
Theorem2Sweep run_theorem2_sweep(long trials, std::uint64_t seed, const Theorem2Options& options = {});

// ---------------------------------------------------------------------------
// Ridge closed forms against Monte Carlo.

struct RidgeCheckOptions {
    long replicates = 5000;
    long batches = 50;
    int threads = 1;
};

struct RidgeCheckSweep {
    ScenarioResult result;
    long mc_failures = 0;              // |closed - MC| > 3 SE
    double max_abs_z = 0.0;
    long monotonicity_violations = 0;  // hetero only
    double max_reduction_error = 0.0;  // hetero only: equal variances vs the homoscedastic form
    long trials = 0;
};

/// n = 50, p = 5, sigma^2 = 1, lambda log-uniform on [0.1, 10].
RidgeCheckSweep run_ridge_closed_form_check(long trials, std::uint64_t seed, const RidgeCheckOptions& options = {});

inline const std::vector<double> kHeteroLambdaGrid{0.0, 0.1, 1.0, 10.0, 100.0};

/// n = 30, p = 4, variances uniform on [0.2, 3], lambda log-uniform on [0.1, 10] for the MC check.
RidgeCheckSweep run_hetero_ridge_check(long trials, std::uint64_t seed, const RidgeCheckOptions& options = {});

// ---------------------------------------------------------------------------
// Registry used by the command line.

struct RunOptions {
    std::uint64_t seed = 20240101;
    std::optional<long> replicates;
    std::optional<std::vector<double>> grid;
    bool noise_as_sd = false;
    bool noise_as_variance = false;
    int threads = 1;
};

struct ScenarioInfo {
    std::string name;
    std::string anchor;
    std::function<std::string()> describe;
    std::function<ScenarioResult(const RunOptions&)> run;
};

/// Alphabetical by name.
const std::vector<ScenarioInfo>& scenarios();
const ScenarioInfo* find_scenario(std::string_view name);

/// Monte Carlo settings for a replicate count: 50 batches when they divide
/// it, else the largest divisor below 50 leaving >= 2 replicates per batch.
McConfig make_mc_config(std::uint64_t seed, long replicates, int threads);

}  // namespace edf
