#include "edf/experiments.hpp"

#include "edf/lasso.hpp"
#include "edf/projections.hpp"
#include "edf/smoothers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace edf {

std::string_view to_string(RowKind kind) noexcept {
    switch (kind) {
        case RowKind::omega: return "omega";
        case RowKind::df: return "df";
        case RowKind::train: return "train";
        case RowKind::pred: return "pred";
    }
    return "unknown";
}

void ScenarioResult::sort_rows() {
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.param_value != b.param_value) return a.param_value < b.param_value;
        return a.estimator < b.estimator;
    });
}

const ResultRow& ScenarioResult::find(std::string_view param_name, double param_value, std::string_view estimator,
                                      RowKind kind) const {
    for (const auto& row : rows)
        if (row.param_name == param_name && row.param_value == param_value && row.estimator == estimator &&
            row.kind == kind)
            return row;
    std::ostringstream msg;
    msg << "no row for " << param_name << "=" << param_value << " estimator=" << estimator
        << " kind=" << to_string(kind);
    throw InvalidArgument(msg.str());
}

std::vector<ResultRow> ScenarioResult::select(std::string_view param_name, std::string_view estimator,
                                              RowKind kind) const {
    std::vector<ResultRow> out;
    for (const auto& row : rows)
        if (row.param_name == param_name && row.estimator == estimator && row.kind == kind) out.push_back(row);
    return out;
}

namespace {

constexpr std::uint64_t kTrialStride = 0x9e3779b97f4a7c15ULL;

std::uint64_t trial_seed(std::uint64_t seed, long trial) {
    return seed + kTrialStride * static_cast<std::uint64_t>(trial + 1);
}

Matrix random_normal_matrix(RngStream& rng, Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
    return m;
}

Vector random_normal_vector(RngStream& rng, Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = rng.normal();
    return v;
}

double log_uniform(RngStream& rng, double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.uniform());
}

std::string trial_label(long trial, std::string_view suffix = {}) {
    std::ostringstream s;
    s << "trial" << trial;
    if (!suffix.empty()) s << "." << suffix;
    return s.str();
}

struct RowSink {
    ScenarioResult& result;
    std::string scenario;
    std::uint64_t seed;

    void add(std::string param_name, double param_value, std::string_view estimator, RowKind kind, double estimate,
             double std_error, long replicates) const {
        result.rows.push_back(ResultRow{scenario, std::move(param_name), param_value, std::string(estimator), kind,
                                        estimate, std_error, replicates, seed});
    }

    void add_covariance(const std::string& name, double value, const SimulationSummary& s) const {
        const auto& cov = *s.covariance;
        add(name, value, "covariance_mc", RowKind::omega, cov.value, cov.std_error, cov.replicates);
        if (s.errors) {
            add(name, value, "covariance_mc", RowKind::train, s.errors->train.value, s.errors->train.std_error,
                s.errors->replicates);
            add(name, value, "covariance_mc", RowKind::pred, s.errors->pred.value, s.errors->pred.std_error,
                s.errors->replicates);
        }
    }
};

SimulationRequest covariance_and_errors() {
    SimulationRequest request;
    request.covariance = true;
    request.errors = true;
    return request;
}

}  // namespace

// ---------------------------------------------------------------------------

ScenarioResult run_toy_segment_disk(const McConfig& mc, ToyLaw law) {
    Vector base(2);
    base << 0.0, kToyY2;
    Vector variances(2);
    variances << 1.0 / 3.0, 0.0;
    const NoiseModel noise = law == ToyLaw::uniform ? NoiseModel::uniform_component(base, 0, -1.0, 1.0)
                                                    : NoiseModel::gaussian_diag(base, variances);

    const FitterHandle segment([](const Vector& y) { return project_segment(y, -1.0, 1.0); });
    const FitterHandle disk([](const Vector& y) { return project_ball(y, 1.0); });

    ScenarioResult result;
    const RowSink sink{result, law == ToyLaw::uniform ? "toy-segment-disk" : "toy-segment-disk-gaussian", mc.seed};
    sink.add_covariance("segment", 1.0, simulate(segment, noise, mc, covariance_and_errors()));
    sink.add_covariance("disk", 1.0, simulate(disk, noise, mc, covariance_and_errors()));
    result.sort_rows();
    return result;
}

ScenarioResult run_convexity_example(const McConfig& mc) {
    Vector mean(2);
    mean << 1.0, 0.0;
    const NoiseModel noise = NoiseModel::gaussian_iso(mean, kConvexitySigma * kConvexitySigma);

    std::vector<Vector> points{Vector(2), Vector(2)};
    points[0] << 0.0, -1.0;
    points[1] << 0.0, 1.0;
    const FitterHandle two_points([points](const Vector& y) { return project_finite_set(y, points); });
    Matrix axis = Matrix::Zero(2, 1);
    axis(1, 0) = 1.0;
    const FitterHandle vertical([axis](const Vector& y) { return project_subspace(y, axis); });

    ScenarioResult result;
    const RowSink sink{result, "convexity-example", mc.seed};
    sink.add_covariance("two_point_set", 1.0, simulate(two_points, noise, mc, covariance_and_errors()));
    sink.add_covariance("vertical_axis", 1.0, simulate(vertical, noise, mc, covariance_and_errors()));
    result.sort_rows();
    return result;
}

// ---------------------------------------------------------------------------

std::vector<double> genridge_df_profile(const DesignMatrix& x, const Matrix& penalty,
                                        const std::vector<double>& lambda_grid) {
    std::vector<double> df;
    df.reserve(lambda_grid.size());
    for (double lambda : lambda_grid) df.push_back(trace_df(smoother_matrix(RidgeSpec(x, lambda, penalty))));
    return df;
}

GenridgeSweep run_genridge_monotonicity(long trials, std::uint64_t seed, const std::vector<double>& lambda_grid) {
    if (trials < 1) throw InvalidArgument("run_genridge_monotonicity: trials must be >= 1");
    if (lambda_grid.empty()) throw InvalidArgument("run_genridge_monotonicity: empty lambda grid");
    std::vector<double> grid = lambda_grid;
    std::sort(grid.begin(), grid.end());

    GenridgeSweep sweep;
    sweep.lambda_grid = grid;
    sweep.trials = trials;
    const RowSink sink{sweep.result, "genridge-monotonicity", seed};
    constexpr Index n = 20;
    constexpr Index p = 5;
    for (long t = 0; t < trials; ++t) {
        RngStream rng(seed, static_cast<std::uint64_t>(t));
        const DesignMatrix x(random_normal_matrix(rng, n, p));
        const Index k = 1 + static_cast<Index>(rng.uniform() * p);
        const Matrix b = random_normal_matrix(rng, p, std::min(k, p));
        const Matrix penalty = b * b.transpose();
        const std::vector<double> df = genridge_df_profile(x, penalty, grid);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            sink.add(trial_label(t, "lambda"), grid[g], "closed_form", RowKind::df, df[g], 0.0, 0);
            if (g == 0) continue;
            const double increase = df[g] - df[g - 1];
            sweep.max_violation = std::max(sweep.max_violation, increase);
            if (increase > 1e-9) ++sweep.violations;
        }
    }
    sweep.result.sort_rows();
    return sweep;
}

// ---------------------------------------------------------------------------

Matrix lasso_counterexample_design() {
    constexpr Index n = kLassoN;
    const double a = std::sqrt(1.0 / static_cast<double>(n - 1));
    const double c = std::sqrt(3.0 / (2.0 * static_cast<double>(n - 1)));
    Matrix x(n, 3);
    for (Index row = 0; row < n; ++row) {
        const Index i = row + 1;  // 1-based observation index
        if (i < n) {
            const bool odd = i % 2 == 1;
            x(row, 0) = a;
            x(row, 1) = odd ? a : -a;
            x(row, 2) = odd ? c : 0.0;
        } else {
            x(row, 0) = 0.0;
            x(row, 1) = 0.0;
            x(row, 2) = 0.5;
        }
    }
    return x;
}

Vector lasso_counterexample_mean() {
    Vector beta(3);
    beta << 1.0, 1.0, -0.1;
    return lasso_counterexample_design() * beta;
}

std::vector<double> default_lasso_lambda_grid() {
    std::vector<double> grid;
    constexpr int points = 21;
    const double lo = std::log(0.01);
    const double hi = std::log(2.0);
    for (int k = 0; k < points; ++k) grid.push_back(std::exp(lo + (hi - lo) * k / (points - 1)));
    grid.push_back(0.1);
    grid.push_back(0.5);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<double> default_lasso_radius_grid() {
    // ||beta_OLS||_1 of the noiseless mean is |1| + |1| + |-0.1|.
    const double top = 2.1 * 1.1;
    std::vector<double> grid;
    constexpr int points = 21;
    for (int k = 0; k < points; ++k) grid.push_back(top * k / (points - 1));
    return grid;
}

ScenarioResult run_lasso_counterexample(const McConfig& mc, const std::vector<double>& lambda_grid,
                                        const std::vector<double>& s_grid, const LassoScenarioOptions& options) {
    const DesignMatrix design(lasso_counterexample_design());
    const LassoSolver solver(design);
    const double variance = options.noise_as_sd ? kLassoNoise * kLassoNoise : kLassoNoise;
    const NoiseModel noise = NoiseModel::gaussian_iso(lasso_counterexample_mean(), variance);
    const Index n = design.rows();

    SimulationRequest request;
    request.covariance = true;
    request.stein_sigma2 = variance;
    request.errors = true;

    ScenarioResult result;
    const RowSink sink{result, "example-4-lasso", mc.seed};
    auto emit = [&](const std::string& name, double value, const SimulationSummary& s) {
        const double to_df = static_cast<double>(n) / (2.0 * variance);
        const auto& stein = *s.stein;
        sink.add(name, value, "stein_mc", RowKind::omega, stein.value, stein.std_error, stein.replicates);
        sink.add(name, value, "stein_mc", RowKind::df, stein.value * to_df, stein.std_error * to_df,
                 stein.replicates);
        const auto& cov = *s.covariance;
        sink.add(name, value, "covariance_mc", RowKind::omega, cov.value, cov.std_error, cov.replicates);
        sink.add(name, value, "covariance_mc", RowKind::df, cov.value * to_df, cov.std_error * to_df,
                 cov.replicates);
        sink.add(name, value, "covariance_mc", RowKind::train, s.errors->train.value, s.errors->train.std_error,
                 s.errors->replicates);
        sink.add(name, value, "covariance_mc", RowKind::pred, s.errors->pred.value, s.errors->pred.std_error,
                 s.errors->replicates);
    };

    for (double lambda : lambda_grid) {
        const FitterHandle fitter = FitterHandle::joint([&solver, lambda](const Vector& y) {
            LassoSolution sol = solver.penalized(y, lambda);
            const double df = stein_df_penalized(sol);
            return Fit{std::move(sol.mu_hat), df};
        });
        emit("lambda", lambda, simulate(fitter, noise, mc, request));
    }
    for (double s : s_grid) {
        const FitterHandle fitter = FitterHandle::joint([&solver, s](const Vector& y) {
            LassoSolution sol = solver.constrained(y, s);
            const double df = stein_df_constrained(sol);
            return Fit{std::move(sol.mu_hat), df};
        });
        emit("s", s, simulate(fitter, noise, mc, request));
    }
    result.sort_rows();
    return result;
}

// ---------------------------------------------------------------------------

NoiseModel ridge_profile_noise(const ProfileOptions& options) {
    Vector mean(2);
    mean << 3.0, 10.0;
    Vector entries(2);
    entries << 0.1, 3.0;
    const Vector variances = options.noise_as_variance ? entries : Vector(entries.array().square());
    return NoiseModel::gaussian_diag(mean, variances);
}

std::vector<double> default_profile_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 18; ++k) grid.push_back(1.0 + 0.5 * k);
    return grid;
}

ScenarioResult run_ridge_profile(const McConfig& mc, const std::vector<double>& rl_grid,
                                 const ProfileOptions& options) {
    for (double r : rl_grid)
        if (!(r >= 1.0 && r <= 10.0)) throw InvalidArgument("run_ridge_profile: r_L must lie in [1, 10]");
    const NoiseModel noise = ridge_profile_noise(options);
    ScenarioResult result;
    const RowSink sink{result, "ridge-ellipsoid-profile", mc.seed};
    for (double r : rl_grid) {
        Vector radii(2);
        radii << r, kProfileEccentricity * r;
        const FitterHandle fitter([radii](const Vector& y) { return project_ellipsoid(y, radii); });
        sink.add_covariance("r_L", r, simulate(fitter, noise, mc, covariance_and_errors()));
    }
    result.sort_rows();
    return result;
}

// ---------------------------------------------------------------------------

Theorem2Sweep run_theorem2_sweep(long trials, std::uint64_t seed, const Theorem2Options& options) {
    if (trials < 1) throw InvalidArgument("run_theorem2_sweep: trials must be >= 1");
    constexpr Index n = 15;
    constexpr Index p = 4;

    Theorem2Sweep sweep;
    sweep.trials = trials;
    sweep.p = p;
    const RowSink sink{sweep.result, "theorem2-sweep", seed};

    LassoOptions lasso_options;
    lasso_options.tol = 1e-13;

    for (long t = 0; t < trials; ++t) {
        RngStream rng(seed, static_cast<std::uint64_t>(t));
        const DesignMatrix design(random_normal_matrix(rng, n, p));
        const Vector beta = random_normal_vector(rng, p);
        const NoiseModel noise = NoiseModel::gaussian_iso(design.entries() * beta, 1.0);
        const double s = (0.2 + 0.7 * rng.uniform()) * beta.lpNorm<1>();
        const double r = (0.2 + 0.7 * rng.uniform()) * beta.norm();

        const LassoSolver solver(design);
        const Matrix basis = design.left_vectors();
        const Vector radii = r * design.singular_values();

        const FitterHandle column_space([basis](const Vector& y) { return project_subspace(y, basis); });
        const FitterHandle l1 = FitterHandle::joint([&solver, s, lasso_options](const Vector& y) {
            LassoSolution sol = solver.constrained(y, s, lasso_options);
            const double df = stein_df_constrained(sol);
            return Fit{std::move(sol.mu_hat), df};
        });
        const FitterHandle ellipsoid([basis, radii](const Vector& y) {
            return Vector(basis * project_ellipsoid(basis.transpose() * y, radii));
        });

        for (long k = 0; k < options.points; ++k) {
            const Vector y = draw(noise, rng).values();
            for (const FitterHandle* f : {&l1, &ellipsoid}) {
                const double v = max_dominance_violation(*f, column_space, y, options.eps);
                sweep.max_violation = std::max(sweep.max_violation, v);
                if (v > 1e-6) ++sweep.violations;
            }
        }

        McConfig mc;
        mc.replicates = options.replicates;
        mc.batches = options.batches;
        mc.seed = trial_seed(seed, t);
        mc.threads = options.threads;
        SimulationRequest request;
        request.covariance = true;
        request.stein_sigma2 = 1.0;
        const double to_df = static_cast<double>(n) / 2.0;

        auto check = [&](const std::string& name, double value, const FitterHandle& f) {
            const SimulationSummary summary = simulate(f, noise, mc, request);
            for (const auto* est : {&*summary.covariance, &*summary.stein}) {
                const double df = est->value * to_df;
                const double se = est->std_error * to_df;
                if (df > static_cast<double>(p) + 3.0 * se) ++sweep.df_exceedances;
                sink.add(name, value, to_string(est->method), RowKind::df, df, se, est->replicates);
            }
        };
        check(trial_label(t, "l1"), s, l1);
        check(trial_label(t, "ellipsoid"), r, ellipsoid);
        sink.add(trial_label(t, "ols"), 0.0, "closed_form", RowKind::df,
                 trace_df(smoother_matrix(RidgeSpec(design, 0.0))), 0.0, 0);
    }
    sweep.result.sort_rows();
    return sweep;
}

// ---------------------------------------------------------------------------

namespace {

McConfig trial_mc(std::uint64_t seed, long trial, const RidgeCheckOptions& options) {
    McConfig mc;
    mc.replicates = options.replicates;
    mc.batches = options.batches;
    mc.seed = trial_seed(seed, trial);
    mc.threads = options.threads;
    return mc;
}

void record_z(RidgeCheckSweep& sweep, double closed, const OptimismEstimate& mc_est, double scale) {
    const double se = mc_est.std_error * scale;
    const double diff = std::abs(closed - mc_est.value * scale);
    const double z = se > 0.0 ? diff / se : (diff > 0.0 ? INFINITY : 0.0);
    sweep.max_abs_z = std::max(sweep.max_abs_z, z);
    if (diff > 3.0 * se) ++sweep.mc_failures;
}

}  // namespace

RidgeCheckSweep run_ridge_closed_form_check(long trials, std::uint64_t seed, const RidgeCheckOptions& options) {
    if (trials < 1) throw InvalidArgument("run_ridge_closed_form_check: trials must be >= 1");
    constexpr Index n = 50;
    constexpr Index p = 5;
    constexpr double sigma2 = 1.0;

    RidgeCheckSweep sweep;
    sweep.trials = trials;
    const RowSink sink{sweep.result, "ridge-closed-form", seed};
    for (long t = 0; t < trials; ++t) {
        RngStream rng(seed, static_cast<std::uint64_t>(t));
        const DesignMatrix design(random_normal_matrix(rng, n, p));
        const Vector beta = random_normal_vector(rng, p);
        const double lambda = log_uniform(rng, 0.1, 10.0);
        const RidgeSpec spec(design, lambda);
        const NoiseModel noise = NoiseModel::gaussian_iso(design.entries() * beta, sigma2);
        const FitterHandle fitter([spec](const Vector& y) { return spec.fit(y); });

        const double closed = ridge_df_closed_form(design.singular_values(), lambda);
        const OptimismEstimate est = mc_optimism_covariance(fitter, noise, trial_mc(seed, t, options));
        const double to_df = static_cast<double>(n) / (2.0 * sigma2);
        record_z(sweep, closed, est, to_df);

        const std::string name = trial_label(t);
        sink.add(name, lambda, "closed_form", RowKind::df, closed, 0.0, 0);
        sink.add(name, lambda, "covariance_mc", RowKind::df, est.value * to_df, est.std_error * to_df,
                 est.replicates);
    }
    sweep.result.sort_rows();
    return sweep;
}

RidgeCheckSweep run_hetero_ridge_check(long trials, std::uint64_t seed, const RidgeCheckOptions& options) {
    if (trials < 1) throw InvalidArgument("run_hetero_ridge_check: trials must be >= 1");
    constexpr Index n = 30;
    constexpr Index p = 4;

    RidgeCheckSweep sweep;
    sweep.trials = trials;
    const RowSink sink{sweep.result, "hetero-ridge-check", seed};
    for (long t = 0; t < trials; ++t) {
        RngStream rng(seed, static_cast<std::uint64_t>(t));
        const DesignMatrix design(random_normal_matrix(rng, n, p));
        const Vector beta = random_normal_vector(rng, p);
        Vector variances(n);
        for (Index i = 0; i < n; ++i) variances[i] = 0.2 + 2.8 * rng.uniform();
        const double lambda = log_uniform(rng, 0.1, 10.0);

        const RidgeSpec spec(design, lambda);
        const NoiseModel noise = NoiseModel::gaussian_diag(design.entries() * beta, variances);
        const FitterHandle fitter([spec](const Vector& y) { return spec.fit(y); });

        const double closed = hetero_ridge_optimism(design, lambda, variances);
        const OptimismEstimate est = mc_optimism_covariance(fitter, noise, trial_mc(seed, t, options));
        record_z(sweep, closed, est, 1.0);

        const std::string name = trial_label(t);
        sink.add(name, lambda, "closed_form", RowKind::omega, closed, 0.0, 0);
        sink.add(name, lambda, "covariance_mc", RowKind::omega, est.value, est.std_error, est.replicates);

        const double common = variances.mean();
        const double reduced = hetero_ridge_optimism(design, lambda, Vector::Constant(n, common));
        const double homo = 2.0 * common / static_cast<double>(n) *
                            ridge_df_closed_form(design.singular_values(), lambda);
        sweep.max_reduction_error = std::max(sweep.max_reduction_error, std::abs(reduced - homo));

        double previous = INFINITY;
        for (double grid_lambda : kHeteroLambdaGrid) {
            const double omega = hetero_ridge_optimism(design, grid_lambda, variances);
            if (omega > previous + 1e-12) ++sweep.monotonicity_violations;
            previous = omega;
            sink.add(trial_label(t, "grid"), grid_lambda, "closed_form", RowKind::omega, omega, 0.0, 0);
        }
    }
    sweep.result.sort_rows();
    return sweep;
}

// ---------------------------------------------------------------------------

McConfig make_mc_config(std::uint64_t seed, long replicates, int threads) {
    if (replicates < 4) throw InvalidArgument("replicates must be >= 4 (two batches of two)");
    McConfig mc;
    mc.seed = seed;
    mc.replicates = replicates;
    mc.threads = threads;
    mc.batches = 2;
    for (long b = std::min<long>(50, replicates / 2); b >= 2; --b) {
        if (replicates % b == 0) {
            mc.batches = b;
            break;
        }
    }
    mc.validate();
    return mc;
}

namespace {

std::string join(const std::vector<double>& values) {
    std::ostringstream s;
    for (std::size_t i = 0; i < values.size(); ++i) s << (i ? ", " : "") << values[i];
    return s.str();
}

std::vector<ScenarioInfo> build_registry() {
    std::vector<ScenarioInfo> list;

    list.push_back({"convexity-example", "convexity requirement: two-point set inside the vertical axis",
                    [] {
                        return std::string(
                            "n=2; y = (1, 0) + e, e ~ N(0, sigma^2 I) with sigma = 0.1\n"
                            "S: two-point set {(0,-1), (0,1)} (param two_point_set)\n"
                            "L: vertical axis y1 = 0 (param vertical_axis)\n"
                            "estimator: covariance_mc; R=1000000\n");
                    },
                    [](const RunOptions& o) {
                        return run_convexity_example(make_mc_config(o.seed, o.replicates.value_or(1000000), o.threads));
                    }});

    list.push_back({"example-4-lasso", "lasso counterexample: df vs. lambda (penalized) and s (constrained)",
                    [] {
                        std::ostringstream s;
                        s << "n=1001, p=3, R=5000\n"
                          << "x1 = sqrt(1/(n-1)) for i<n, 0 at i=n\n"
                          << "x2 = +-sqrt(1/(n-1)) (odd/even i<n), 0 at i=n\n"
                          << "x3 = sqrt(3/(2(n-1))) for odd i<n, 0 for even i<n, 0.5 at i=n\n"
                          << "y = x1 + x2 - 0.1 x3 + e, e ~ N(0, 0.02) (variance; --noise-as-sd reads 0.02 as sd)\n"
                          << "lambda grid: " << join(default_lasso_lambda_grid()) << "\n"
                          << "s grid: " << join(default_lasso_radius_grid()) << "\n"
                          << "--grid replaces both grids\n"
                          << "estimators: stein_mc (mean |A|, |A|-1 on a binding constraint), covariance_mc\n";
                        return s.str();
                    },
                    [](const RunOptions& o) {
                        const McConfig mc = make_mc_config(o.seed, o.replicates.value_or(5000), o.threads);
                        LassoScenarioOptions options;
                        options.noise_as_sd = o.noise_as_sd;
                        const auto lambdas = o.grid.value_or(default_lasso_lambda_grid());
                        const auto radii = o.grid.value_or(default_lasso_radius_grid());
                        return run_lasso_counterexample(mc, lambdas, radii, options);
                    }});

    list.push_back({"genridge-monotonicity", "generalized ridge with random PSD K: df monotone in lambda",
                    [] {
                        return "trials=100; X 20x5 N(0,1); K = B B^T, B 5xk, k uniform in 1..5\n"
                               "lambda grid: " + join(kGenridgeLambdaGrid) +
                               "\nestimator: closed_form trace of the smoother\n";
                    },
                    [](const RunOptions& o) {
                        return run_genridge_monotonicity(100, o.seed, o.grid.value_or(kGenridgeLambdaGrid)).result;
                    }});

    list.push_back({"hetero-ridge-check", "heteroscedastic ridge optimism closed form vs. covariance Monte Carlo",
                    [] {
                        return "trials=20; X 30x4 N(0,1); variances U(0.2, 3.2); lambda log-uniform on [0.1, 10]\n"
                               "R=5000 per trial; closed-form grid: " + join(kHeteroLambdaGrid) + "\n";
                    },
                    [](const RunOptions& o) {
                        RidgeCheckOptions options;
                        const McConfig mc = make_mc_config(o.seed, o.replicates.value_or(5000), o.threads);
                        options.replicates = mc.replicates;
                        options.batches = mc.batches;
                        options.threads = o.threads;
                        return run_hetero_ridge_check(20, o.seed, options).result;
                    }});

    list.push_back({"ridge-closed-form", "ridge df closed form (SVD shrinkage) vs. covariance Monte Carlo",
                    [] {
                        return std::string(
                            "trials=20; X 50x5 N(0,1); sigma^2 = 1; lambda log-uniform on [0.1, 10]; R=5000\n");
                    },
                    [](const RunOptions& o) {
                        RidgeCheckOptions options;
                        const McConfig mc = make_mc_config(o.seed, o.replicates.value_or(5000), o.threads);
                        options.replicates = mc.replicates;
                        options.batches = mc.batches;
                        options.threads = o.threads;
                        return run_ridge_closed_form_check(20, o.seed, options).result;
                    }});

    list.push_back({"ridge-ellipsoid-profile", "constrained ridge counterexample: optimism profile over r_L",
                    [] {
                        return "n=2; h=0.1; r_S=1; radii (r_L, h r_L)\n"
                               "y ~ N((3, 10), diag(0.1, 3)^2) (entries read as sd; --noise-as-variance reads them "
                               "as variances)\n"
                               "r_L grid: " + join(default_profile_grid()) +
                               "\nR=20000 per grid point; estimator: covariance_mc with 95% CI = 1.96 stderr\n";
                    },
                    [](const RunOptions& o) {
                        ProfileOptions options;
                        options.noise_as_variance = o.noise_as_variance;
                        return run_ridge_profile(make_mc_config(o.seed, o.replicates.value_or(20000), o.threads),
                                                 o.grid.value_or(default_profile_grid()), options);
                    }});

    list.push_back({"theorem2-sweep", "projections onto convex subsets of the column space have lower df",
                    [] {
                        return std::string(
                            "trials=100; X 15x4 N(0,1); mean X beta, beta ~ N(0, I); sigma^2 = 1\n"
                            "constraints: ||b||_1 <= s and ||b||_2 <= r, s and r at U(0.2, 0.9) of the true norm\n"
                            "dominance: 20 draws per trial, central differences eps=1e-4\n"
                            "df: covariance_mc and stein_mc, R=1000 per fitter\n");
                    },
                    [](const RunOptions& o) {
                        Theorem2Options options;
                        const McConfig mc = make_mc_config(o.seed, o.replicates.value_or(1000), o.threads);
                        options.replicates = mc.replicates;
                        options.batches = mc.batches;
                        options.threads = o.threads;
                        return run_theorem2_sweep(100, o.seed, options).result;
                    }});

    list.push_back({"toy-segment-disk", "toy counterexample: segment inside the unit disk, uniform law",
                    [] {
                        return std::string(
                            "n=2; y1 ~ U(-1, 1); y2 = 2 constant\n"
                            "S: segment [-1, 1] x {0} (param segment); L: unit disk (param disk)\n"
                            "estimator: covariance_mc; R=1000000\n");
                    },
                    [](const RunOptions& o) {
                        return run_toy_segment_disk(make_mc_config(o.seed, o.replicates.value_or(1000000), o.threads),
                                                    ToyLaw::uniform);
                    }});

    list.push_back({"toy-segment-disk-gaussian", "toy counterexample with gaussian noise of equal mean and variance",
                    [] {
                        return std::string(
                            "n=2; y ~ N((0, 2), diag(1/3, 0)); y2 = 2 constant\n"
                            "S: segment [-1, 1] x {0} (param segment); L: unit disk (param disk)\n"
                            "estimator: covariance_mc; R=1000000\n");
                    },
                    [](const RunOptions& o) {
                        return run_toy_segment_disk(make_mc_config(o.seed, o.replicates.value_or(1000000), o.threads),
                                                    ToyLaw::gaussian);
                    }});

    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return list;
}

}  // namespace

const std::vector<ScenarioInfo>& scenarios() {
    static const std::vector<ScenarioInfo> registry = build_registry();
    return registry;
}

const ScenarioInfo* find_scenario(std::string_view name) {
    for (const auto& s : scenarios())
        if (s.name == name) return &s;
    return nullptr;
}

}  // namespace edf
