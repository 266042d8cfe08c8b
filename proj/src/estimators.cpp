#include "edf/estimators.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace edf {

FitterHandle::FitterHandle(FitFn fit, DivergenceFn divergence)
    : fit_(std::move(fit)), divergence_(std::move(divergence)) {
    if (!fit_) throw InvalidArgument("FitterHandle: fit function is empty");
}

FitterHandle FitterHandle::joint(JointFn fit_with_divergence) {
    if (!fit_with_divergence) throw InvalidArgument("FitterHandle: joint function is empty");
    FitterHandle handle;
    handle.joint_ = std::move(fit_with_divergence);
    return handle;
}

Vector FitterHandle::fit(const Vector& y) const {
    if (joint_) return joint_(y).mu_hat;
    return fit_(y);
}

bool FitterHandle::has_analytic_divergence() const noexcept {
    return static_cast<bool>(joint_) || static_cast<bool>(divergence_);
}

Fit FitterHandle::evaluate(const Vector& y, bool want_divergence) const {
    if (joint_) {
        Fit f = joint_(y);
        if (!want_divergence) f.divergence.reset();
        return f;
    }
    Fit f{fit_(y), std::nullopt};
    if (want_divergence && divergence_) f.divergence = divergence_(y);
    return f;
}

void McConfig::validate() const {
    if (batches < 2) throw InvalidArgument("McConfig: batches must be >= 2");
    if (replicates < 2) throw InvalidArgument("McConfig: replicates must be >= 2");
    if (replicates % batches != 0) throw InvalidArgument("McConfig: batches must divide replicates");
    if (replicates / batches < 2) throw InvalidArgument("McConfig: need at least two replicates per batch");
    if (!(fd_epsilon > 0.0)) throw InvalidArgument("McConfig: fd_epsilon must be > 0");
    if (threads < 1) throw InvalidArgument("McConfig: threads must be >= 1");
}

FitterFailure::FitterFailure(long replicate, const std::string& what)
    : Error("fitter failed on replicate " + std::to_string(replicate) + ": " + what), replicate_(replicate) {}

Vector central_differences(const FitterHandle& fitter, const Vector& y, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("central_differences: eps must be > 0");
    Vector out(y.size());
    Vector probe = y;
    for (Index i = 0; i < y.size(); ++i) {
        const double h = eps * (1.0 + std::abs(y[i]));
        const double up = y[i] + h;
        const double down = y[i] - h;
        probe[i] = up;
        const double f_up = fitter.fit(probe)[i];
        probe[i] = down;
        const double f_down = fitter.fit(probe)[i];
        probe[i] = y[i];
        out[i] = (f_up - f_down) / (up - down);
    }
    return out;
}

double finite_difference_divergence(const FitterHandle& fitter, const Vector& y, double eps) {
    return central_differences(fitter, y, eps).sum();
}

double max_dominance_violation(const FitterHandle& small, const FitterHandle& large, const Vector& y, double eps) {
    return (central_differences(small, y, eps) - central_differences(large, y, eps)).maxCoeff();
}

bool per_coordinate_dominance(const FitterHandle& small, const FitterHandle& large, const Vector& y, double eps) {
    return max_dominance_violation(small, large, y, eps) <= 1e-8;
}

namespace {

struct BatchAccumulator {
    long count = 0;
    // Covariance: running means and co-moment per coordinate.
    Eigen::ArrayXd mean_y;
    Eigen::ArrayXd mean_fit;
    Eigen::ArrayXd comoment;
    double divergence_sum = 0.0;
    double train_sum = 0.0;
    double pred_sum = 0.0;

    explicit BatchAccumulator(Index n)
        : mean_y(Eigen::ArrayXd::Zero(n)), mean_fit(Eigen::ArrayXd::Zero(n)), comoment(Eigen::ArrayXd::Zero(n)) {}

    void add_pair(const Vector& y, const Vector& fit) {
        ++count;
        const double k = static_cast<double>(count);
        const Eigen::ArrayXd dy = y.array() - mean_y;
        mean_y += dy / k;
        mean_fit += (fit.array() - mean_fit) / k;
        comoment += dy * (fit.array() - mean_fit);
    }

    double covariance_sum() const { return comoment.sum() / static_cast<double>(count - 1); }

    void merge(const BatchAccumulator& other) {
        const double na = static_cast<double>(count);
        const double nb = static_cast<double>(other.count);
        const double total = na + nb;
        const Eigen::ArrayXd dy = other.mean_y - mean_y;
        const Eigen::ArrayXd dfit = other.mean_fit - mean_fit;
        comoment += other.comoment + dy * dfit * (na * nb / total);
        mean_y += dy * (nb / total);
        mean_fit += dfit * (nb / total);
        count += other.count;
        divergence_sum += other.divergence_sum;
        train_sum += other.train_sum;
        pred_sum += other.pred_sum;
    }
};

MeanEstimate batch_mean_estimate(const std::vector<double>& batch_values, double overall) {
    const double b = static_cast<double>(batch_values.size());
    double mean = 0.0;
    for (double v : batch_values) mean += v;
    mean /= b;
    double ss = 0.0;
    for (double v : batch_values) ss += (v - mean) * (v - mean);
    return {overall, std::sqrt(ss / (b - 1.0) / b)};
}

}  // namespace

SimulationSummary simulate(const FitterHandle& fitter, const NoiseModel& noise, const McConfig& cfg,
                           const SimulationRequest& request) {
    cfg.validate();
    if (request.stein_sigma2) {
        if (!noise.is_gaussian())
            throw EstimatorError("Stein estimate requires gaussian noise; use the covariance estimator instead");
        if (!(*request.stein_sigma2 > 0.0)) throw InvalidArgument("Stein estimate needs sigma2 > 0");
    }

    const Index n = noise.size();
    const long per_batch = cfg.replicates / cfg.batches;
    const bool want_div = request.stein_sigma2.has_value();
    const bool analytic = fitter.has_analytic_divergence();

    std::vector<BatchAccumulator> batches(static_cast<std::size_t>(cfg.batches), BatchAccumulator(n));
    struct Failure {
        long replicate = -1;
        std::exception_ptr error;
    };
    std::vector<Failure> failures(static_cast<std::size_t>(cfg.batches));

    auto run_batch = [&](long b) {
        BatchAccumulator& acc = batches[static_cast<std::size_t>(b)];
        Vector y(n);
        Vector y_test(n);
        const long first = b * per_batch;
        for (long r = first; r < first + per_batch; ++r) {
            try {
                RngStream rng(cfg.seed, static_cast<std::uint64_t>(r));
                draw_into(noise, rng, y);
                Fit fit = fitter.evaluate(y, want_div && analytic);
                if (fit.mu_hat.size() != n) throw InvalidArgument("fitter returned a vector of the wrong length");
                if (!fit.mu_hat.allFinite()) throw NumericalError("fitter returned non-finite values");
                acc.add_pair(y, fit.mu_hat);
                if (want_div) {
                    const double div = (analytic && fit.divergence)
                                           ? *fit.divergence
                                           : finite_difference_divergence(fitter, y, cfg.fd_epsilon);
                    acc.divergence_sum += div;
                }
                if (request.errors) {
                    RngStream test_rng(cfg.seed, static_cast<std::uint64_t>(cfg.replicates + r));
                    draw_into(noise, test_rng, y_test);
                    acc.train_sum += training_error(fit.mu_hat, y);
                    acc.pred_sum += training_error(fit.mu_hat, y_test);
                }
            } catch (...) {
                failures[static_cast<std::size_t>(b)] = {r, std::current_exception()};
                return;
            }
        }
    };

    const int workers = static_cast<int>(std::min<long>(cfg.threads, cfg.batches));
    if (workers <= 1) {
        for (long b = 0; b < cfg.batches; ++b) run_batch(b);
    } else {
        std::atomic<long> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (long b = next.fetch_add(1); b < cfg.batches; b = next.fetch_add(1)) run_batch(b);
            });
    }

    for (const Failure& f : failures) {
        if (f.replicate < 0) continue;
        try {
            std::rethrow_exception(f.error);
        } catch (const EstimatorError&) {
            throw;
        } catch (const std::exception& e) {
            throw FitterFailure(f.replicate, e.what());
        }
    }

    const double nd = static_cast<double>(n);
    const double bcount = static_cast<double>(per_batch);
    SimulationSummary summary;

    BatchAccumulator total = batches.front();
    for (std::size_t b = 1; b < batches.size(); ++b) total.merge(batches[b]);

    if (request.covariance) {
        std::vector<double> values;
        values.reserve(batches.size());
        for (const auto& acc : batches) values.push_back(2.0 / nd * acc.covariance_sum());
        const MeanEstimate est = batch_mean_estimate(values, 2.0 / nd * total.covariance_sum());
        summary.covariance = OptimismEstimate(est.value, est.std_error, EstimateMethod::covariance_mc, cfg.replicates);
    }
    if (want_div) {
        const double scale = 2.0 * *request.stein_sigma2 / nd;
        std::vector<double> values;
        values.reserve(batches.size());
        for (const auto& acc : batches) values.push_back(scale * acc.divergence_sum / bcount);
        const MeanEstimate est =
            batch_mean_estimate(values, scale * total.divergence_sum / static_cast<double>(cfg.replicates));
        summary.stein = OptimismEstimate(est.value, est.std_error, EstimateMethod::stein_mc, cfg.replicates);
    }
    if (request.errors) {
        std::vector<double> train, pred, gap;
        for (const auto& acc : batches) {
            train.push_back(acc.train_sum / bcount);
            pred.push_back(acc.pred_sum / bcount);
            gap.push_back((acc.pred_sum - acc.train_sum) / bcount);
        }
        const double rd = static_cast<double>(cfg.replicates);
        ErrorEstimates errors;
        errors.train = batch_mean_estimate(train, total.train_sum / rd);
        errors.pred = batch_mean_estimate(pred, total.pred_sum / rd);
        errors.gap = batch_mean_estimate(gap, (total.pred_sum - total.train_sum) / rd);
        errors.replicates = cfg.replicates;
        summary.errors = errors;
    }
    return summary;
}

OptimismEstimate mc_optimism_covariance(const FitterHandle& fitter, const NoiseModel& noise, const McConfig& cfg) {
    return *simulate(fitter, noise, cfg, SimulationRequest{}).covariance;
}

OptimismEstimate mc_optimism_stein(const FitterHandle& fitter, const NoiseModel& noise, double sigma2,
                                   const McConfig& cfg) {
    SimulationRequest request;
    request.covariance = false;
    request.stein_sigma2 = sigma2;
    return *simulate(fitter, noise, cfg, request).stein;
}

ErrorEstimates mc_errors(const FitterHandle& fitter, const NoiseModel& noise, const McConfig& cfg) {
    SimulationRequest request;
    request.covariance = false;
    request.errors = true;
    return *simulate(fitter, noise, cfg, request).errors;
}

}  // namespace edf
