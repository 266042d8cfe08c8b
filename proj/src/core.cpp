#include "edf/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace edf {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace

ObservationVector::ObservationVector(Vector values) : values_(std::move(values)) {
    if (values_.size() < 1) throw InvalidArgument("observation vector must be non-empty");
    if (!all_finite(values_)) throw InvalidArgument("observation vector has non-finite entries");
}

DesignMatrix::DesignMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() < 1 || entries_.cols() < 1)
        throw InvalidArgument("design matrix must be non-empty");
    if (entries_.cols() > entries_.rows())
        throw InvalidArgument("design matrix must have p <= n");
    if (!entries_.allFinite()) throw InvalidArgument("design matrix has non-finite entries");

    Eigen::JacobiSVD<Matrix> svd(entries_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    left_ = svd.matrixU();
    singular_ = svd.singularValues();
    right_ = svd.matrixV();

    const double scale = entries_.norm();
    const double recon = (entries_ - left_ * singular_.asDiagonal() * right_.transpose()).norm();
    if (recon > 1e-10 * std::max(scale, 1e-300))
        throw NumericalError("SVD reconstruction error exceeds 1e-10 relative");
}

Index DesignMatrix::rank(double tol) const {
    if (singular_.size() == 0 || singular_[0] == 0.0) return 0;
    const double cut = tol * singular_[0];
    return static_cast<Index>((singular_.array() > cut).count());
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t substream) noexcept
    : seed_(master_seed), substream_(substream), key_(mix64(master_seed ^ mix64(substream + kGamma))) {}

std::uint64_t RngStream::next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
}

double RngStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open_low() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() noexcept {
    const double u1 = uniform_open_low();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

NoiseModel NoiseModel::gaussian_iso(Vector mean, double variance) {
    if (mean.size() < 1 || !all_finite(mean)) throw InvalidArgument("noise mean must be finite and non-empty");
    if (!(variance >= 0.0) || !std::isfinite(variance)) throw InvalidArgument("variance must be >= 0");
    NoiseModel m(NoiseKind::gaussian_iso, std::move(mean));
    m.iso_variance_ = variance;
    m.sd_ = Vector::Constant(m.size(), std::sqrt(variance));
    return m;
}

NoiseModel NoiseModel::gaussian_diag(Vector mean, Vector variances) {
    if (mean.size() < 1 || !all_finite(mean)) throw InvalidArgument("noise mean must be finite and non-empty");
    if (variances.size() != mean.size()) throw InvalidArgument("variances length must match mean");
    if (!all_finite(variances) || (variances.array() < 0.0).any())
        throw InvalidArgument("variances must be finite and >= 0");
    NoiseModel m(NoiseKind::gaussian_diag, std::move(mean));
    m.sd_ = variances.array().sqrt();
    m.diag_variances_ = std::move(variances);
    return m;
}

NoiseModel NoiseModel::uniform_component(Vector base, Index index, double lo, double hi) {
    if (base.size() < 1 || !all_finite(base)) throw InvalidArgument("noise mean must be finite and non-empty");
    if (index < 0 || index >= base.size()) throw InvalidArgument("uniform component index out of range");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("uniform component needs lo < hi");
    base[index] = 0.5 * (lo + hi);
    NoiseModel m(NoiseKind::uniform_component, std::move(base));
    m.uniform_index_ = index;
    m.lo_ = lo;
    m.hi_ = hi;
    return m;
}

NoiseModel NoiseModel::fixed(Vector mean) {
    if (mean.size() < 1 || !all_finite(mean)) throw InvalidArgument("noise mean must be finite and non-empty");
    return NoiseModel(NoiseKind::fixed, std::move(mean));
}

bool NoiseModel::is_gaussian() const noexcept {
    return kind_ == NoiseKind::gaussian_iso || kind_ == NoiseKind::gaussian_diag;
}

Vector NoiseModel::variances() const {
    switch (kind_) {
        case NoiseKind::gaussian_iso: return Vector::Constant(size(), iso_variance_);
        case NoiseKind::gaussian_diag: return diag_variances_;
        case NoiseKind::uniform_component: {
            Vector v = Vector::Zero(size());
            v[uniform_index_] = (hi_ - lo_) * (hi_ - lo_) / 12.0;
            return v;
        }
        case NoiseKind::fixed: return Vector::Zero(size());
    }
    return Vector::Zero(size());
}

std::optional<double> NoiseModel::common_variance() const {
    if (kind_ == NoiseKind::gaussian_iso) return iso_variance_;
    const Vector v = variances();
    if ((v.array() == v[0]).all()) return v[0];
    return std::nullopt;
}

std::string_view to_string(EstimateMethod method) noexcept {
    switch (method) {
        case EstimateMethod::covariance_mc: return "covariance_mc";
        case EstimateMethod::stein_mc: return "stein_mc";
        case EstimateMethod::finite_difference: return "finite_difference";
        case EstimateMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

OptimismEstimate::OptimismEstimate(double value_in, double std_error_in, EstimateMethod method_in,
                                   long replicates_in)
    : value(value_in), std_error(std_error_in), method(method_in), replicates(replicates_in) {
    if (!std::isfinite(std_error) || std_error < 0.0)
        throw InvalidArgument("standard error must be finite and >= 0");
}

Interval OptimismEstimate::ci95() const noexcept {
    return {value - 1.96 * std_error, value + 1.96 * std_error};
}

double OptimismEstimate::df(Index n, double sigma2) const { return df_from_optimism(value, n, sigma2); }

double training_error(const Vector& mu_hat, const Vector& y) {
    if (mu_hat.size() != y.size()) throw InvalidArgument("training_error: length mismatch");
    if (y.size() == 0) throw InvalidArgument("training_error: empty input");
    return (mu_hat - y).squaredNorm() / static_cast<double>(y.size());
}

double training_error(const Vector& mu_hat, const ObservationVector& y) {
    return training_error(mu_hat, y.values());
}

double df_from_optimism(double omega, Index n, double sigma2) {
    if (!(sigma2 > 0.0)) throw InvalidArgument("df_from_optimism: sigma2 must be > 0");
    if (n < 1) throw InvalidArgument("df_from_optimism: n must be >= 1");
    return omega * static_cast<double>(n) / (2.0 * sigma2);
}

double optimism_from_df(double df, Index n, double sigma2) {
    if (!(sigma2 > 0.0)) throw InvalidArgument("optimism_from_df: sigma2 must be > 0");
    if (n < 1) throw InvalidArgument("optimism_from_df: n must be >= 1");
    return df * 2.0 * sigma2 / static_cast<double>(n);
}

void draw_into(const NoiseModel& noise, RngStream& rng, Vector& out) {
    const Vector& mean = noise.mean();
    out = mean;
    switch (noise.kind()) {
        case NoiseKind::fixed: return;
        case NoiseKind::gaussian_iso:
        case NoiseKind::gaussian_diag: {
            const Vector& sd = noise.std_devs();
            for (Index i = 0; i < out.size(); ++i) out[i] += sd[i] * rng.normal();
            return;
        }
        case NoiseKind::uniform_component: {
            const double u = rng.uniform();
            out[noise.uniform_index()] = noise.uniform_lo() + (noise.uniform_hi() - noise.uniform_lo()) * u;
            return;
        }
    }
}

ObservationVector draw(const NoiseModel& noise, RngStream& rng) {
    Vector y;
    draw_into(noise, rng, y);
    return ObservationVector(std::move(y));
}

}  // namespace edf
