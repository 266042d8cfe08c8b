#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace edf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Error hierarchy. Everything the library throws derives from edf::Error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A solver ran out of iterations or a linear system was singular.
class NumericalError : public Error {
public:
    using Error::Error;
};

// An estimator was asked to do something its assumptions forbid,
// e.g. a Stein estimate under non-gaussian noise.
class EstimatorError : public Error {
public:
    using Error::Error;
};

/// Response vector y. Non-empty and finite.
class ObservationVector {
public:
    explicit ObservationVector(Vector values);

    const Vector& values() const noexcept { return values_; }
    Index size() const noexcept { return values_.size(); }
    double operator[](Index i) const { return values_[i]; }

private:
    Vector values_;
};

/**
 * n x p covariate matrix together with its thin SVD X = L diag(d) R^T.
 *
 * The factorization is computed once at construction; singular values are
 * sorted nonincreasing. Construction throws if the reconstruction error
 * exceeds 1e-10 relative to ||X||_F.
 */
class DesignMatrix {
public:
    explicit DesignMatrix(Matrix entries);

    const Matrix& entries() const noexcept { return entries_; }
    Index rows() const noexcept { return entries_.rows(); }
    Index cols() const noexcept { return entries_.cols(); }

    /// n x p, orthonormal columns.
    const Matrix& left_vectors() const noexcept { return left_; }
    /// length p, nonincreasing, nonnegative.
    const Vector& singular_values() const noexcept { return singular_; }
    /// p x p orthogonal.
    const Matrix& right_vectors() const noexcept { return right_; }

    /// Number of singular values above tol * d_max.
    Index rank(double tol = 1e-12) const;

private:
    Matrix entries_;
    Matrix left_;
    Vector singular_;
    Matrix right_;
};

/**
 * Counter-based random stream.
 *
 * Output k of stream (seed, substream) is mix(key + (k+1) * gamma) with
 * key = mix(seed ^ mix(substream + gamma)), where mix is the SplitMix64
 * finalizer. Every draw is therefore a pure function of (seed, substream, k),
 * so replicate r can own substream r regardless of scheduling.
 *
 * Normals use the Box-Muller cosine branch: each normal consumes exactly two
 * uniforms, u1 in (0,1] and u2 in [0,1), z = sqrt(-2 ln u1) cos(2 pi u2).
 */
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t substream) noexcept;

    std::uint64_t master_seed() const noexcept { return seed_; }
    std::uint64_t substream() const noexcept { return substream_; }

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on (0, 1].
    double uniform_open_low() noexcept;
    double normal() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t substream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

enum class NoiseKind { gaussian_iso, gaussian_diag, uniform_component, fixed };

/// Distribution of y: a mean vector plus one of four laws.
class NoiseModel {
public:
    static NoiseModel gaussian_iso(Vector mean, double variance);
    static NoiseModel gaussian_diag(Vector mean, Vector variances);
    /// Coordinate `index` ~ U(lo, hi); the others stay at `base`. The stored
    /// mean has (lo + hi) / 2 at `index`.
    static NoiseModel uniform_component(Vector base, Index index, double lo, double hi);
    static NoiseModel fixed(Vector mean);

    NoiseKind kind() const noexcept { return kind_; }
    const Vector& mean() const noexcept { return mean_; }
    Index size() const noexcept { return mean_.size(); }
    bool is_gaussian() const noexcept;

    /// Per-coordinate variances of y (exact for every kind).
    Vector variances() const;
    /// The common variance when all coordinates share one, else nullopt.
    std::optional<double> common_variance() const;

    /// Per-coordinate standard deviations for the gaussian kinds.
    const Vector& std_devs() const noexcept { return sd_; }

    Index uniform_index() const noexcept { return uniform_index_; }
    double uniform_lo() const noexcept { return lo_; }
    double uniform_hi() const noexcept { return hi_; }

private:
    NoiseModel(NoiseKind kind, Vector mean) : kind_(kind), mean_(std::move(mean)) {}

    NoiseKind kind_;
    Vector mean_;
    double iso_variance_ = 0.0;
    Vector diag_variances_;
    Vector sd_;
    Index uniform_index_ = 0;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

enum class EstimateMethod { covariance_mc, stein_mc, finite_difference, closed_form };

std::string_view to_string(EstimateMethod method) noexcept;

struct Interval {
    double lower;
    double upper;
};

/// Expected optimism omega in per-observation squared-error units.
struct OptimismEstimate {
    double value = 0.0;
    double std_error = 0.0;
    EstimateMethod method = EstimateMethod::closed_form;
    long replicates = 0;

    OptimismEstimate() = default;
    OptimismEstimate(double value, double std_error, EstimateMethod method, long replicates);

    /// estimate +- 1.96 stderr
    Interval ci95() const noexcept;
    double df(Index n, double sigma2) const;
};

double training_error(const Vector& mu_hat, const Vector& y);
double training_error(const Vector& mu_hat, const ObservationVector& y);

double df_from_optimism(double omega, Index n, double sigma2);
double optimism_from_df(double df, Index n, double sigma2);

/// Draws one y from `noise`, advancing `rng`.
ObservationVector draw(const NoiseModel& noise, RngStream& rng);
/// Writes one draw into `out` (resized to n). Same stream consumption as draw().
void draw_into(const NoiseModel& noise, RngStream& rng, Vector& out);

}  // namespace edf
