#pragma once

// Structured oscillating coefficient families: finite trigonometric sums plus
// decaying envelopes, and the matrix / drift / diffusion fields built on them.
// All objects are immutable once constructed; evaluation is pure.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homog/tensor.hpp"

namespace homog {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class Structure { constant, periodic, quasiperiodic, asymptotic };

std::string_view to_string(Structure s);

/// Least upper bound in the order constant < periodic < quasiperiodic < asymptotic.
Structure combine(Structure a, Structure b);

enum class Wave { cosine, sine };

/// amplitude * cos(2 pi k.y + phase)   or   amplitude * sin(2 pi k.y + phase)
struct Oscillation {
  double amplitude = 0.0;
  std::vector<double> frequency;
  Wave wave = Wave::cosine;
  double phase = 0.0;
};

enum class DecayShape { exponential, gaussian };

/// amplitude * exp(-|y|/scale) (exponential) or amplitude * exp(-|y|^2/scale^2) (gaussian).
/// Vanishes at infinity, so it never contributes to a mean value.
struct DecayingTerm {
  double amplitude = 0.0;
  DecayShape shape = DecayShape::exponential;
  double scale = 1.0;
};

/// Scalar function of `dimension` variables:
///   constant + sum of oscillations + sum of decaying terms.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::size_t dimension, double constant = 0.0);

  static Profile constant(double c, std::size_t dimension = 1) { return Profile(dimension, c); }

  Profile& add_cos(double amplitude, std::vector<double> frequency, double phase = 0.0);
  Profile& add_sin(double amplitude, std::vector<double> frequency, double phase = 0.0);
  Profile& add_oscillation(Oscillation osc);
  Profile& add_decay(double amplitude, DecayShape shape, double scale);

  double operator()(std::span<const double> y) const;
  double operator()(double y) const { return (*this)(std::span<const double>(&y, 1)); }

  std::size_t dimension() const noexcept { return dimension_; }
  double constant_term() const noexcept { return constant_; }
  const std::vector<Oscillation>& oscillations() const noexcept { return oscillations_; }
  const std::vector<DecayingTerm>& decays() const noexcept { return decays_; }

  /// Exact mean value: the constant term (oscillations average to zero, decaying terms vanish).
  double mean() const noexcept { return constant_; }
  /// Upper bound for sup |p|.
  double sup_bound() const noexcept;
  /// Lower bound for inf p.
  double inf_bound() const noexcept;
  /// Largest |k| among the oscillations (0 when there are none).
  double max_frequency() const noexcept;
  Structure structure() const noexcept;
  bool is_constant() const noexcept { return oscillations_.empty() && decays_.empty(); }

  /// Same function with every argument scaled by `factor`: q(y) = p(factor * y).
  /// Decay scales are divided by `factor`.
  Profile rescaled(double factor) const;

 private:
  std::size_t dimension_ = 1;
  double constant_ = 0.0;
  std::vector<Oscillation> oscillations_;
  std::vector<DecayingTerm> decays_;
};

/// Symmetric N x N matrix field A0(x, y) = m(x) * [a_ij(y)] with upper-triangle entries
/// a11 (1D) or a11, a12, a22 (2D) and a positive macroscopic modulation m(x).
class MatrixField {
 public:
  /// `macro` defaults to m(x) = 1.
  MatrixField(std::size_t dim, std::vector<Profile> upper_entries, double alpha,
              std::optional<Profile> macro = std::nullopt);

  static MatrixField constant(const Tensor& value, double alpha);
  /// a(y) I
  static MatrixField isotropic(const Profile& a, double alpha);
  /// diag(a_1(y), ..., a_N(y))
  static MatrixField diagonal(std::vector<Profile> diag, double alpha);

  Tensor operator()(std::span<const double> x, std::span<const double> y) const;

  std::size_t dim() const noexcept { return dim_; }
  double alpha() const noexcept { return alpha_; }
  Structure structure() const noexcept { return structure_; }
  bool is_diagonal() const noexcept;
  const Profile& entry(std::size_t i, std::size_t j) const;
  const Profile& macro() const noexcept { return macro_; }
  double max_frequency() const noexcept;

  /// Entrywise exact mean values (constant terms), times m(x).
  Tensor mean(std::span<const double> x) const;

 private:
  std::size_t dim_;
  std::vector<Profile> entries_;  // a11 | a11, a12, a22
  double alpha_;
  Profile macro_;
  Structure structure_;
};

/// Minimum Rayleigh quotient of A(x, y) observed on a probe lattice of `points_per_axis`^N
/// y-points in [-half_width, half_width]^N plus `random_points` seeded uniform samples.
double probe_ellipticity(const MatrixField& a, std::span<const double> x, double half_width,
                         std::size_t points_per_axis = 33, std::size_t random_points = 256,
                         std::uint64_t seed = 0x5eed);

/// Throws InputError if the probed ellipticity falls below alpha.
void require_elliptic(const MatrixField& a, std::span<const double> x, double half_width);

/// Globally Lipschitz response h with h(0) = 0 and Lipschitz constant 1.
enum class Response { linear, sine, tanh };

std::string_view to_string(Response r);
Response response_from_string(std::string_view name);
double apply_response(Response r, double lambda);

/// scale * space(y) * time(tau) * h(lambda)
struct SeparableTerm {
  Profile space;
  Profile time = Profile::constant(1.0, 1);
  Response response = Response::linear;
  double scale = 1.0;

  double operator()(std::span<const double> y, double tau, double lambda) const {
    return scale * space(y) * time(tau) * apply_response(response, lambda);
  }
  /// |scale| sup|space| sup|time|
  double lipschitz_bound() const noexcept;
  Structure structure() const noexcept { return combine(space.structure(), time.structure()); }
};

/// Drift f(y, tau, lambda) with declared Lipschitz constant c1.
class DriftField {
 public:
  DriftField() = default;
  /// `lipschitz` <= 0 selects the structural bound.
  DriftField(SeparableTerm term, double lipschitz = 0.0);

  static DriftField zero(std::size_t dim);

  double operator()(std::span<const double> y, double tau, double lambda) const {
    return term_(y, tau, lambda);
  }
  const SeparableTerm& term() const noexcept { return term_; }
  double lipschitz() const noexcept { return lipschitz_; }
  /// Linear growth constant c2 with |f(y,tau,l)| <= c2 |l| (follows from f(.,.,0) = 0).
  double growth() const noexcept { return lipschitz_; }
  std::size_t dim() const noexcept { return term_.space.dimension(); }
  Structure structure() const noexcept { return term_.structure(); }

 private:
  SeparableTerm term_{Profile::constant(0.0, 1)};
  double lipschitz_ = 0.0;
};

/// Pointwise noise modes g_k(y, tau, lambda) = sigma_k * shape_k(y, tau, lambda), k = 1..m.
class DiffusionField {
 public:
  DiffusionField() = default;
  /// `lipschitz` <= 0 selects the structural bound sqrt(sum_k (sigma_k L_k)^2).
  /// `declared_weight_total` <= 0 selects sum sigma_k^2.
  DiffusionField(std::vector<SeparableTerm> shapes, std::vector<double> weights,
                 double lipschitz = 0.0, double declared_weight_total = 0.0);

  /// m copies of `shape` with sigma_k = k^-2.
  static DiffusionField inverse_square_weights(const SeparableTerm& shape, std::size_t modes);
  static DiffusionField zero(std::size_t dim);

  std::size_t modes() const noexcept { return shapes_.size(); }
  double operator()(std::size_t k, std::span<const double> y, double tau, double lambda) const {
    return weights_[k] * shapes_[k](y, tau, lambda);
  }
  const SeparableTerm& shape(std::size_t k) const { return shapes_.at(k); }
  double weight(std::size_t k) const { return weights_.at(k); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Partial sums of sigma_k^2.
  std::vector<double> weight_partial_sums() const;
  double declared_weight_total() const noexcept { return weight_total_; }
  double lipschitz() const noexcept { return lipschitz_; }
  std::size_t dim() const noexcept;
  Structure structure() const noexcept;

 private:
  std::vector<SeparableTerm> shapes_;
  std::vector<double> weights_;
  double lipschitz_ = 0.0;
  double weight_total_ = 0.0;
};

/// Largest observed |f(y,t,l) - f(y,t,m)| / |l - m| over seeded random triples in
/// [-half_width, half_width]^(N+1) x [-lambda_range, lambda_range]^2.
double probe_lipschitz(const DriftField& f, std::size_t samples, std::uint64_t seed,
                       double half_width = 8.0, double lambda_range = 4.0);
/// Same for the mode vector in the Hilbert-Schmidt sense: sqrt(sum_k |dg_k|^2) / |l - m|.
double probe_lipschitz(const DiffusionField& g, std::size_t samples, std::uint64_t seed,
                       double half_width = 8.0, double lambda_range = 4.0);

/// Admissibility checks on drift and diffusion: zero at lambda = 0, Lipschitz probes
/// within declared constants, monotone bounded weight sums. Throws InputError.
void validate_nonlinearities(const DriftField& f, const DiffusionField& g,
                             std::size_t samples = 256, std::uint64_t seed = 0x5eed);

}  // namespace homog
