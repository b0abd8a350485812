#pragma once

// Truncated cylindrical Wiener noise W = sum_{k<=m} W^k e_k: seeded Brownian increments
// stored per (path, step, mode) so that several runs can consume the same stream.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace homog {

class BrownianIncrements {
 public:
  BrownianIncrements() = default;

  /// N(0, dt) increments for `modes` independent Brownian motions over `steps` steps.
  /// The stream is a pure function of (seed, path, modes, steps, dt).
  static BrownianIncrements generate(std::uint64_t seed, std::uint64_t path, std::size_t modes,
                                     std::size_t steps, double dt);

  std::size_t modes() const noexcept { return modes_; }
  std::size_t steps() const noexcept { return steps_; }
  double dt() const noexcept { return dt_; }
  /// Increments of all modes at step n.
  std::span<const double> at(std::size_t step) const {
    return {values_.data() + step * modes_, modes_};
  }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t modes_ = 0;
  std::size_t steps_ = 0;
  double dt_ = 0.0;
  std::vector<double> values_;  // step-major
};

/// |v|_{U_0} = sqrt(sum_k v_k^2 k^-2) for coefficients v_1..v_m.
double u0_norm(std::span<const double> coefficients);

/// Sample mean and (unbiased) variance.
struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
  std::size_t count = 0;
};
SampleMoments sample_moments(std::span<const double> values);

}  // namespace homog
