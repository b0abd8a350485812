#include "homog/noise.hpp"

#include <cmath>
#include <random>

#include "homog/errors.hpp"

namespace homog {

BrownianIncrements BrownianIncrements::generate(std::uint64_t seed, std::uint64_t path,
                                                std::size_t modes, std::size_t steps, double dt) {
  if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
  BrownianIncrements b;
  b.modes_ = modes;
  b.steps_ = steps;
  b.dt_ = dt;
  b.values_.resize(modes * steps);
  if (b.values_.empty()) return b;

  // one engine per (seed, path): paths are independent of each other and of scheduling
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32),
                    0x57a7e5u};
  std::mt19937_64 engine(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = std::sqrt(dt);
  for (double& v : b.values_) v = s * normal(engine);
  return b;
}

double u0_norm(std::span<const double> coefficients) {
  double s = 0.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const double kk = static_cast<double>(k + 1);
    s += coefficients[k] * coefficients[k] / (kk * kk);
  }
  return std::sqrt(s);
}

SampleMoments sample_moments(std::span<const double> values) {
  SampleMoments m;
  m.count = values.size();
  if (values.empty()) return m;
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    for (double v : values) m.variance += (v - m.mean) * (v - m.mean);
    m.variance /= static_cast<double>(values.size() - 1);
  }
  return m;
}

}  // namespace homog
