#include "homog/mean_value.hpp"

#include <array>
#include <cmath>
#include <string>

#include "homog/errors.hpp"

namespace homog {

namespace {

void check_schedule(std::span<const double> radii) {
  if (radii.size() < 2) throw ArgumentError("radius schedule needs at least two entries");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ArgumentError("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw ArgumentError("radius schedule must be strictly increasing");
  }
}

MeanValueEstimate collect(std::span<const double> radii, std::vector<double> values) {
  MeanValueEstimate est;
  est.radii.assign(radii.begin(), radii.end());
  est.values = std::move(values);
  for (std::size_t i = 1; i < est.values.size(); ++i)
    est.differences.push_back(std::abs(est.values[i] - est.values[i - 1]));
  est.value = est.values.back();
  return est;
}

}  // namespace

double box_average(const ScalarFunction& u, std::size_t dim, double half_width,
                   double points_per_unit) {
  if (dim < 1 || dim > 3) throw ArgumentError("quadrature dimension must be 1, 2 or 3");
  if (!(half_width > 0.0) || !(points_per_unit > 0.0))
    throw ArgumentError("box half-width and resolution must be positive");
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width * points_per_unit));
  const double h = 2.0 * half_width / static_cast<double>(n);
  std::array<std::size_t, 3> idx{};
  std::array<double, 3> y{};
  const std::span<const double> ys(y.data(), dim);
  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) total *= n;

  // Accumulate per line, then across lines.
  double sum = 0.0;
  for (std::size_t flat = 0; flat < total; flat += n) {
    std::size_t rest = flat / n;
    for (std::size_t d = 1; d < dim; ++d) {
      idx[d] = rest % n;
      rest /= n;
      y[d] = -half_width + (static_cast<double>(idx[d]) + 0.5) * h;
    }
    double line = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[0] = -half_width + (static_cast<double>(i) + 0.5) * h;
      const double v = u(ys);
      if (!std::isfinite(v))
        throw EvaluationError("non-finite field value during mean-value quadrature at R = " +
                              std::to_string(half_width));
      line += v;
    }
    sum += line;
  }
  return sum / static_cast<double>(total);
}

MeanValueEstimate mean_value(const ScalarFunction& u, std::size_t dim,
                             std::span<const double> radii, double points_per_unit) {
  check_schedule(radii);
  std::vector<double> values;
  values.reserve(radii.size());
  for (double r : radii) values.push_back(box_average(u, dim, r, points_per_unit));
  return collect(radii, std::move(values));
}

MeanValueEstimate besicovitch_seminorm(const ScalarFunction& u, std::size_t dim, double p,
                                       std::span<const double> radii, double points_per_unit) {
  if (p != 1.0 && p != 2.0) throw ArgumentError("seminorm exponent must be 1 or 2");
  check_schedule(radii);
  const ScalarFunction power = [&](std::span<const double> y) {
    const double v = std::abs(u(y));
    return p == 1.0 ? v : v * v;
  };
  std::vector<double> values;
  values.reserve(radii.size());
  for (double r : radii) {
    const double m = box_average(power, dim, r, points_per_unit);
    values.push_back(p == 1.0 ? m : std::sqrt(m));
  }
  return collect(radii, std::move(values));
}

double resolution_for(double max_frequency, double per_wavelength) {
  return per_wavelength * std::max(1.0, max_frequency);
}

}  // namespace homog
