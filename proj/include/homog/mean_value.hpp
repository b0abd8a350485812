#pragma once

// Mean values M(u) = lim (1/|box_R|) int_{box_R} u and Besicovitch seminorms
// (M(|u|^p))^(1/p), estimated by midpoint quadrature over growing boxes [-R, R]^d.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace homog {

using ScalarFunction = std::function<double(std::span<const double>)>;

struct MeanValueEstimate {
  double value = 0.0;                 // estimate on the largest box
  std::vector<double> radii;          // schedule used
  std::vector<double> values;         // estimate per radius
  std::vector<double> differences;    // |values[i+1] - values[i]|
};

/// Midpoint-rule average of `u` over [-R, R]^dim with ceil(2 R points_per_unit) points per axis,
/// for every R in `radii` (strictly increasing, at least two entries).
/// Throws EvaluationError on a non-finite sample, ArgumentError on a bad schedule.
MeanValueEstimate mean_value(const ScalarFunction& u, std::size_t dim,
                             std::span<const double> radii, double points_per_unit);

/// (mean of |u|^p)^(1/p), p in {1, 2}.
MeanValueEstimate besicovitch_seminorm(const ScalarFunction& u, std::size_t dim, double p,
                                       std::span<const double> radii, double points_per_unit);

/// Single-box midpoint average; the building block of both estimates above.
double box_average(const ScalarFunction& u, std::size_t dim, double half_width,
                   double points_per_unit);

/// Points per unit length giving at least `per_wavelength` samples on the shortest wavelength
/// 1 / max_frequency (and never fewer than `per_wavelength`).
double resolution_for(double max_frequency, double per_wavelength = 64.0);

}  // namespace homog
