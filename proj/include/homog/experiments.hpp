#pragma once

// End-to-end homogenization experiments: the coupled epsilon sweep comparing u_eps with the
// homogenized u_0 path by path, and the first-order corrector reconstruction.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homog/cell_problem.hpp"
#include "homog/effective.hpp"
#include "homog/fields.hpp"
#include "homog/wave.hpp"

namespace homog {

struct Scenario {
  std::string name = "custom";
  std::string description;
  MatrixField coefficient = MatrixField::constant(Tensor::identity(1), 1.0);
  DriftField drift = DriftField::zero(1);
  DiffusionField diffusion = DiffusionField::zero(1);
  double T = 1.0;
  Profile u0 = Profile(1).add_sin(1.0, {0.5});  // sin(pi x)
  Profile u1 = Profile::constant(0.0, 1);
  std::vector<double> epsilons{1.0 / 8, 1.0 / 16, 1.0 / 32};
  std::size_t paths = 64;
  std::vector<double> deltas;  // empty: {0.5, 0.25, 0.1} x median e at the largest eps
  std::uint64_t seed = 20240601;
  std::size_t cells = 512;      // Q-grid intervals per axis
  double dt = 1.0 / 1024;
  std::size_t stride = 1;       // recording stride for the L2(Q_T) quadrature
  double tolerance = 1e-10;     // cell solves
  // homogenized tensor for non-periodic coefficients
  std::vector<double> radii{8, 16, 32, 64};
  double points_per_unit = 64.0;  // cells per unit length per unit of max frequency
  std::size_t periodic_cells = 1024;

  std::size_t dimension() const noexcept { return coefficient.dim(); }
  /// Throws InputError / ArgumentError on an inadmissible scenario.
  void validate() const;
};

/// Largest spatial frequency of the coefficient and of the source terms.
double spatial_max_frequency(const Scenario& s);
/// Intervals per axis needed for 16 grid points per oscillation period at `eps`.
std::size_t required_cells(const Scenario& s, double eps);

/// The y-dependent part of the coefficient with m(x) = 1.
MatrixField micro_field(const MatrixField& a);

struct HomogenizedTensor {
  EffectiveTensor tensor;
  std::optional<ConvergenceRecord> study;  // set when the coefficient is not periodic
};

/// Exact periodic tensor for constant/periodic coefficients, otherwise the largest-R
/// truncated tensor (interior window) with its Cauchy diagnostic. PreconditionError
/// when the Cauchy differences do not decrease.
HomogenizedTensor homogenized_tensor(const Scenario& s, std::size_t threads = 1);

struct PathError {
  double epsilon = 0.0;
  std::size_t path = 0;
  double e = 0.0;  // |u_eps - u_0|_{L2(Q_T)}
};

struct EpsilonSummary {
  double epsilon = 0.0;
  double mean_e2 = 0.0;
  double median_e = 0.0;
  std::vector<double> exceed;  // P(e > delta) per delta
};

struct ComparisonResult {
  std::string scenario;
  Tensor effective;
  Provenance provenance = Provenance::exact_periodic;
  std::vector<double> deltas;
  std::vector<PathError> errors;  // eps-major, then path
  std::vector<EpsilonSummary> summary;
  bool mean_e2_decreasing = false;          // strictly
  std::vector<bool> exceed_nonincreasing;   // per delta
  bool negligible = false;                  // every e below 1e-10
  bool pass = false;                        // (decreasing and tails non-increasing) or negligible
};

/// Coupled sweep: for every path the u_0 run and each u_eps run consume the same increments.
ComparisonResult compare_epsilon_sweep(const Scenario& s, std::size_t threads = 1);

/// Default thresholds {0.5, 0.25, 0.1} x median; a zero median gives the factors themselves.
std::vector<double> default_deltas(std::span<const double> errors_at_largest_eps);

/// L2(Q_T) distance of two trajectories recorded on the same grid and stride (trapezoid
/// rule in time over the snapshots, midpoint rule in space).
double space_time_distance(const WaveSolver& solver, const TrajectoryRecord& a,
                           const TrajectoryRecord& b);

/// chi_j evaluated at y: periodic grids wrap, Dirichlet grids require y inside the box.
/// Bilinear (2D) or linear (1D) interpolation of the nodal values.
double interpolate(const CellSolution& chi, std::span<const double> y);

/// u_0 + eps sum_j chi_j(x/eps) d_j u_0 at every interior node of `problem`, for each
/// snapshot; gradients of u_0 by centred differences.
std::vector<std::vector<double>> corrector_reconstruction(
    const WaveProblem& problem, const std::vector<std::vector<double>>& u0_snapshots,
    std::span<const CellSolution> correctors, double eps);

/// Centred-difference gradient component d of interior values (boundary values 0).
std::vector<double> centred_gradient(const WaveProblem& problem, std::span<const double> u,
                                     std::size_t d);

}  // namespace homog
