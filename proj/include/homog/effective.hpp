#pragma once

// Effective (homogenized) coefficients: truncated tensors A_R from Dirichlet correctors on
// [-R, R]^N, exact periodic tensors from unit-cell correctors, R -> infinity convergence
// studies, and averaged nonlinearities f~, g~_k.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "homog/cell_problem.hpp"
#include "homog/fields.hpp"
#include "homog/tensor.hpp"

namespace homog {

enum class Provenance { exact_periodic, truncated };

std::string_view to_string(Provenance p);

/// Averaging region as a fraction of the box half-width: 1 is the full box,
/// 0.5 the inner half per axis.
struct AveragingWindow {
  double fraction = 1.0;

  static AveragingWindow full() { return {1.0}; }
  static AveragingWindow interior() { return {0.5}; }
};

struct EffectiveTensor {
  Tensor value;
  Provenance provenance = Provenance::truncated;
  double half_width = 0.0;   // R (0.5 for the unit cell)
  std::size_t cells = 0;     // per axis
  double window = 1.0;       // window fraction used
  double residual = 0.0;     // max relative residual over the N corrector solves
  double symmetry_defect = 0.0;
  double min_rayleigh = 0.0;  // over 64 probe directions
  bool symmetric = true;      // symmetry_defect <= 10 tol
  bool elliptic = true;       // min_rayleigh >= alpha (1 - 10 tol)
  double gradient_energy = 0.0;  // max over j of (1/|box|) int |grad chi_j|^2
};

/// Tensor from already solved correctors (one per direction, same grid): column j is the
/// window average of the cell-mean fluxes of chi_j.
Tensor average_flux(const CellProblem& problem, std::span<const CellSolution> correctors,
                    AveragingWindow window);

EffectiveTensor assemble_effective_truncated(const MatrixField& field,
                                             std::span<const double> x_sample, double half_width,
                                             std::size_t cells, double tolerance = 1e-10,
                                             AveragingWindow window = AveragingWindow::full());

EffectiveTensor assemble_effective_periodic(const MatrixField& field,
                                            std::span<const double> x_sample, std::size_t cells,
                                            double tolerance = 1e-10);

/// Harmonic mean (M(1/a))^-1 and arithmetic mean M(a) of a 1D profile, by midpoint quadrature
/// over [-R, R]; the classical bounds harmonic <= A~ <= arithmetic.
struct MeanBounds {
  double harmonic;
  double arithmetic;
};
MeanBounds mean_bounds(const Profile& a, double half_width, double points_per_unit);

enum class ReferenceKind { oracle, periodic, largest_r };

std::string_view to_string(ReferenceKind r);
ReferenceKind reference_from_string(std::string_view name);

struct ConvergenceEntry {
  double radius = 0.0;
  std::size_t cells = 0;
  EffectiveTensor full;      // full-box average
  EffectiveTensor interior;  // inner-half average
  double error = 0.0;        // primary window vs reference
  double error_full = 0.0;
  double error_interior = 0.0;
  double cauchy = 0.0;       // |A_R - A_R_prev| in the primary window (0 for the first entry)
};

struct ConvergenceRecord {
  std::vector<ConvergenceEntry> entries;
  ReferenceKind reference_kind = ReferenceKind::largest_r;
  Tensor reference;
  AveragingWindow primary;
  bool errors_decreasing = false;  // strictly, over entries compared to an external reference
  bool cauchy_decreasing = false;  // strictly, over entries 2..end
  /// Indices i where error[i] >= error[i-1] (the non-monotone tail).
  std::vector<std::size_t> non_monotone;
};

struct ConvergenceOptions {
  double points_per_unit = 64.0;  // cells per unit length: cells = 2 R points_per_unit
  double tolerance = 1e-10;
  AveragingWindow primary = AveragingWindow::interior();
  ReferenceKind reference = ReferenceKind::largest_r;
  std::optional<Tensor> oracle;    // required for ReferenceKind::oracle
  std::size_t periodic_cells = 256;  // unit-cell resolution for ReferenceKind::periodic
  std::size_t threads = 1;
};

/// Solves the truncated correctors for every R (>= 3, strictly increasing) and records
/// errors against the chosen reference together with Cauchy differences.
ConvergenceRecord convergence_study(const MatrixField& field, std::span<const double> x_sample,
                                    std::span<const double> radii,
                                    const ConvergenceOptions& options);

/// lambda -> value table with linear interpolation (linear extrapolation past the ends).
class NonlinearityTable {
 public:
  NonlinearityTable() = default;
  NonlinearityTable(std::vector<double> probes, std::vector<double> values);

  double operator()(double lambda) const;
  const std::vector<double>& probes() const noexcept { return probes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  /// Largest slope between consecutive probes.
  double max_slope() const;

 private:
  std::vector<double> probes_;
  std::vector<double> values_;
};

/// Averaged nonlinearities f~(l) = M(f(., ., l)) and g~_k(l) = M(g_k(., ., l)).
/// Each separable term contributes factor * scale * h(l), where `factor` is the mean of
/// space(y) time(tau).
struct EffectiveNonlinearity {
  double radius = 0.0;  // averaging box half-width (0: exact mean values)
  double drift_factor = 0.0;
  Response drift_response = Response::linear;
  std::vector<double> mode_factors;  // includes sigma_k
  std::vector<Response> mode_responses;
  double drift_lipschitz = 0.0;      // declared c1 (inherited)
  double diffusion_lipschitz = 0.0;  // declared c3 (inherited)
  NonlinearityTable drift_table;
  std::vector<NonlinearityTable> mode_tables;

  double drift(double lambda) const { return drift_factor * apply_response(drift_response, lambda); }
  double mode(std::size_t k, double lambda) const {
    return mode_factors[k] * apply_response(mode_responses[k], lambda);
  }
};

/// Default lambda probes {-2, -1, -0.5, 0, 0.5, 1, 2} merged with `extra` (sorted, unique).
std::vector<double> default_lambda_probes(std::span<const double> extra = {});

/// Truncated averages over the (y, tau) box [-R, R]^(N+1) by midpoint quadrature.
EffectiveNonlinearity average_nonlinearities(const DriftField& f, const DiffusionField& g,
                                             double half_width, double points_per_unit,
                                             std::span<const double> extra_probes = {});

/// Exact mean values read off the constant terms: M(space * time) = M(space) M(time).
EffectiveNonlinearity exact_nonlinearities(const DriftField& f, const DiffusionField& g,
                                           std::span<const double> extra_probes = {});

}  // namespace homog
