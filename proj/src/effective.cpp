#include "homog/effective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "homog/errors.hpp"
#include "homog/mean_value.hpp"
#include "homog/parallel.hpp"

namespace homog {

std::string_view to_string(Provenance p) {
  return p == Provenance::exact_periodic ? "exact-periodic" : "truncated";
}

std::string_view to_string(ReferenceKind r) {
  switch (r) {
    case ReferenceKind::oracle: return "oracle";
    case ReferenceKind::periodic: return "periodic";
    case ReferenceKind::largest_r: return "largest-R";
  }
  return "unknown";
}

ReferenceKind reference_from_string(std::string_view name) {
  if (name == "oracle") return ReferenceKind::oracle;
  if (name == "periodic") return ReferenceKind::periodic;
  if (name == "largest-R" || name == "largest_r" || name == "largest-r")
    return ReferenceKind::largest_r;
  throw ArgumentError("unknown reference '" + std::string(name) + "'");
}

namespace {

void check_window(AveragingWindow window) {
  if (!(window.fraction > 0.0)) throw ArgumentError("averaging window must be non-empty");
  if (window.fraction > 1.0)
    throw ArgumentError("averaging window (fraction " + std::to_string(window.fraction) +
                        ") is larger than the box");
}

std::size_t cells_for(double half_width, double points_per_unit) {
  const auto cells = static_cast<std::size_t>(std::llround(2.0 * half_width * points_per_unit));
  return std::max<std::size_t>(cells, 4);
}

EffectiveTensor finish(const Tensor& value, Provenance provenance, const CellProblem& problem,
                       std::span<const CellSolution> correctors, double window, double alpha,
                       double tolerance) {
  EffectiveTensor t;
  t.value = value;
  t.provenance = provenance;
  t.half_width = problem.half_width();
  t.cells = problem.grid().cells();
  t.window = window;
  for (const auto& c : correctors) {
    t.residual = std::max(t.residual, c.residual);
    t.gradient_energy = std::max(t.gradient_energy, c.gradient_energy);
  }
  t.symmetry_defect = symmetry_defect(value);
  t.min_rayleigh = min_rayleigh_quotient(value, 64);
  t.symmetric = t.symmetry_defect <= 10.0 * tolerance;
  t.elliptic = t.min_rayleigh >= alpha * (1.0 - 10.0 * tolerance);
  return t;
}

std::vector<CellSolution> solve_all(const CellProblem& problem, std::size_t dim) {
  std::vector<CellSolution> out;
  out.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) out.push_back(problem.solve_direction(j));
  return out;
}

}  // namespace

Tensor average_flux(const CellProblem& problem, std::span<const CellSolution> correctors,
                    AveragingWindow window) {
  check_window(window);
  const Grid& grid = problem.grid();
  const std::size_t dim = grid.dim();
  if (correctors.size() != dim) throw ArgumentError("one corrector per direction required");
  const double mid = grid.origin() + 0.5 * grid.side();
  const double reach = 0.5 * grid.side() * window.fraction + 1e-12 * grid.side();

  std::vector<std::size_t> selected;
  for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
    const auto c = grid.cell_point(cell);
    bool inside = true;
    for (std::size_t d = 0; d < dim; ++d) inside = inside && std::abs(c[d] - mid) <= reach;
    if (inside) selected.push_back(cell);
  }
  if (selected.empty()) throw ArgumentError("averaging window contains no cells");

  Tensor t(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const FluxField fx = problem.flux(correctors[j]);
    for (std::size_t i = 0; i < dim; ++i) {
      double s = 0.0;
      for (std::size_t cell : selected) s += fx.cell_mean[cell][i];
      t(i, j) = s / static_cast<double>(selected.size());
    }
  }
  return t;
}

EffectiveTensor assemble_effective_truncated(const MatrixField& field,
                                             std::span<const double> x_sample, double half_width,
                                             std::size_t cells, double tolerance,
                                             AveragingWindow window) {
  check_window(window);
  if (!(half_width > 0.0)) throw ArgumentError("truncation half-width R must be positive");
  require_elliptic(field, x_sample, half_width);
  const CellProblem problem(field, x_sample, Grid::box(field.dim(), half_width, cells), tolerance);
  const auto chi = solve_all(problem, field.dim());
  return finish(average_flux(problem, chi, window), Provenance::truncated, problem, chi,
                window.fraction, field.alpha(), tolerance);
}

EffectiveTensor assemble_effective_periodic(const MatrixField& field,
                                            std::span<const double> x_sample, std::size_t cells,
                                            double tolerance) {
  if (field.structure() != Structure::constant && field.structure() != Structure::periodic)
    throw InputError(std::string("periodic effective tensor needs a periodic field, got ") +
                     std::string(to_string(field.structure())));
  require_elliptic(field, x_sample, 1.0);
  const CellProblem problem(field, x_sample, Grid::unit_cell(field.dim(), cells), tolerance);
  const auto chi = solve_all(problem, field.dim());
  return finish(average_flux(problem, chi, AveragingWindow::full()), Provenance::exact_periodic,
                problem, chi, 1.0, field.alpha(), tolerance);
}

MeanBounds mean_bounds(const Profile& a, double half_width, double points_per_unit) {
  if (a.dimension() != 1) throw ArgumentError("mean bounds are defined for 1D profiles");
  const double inv = box_average([&](std::span<const double> y) { return 1.0 / a(y); }, 1,
                                 half_width, points_per_unit);
  const double arith = box_average([&](std::span<const double> y) { return a(y); }, 1,
                                   half_width, points_per_unit);
  return {1.0 / inv, arith};
}

ConvergenceRecord convergence_study(const MatrixField& field, std::span<const double> x_sample,
                                    std::span<const double> radii,
                                    const ConvergenceOptions& options) {
  if (radii.size() < 3) throw ArgumentError("convergence study needs at least three radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw ArgumentError("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw ArgumentError("radii must be strictly increasing");
  }
  check_window(options.primary);
  if (options.reference == ReferenceKind::oracle && !options.oracle)
    throw ArgumentError("oracle reference requested without an oracle tensor");
  require_elliptic(field, x_sample, radii.back());

  const std::size_t dim = field.dim();
  ConvergenceRecord rec;
  rec.reference_kind = options.reference;
  rec.primary = options.primary;
  rec.entries.resize(radii.size());

  // Largest radius first: it dominates the cost, so it starts early on a multi-thread run.
  parallel_for(radii.size(), options.threads, [&](std::size_t k) {
    const std::size_t i = radii.size() - 1 - k;
    const double r = radii[i];
    const CellProblem problem(field, x_sample, Grid::box(dim, r, cells_for(r, options.points_per_unit)),
                              options.tolerance);
    const auto chi = solve_all(problem, dim);
    ConvergenceEntry& e = rec.entries[i];
    e.radius = r;
    e.cells = problem.grid().cells();
    e.full = finish(average_flux(problem, chi, AveragingWindow::full()), Provenance::truncated,
                    problem, chi, 1.0, field.alpha(), options.tolerance);
    e.interior = finish(average_flux(problem, chi, options.primary.fraction < 1.0
                                                       ? options.primary
                                                       : AveragingWindow::interior()),
                        Provenance::truncated, problem, chi,
                        options.primary.fraction < 1.0 ? options.primary.fraction : 0.5,
                        field.alpha(), options.tolerance);
  });

  const auto primary = [&](const ConvergenceEntry& e) -> const Tensor& {
    return options.primary.fraction < 1.0 ? e.interior.value : e.full.value;
  };

  switch (options.reference) {
    case ReferenceKind::oracle:
      rec.reference = *options.oracle;
      break;
    case ReferenceKind::periodic:
      rec.reference = assemble_effective_periodic(field, x_sample, options.periodic_cells,
                                                  options.tolerance)
                          .value;
      break;
    case ReferenceKind::largest_r:
      rec.reference = primary(rec.entries.back());
      break;
  }
  if (rec.reference.dim() != dim) throw ArgumentError("reference tensor dimension mismatch");

  for (std::size_t i = 0; i < rec.entries.size(); ++i) {
    ConvergenceEntry& e = rec.entries[i];
    e.error_full = max_abs_diff(e.full.value, rec.reference);
    e.error_interior = max_abs_diff(e.interior.value, rec.reference);
    e.error = max_abs_diff(primary(e), rec.reference);
    e.cauchy = i == 0 ? 0.0 : max_abs_diff(primary(e), primary(rec.entries[i - 1]));
  }

  const std::size_t compared =
      options.reference == ReferenceKind::largest_r ? rec.entries.size() - 1 : rec.entries.size();
  rec.errors_decreasing = compared >= 2;
  for (std::size_t i = 1; i < compared; ++i) {
    if (!(rec.entries[i].error < rec.entries[i - 1].error)) {
      rec.errors_decreasing = false;
      rec.non_monotone.push_back(i);
    }
  }
  rec.cauchy_decreasing = rec.entries.size() >= 3;
  for (std::size_t i = 2; i < rec.entries.size(); ++i)
    if (!(rec.entries[i].cauchy < rec.entries[i - 1].cauchy)) rec.cauchy_decreasing = false;
  return rec;
}

// ---------------------------------------------------------------------------

NonlinearityTable::NonlinearityTable(std::vector<double> probes, std::vector<double> values)
    : probes_(std::move(probes)), values_(std::move(values)) {
  if (probes_.size() != values_.size() || probes_.size() < 2)
    throw ArgumentError("nonlinearity table needs at least two (probe, value) pairs");
  for (std::size_t i = 1; i < probes_.size(); ++i)
    if (!(probes_[i] > probes_[i - 1])) throw ArgumentError("table probes must increase");
}

double NonlinearityTable::operator()(double lambda) const {
  if (probes_.empty()) throw ArgumentError("empty nonlinearity table");
  auto it = std::upper_bound(probes_.begin(), probes_.end(), lambda);
  std::size_t hi = static_cast<std::size_t>(it - probes_.begin());
  hi = std::clamp<std::size_t>(hi, 1, probes_.size() - 1);
  const std::size_t lo = hi - 1;
  const double t = (lambda - probes_[lo]) / (probes_[hi] - probes_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

double NonlinearityTable::max_slope() const {
  double m = 0.0;
  for (std::size_t i = 1; i < probes_.size(); ++i)
    m = std::max(m, std::abs(values_[i] - values_[i - 1]) / (probes_[i] - probes_[i - 1]));
  return m;
}

std::vector<double> default_lambda_probes(std::span<const double> extra) {
  std::vector<double> p{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  for (double e : extra) {
    if (!std::isfinite(e)) throw ArgumentError("lambda probes must be finite");
    p.push_back(e);
  }
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

namespace {

NonlinearityTable tabulate(double factor, Response response, const std::vector<double>& probes) {
  std::vector<double> v;
  v.reserve(probes.size());
  for (double l : probes) v.push_back(factor * apply_response(response, l));
  return NonlinearityTable(probes, std::move(v));
}

template <class Factor>
EffectiveNonlinearity build(const DriftField& f, const DiffusionField& g, double radius,
                            std::span<const double> extra, Factor&& factor) {
  const auto probes = default_lambda_probes(extra);
  EffectiveNonlinearity out;
  out.radius = radius;
  out.drift_factor = f.term().scale * factor(f.term());
  out.drift_response = f.term().response;
  out.drift_lipschitz = f.lipschitz();
  out.diffusion_lipschitz = g.lipschitz();
  out.drift_table = tabulate(out.drift_factor, out.drift_response, probes);
  for (std::size_t k = 0; k < g.modes(); ++k) {
    const auto& shape = g.shape(k);
    out.mode_factors.push_back(g.weight(k) * shape.scale * factor(shape));
    out.mode_responses.push_back(shape.response);
    out.mode_tables.push_back(tabulate(out.mode_factors.back(), shape.response, probes));
  }
  return out;
}

}  // namespace

EffectiveNonlinearity average_nonlinearities(const DriftField& f, const DiffusionField& g,
                                             double half_width, double points_per_unit,
                                             std::span<const double> extra_probes) {
  if (!(half_width > 0.0)) throw ArgumentError("averaging half-width must be positive");
  // The midpoint rule on the tensor box [-R,R]^N x [-R,R] of space(y) time(tau) is the
  // product of the two factor rules.
  return build(f, g, half_width, extra_probes, [&](const SeparableTerm& term) {
    const double s = box_average([&](std::span<const double> y) { return term.space(y); },
                                 term.space.dimension(), half_width, points_per_unit);
    const double t = box_average([&](std::span<const double> y) { return term.time(y); }, 1,
                                 half_width, points_per_unit);
    return s * t;
  });
}

EffectiveNonlinearity exact_nonlinearities(const DriftField& f, const DiffusionField& g,
                                           std::span<const double> extra_probes) {
  return build(f, g, 0.0, extra_probes, [](const SeparableTerm& term) {
    return term.space.mean() * term.time.mean();
  });
}

}  // namespace homog
