#include "homog/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "homog/errors.hpp"
#include "homog/parallel.hpp"

namespace homog {

namespace {

std::string num(double v) { return fmt::format("{}", v); }

std::array<double, 2> domain_centre(std::size_t dim) {
  std::array<double, 2> x{};
  for (std::size_t d = 0; d < dim; ++d) x[d] = 0.5;
  return x;
}

bool boundary_vanishes(const Profile& p, std::size_t dim) {
  const double tol = 1e-9 * std::max(1.0, p.sup_bound());
  for (int k = 0; k <= 16; ++k) {
    const double s = k / 16.0;
    for (double side : {0.0, 1.0}) {
      std::array<double, 2> y{side, s};
      if (std::abs(p(std::span<const double>(y.data(), dim))) > tol) return false;
      if (dim == 2) {
        std::array<double, 2> z{s, side};
        if (std::abs(p(std::span<const double>(z.data(), dim))) > tol) return false;
      }
    }
  }
  return true;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void Scenario::validate() const {
  const std::size_t dim = dimension();
  if (drift.dim() != dim || diffusion.dim() != dim)
    throw InputError("drift/diffusion dimension differs from the coefficient");
  if (u0.dimension() != dim || u1.dimension() != dim)
    throw InputError("initial data dimension differs from the coefficient");
  if (epsilons.empty()) throw ArgumentError("epsilon schedule is empty");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw ArgumentError("epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
      throw ArgumentError("epsilon schedule must be strictly decreasing");
  }
  if (paths < 8) throw ArgumentError("at least 8 Monte-Carlo paths are required");
  for (double d : deltas)
    if (!(d > 0.0)) throw ArgumentError("delta thresholds must be positive");
  if (!(T > 0.0)) throw ArgumentError("T must be positive");
  step_count(T, dt);
  if (stride == 0) throw ArgumentError("stride must be positive");
  if (cells < 4) throw ArgumentError("at least 4 cells per axis");
  if (!(tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
  if (radii.size() < 3) throw ArgumentError("at least three radii");
  if (!(points_per_unit > 0.0)) throw ArgumentError("points per unit must be positive");

  if (!(coefficient.macro().inf_bound() > 0.0))
    throw InputError("macroscopic modulation m(x) must be bounded below by a positive constant");
  const auto x = domain_centre(dim);
  require_elliptic(coefficient, std::span<const double>(x.data(), dim), radii.back());
  validate_nonlinearities(drift, diffusion);
  if (!boundary_vanishes(u0, dim)) throw InputError("u0 must vanish on the boundary of Q");
}

double spatial_max_frequency(const Scenario& s) {
  double k = s.coefficient.max_frequency();
  k = std::max(k, s.drift.term().space.max_frequency());
  for (std::size_t m = 0; m < s.diffusion.modes(); ++m)
    k = std::max(k, s.diffusion.shape(m).space.max_frequency());
  return k;
}

std::size_t required_cells(const Scenario& s, double eps) {
  const double k = spatial_max_frequency(s);
  if (k == 0.0) return 4;
  return static_cast<std::size_t>(std::ceil(16.0 * k / eps - 1e-9));
}

MatrixField micro_field(const MatrixField& a) {
  std::vector<Profile> upper;
  upper.push_back(a.entry(0, 0));
  if (a.dim() == 2) {
    upper.push_back(a.entry(0, 1));
    upper.push_back(a.entry(1, 1));
  }
  return MatrixField(a.dim(), std::move(upper), a.alpha());
}

HomogenizedTensor homogenized_tensor(const Scenario& s, std::size_t threads) {
  const MatrixField micro = micro_field(s.coefficient);
  const std::size_t dim = micro.dim();
  const auto x = domain_centre(dim);
  const std::span<const double> xs(x.data(), dim);
  HomogenizedTensor out;
  if (micro.structure() == Structure::constant || micro.structure() == Structure::periodic) {
    out.tensor = assemble_effective_periodic(micro, xs, s.periodic_cells, s.tolerance);
    return out;
  }
  ConvergenceOptions opt;
  opt.points_per_unit = s.points_per_unit * std::max(1.0, micro.max_frequency());
  opt.tolerance = s.tolerance;
  opt.threads = threads;
  auto rec = convergence_study(micro, xs, s.radii, opt);
  if (!rec.cauchy_decreasing)
    throw PreconditionError("truncated effective tensor failed its Cauchy diagnostic over the "
                            "radius schedule; enlarge the radii");
  out.tensor = rec.entries.back().interior;
  out.study = std::move(rec);
  return out;
}

std::vector<double> default_deltas(std::span<const double> errors_at_largest_eps) {
  const double m = median(std::vector<double>(errors_at_largest_eps.begin(),
                                              errors_at_largest_eps.end()));
  std::vector<double> d{0.5, 0.25, 0.1};
  if (m > 0.0)
    for (double& v : d) v *= m;
  return d;
}

double space_time_distance(const WaveSolver& solver, const TrajectoryRecord& a,
                           const TrajectoryRecord& b) {
  if (a.snapshots.empty() || a.snapshots.size() != b.snapshots.size())
    throw ArgumentError("trajectories need matching snapshots");
  const std::size_t n = a.snapshots.size();
  std::vector<double> sq(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(a.snapshot_times[k] - b.snapshot_times[k]) > 1e-12)
      throw ArgumentError("trajectories were recorded at different times");
    std::vector<double> d(a.snapshots[k].size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.snapshots[k][i] - b.snapshots[k][i];
    const double l = solver.l2(d);
    sq[k] = l * l;
  }
  double s = 0.0;
  for (std::size_t k = 1; k < n; ++k)
    s += 0.5 * (a.snapshot_times[k] - a.snapshot_times[k - 1]) * (sq[k] + sq[k - 1]);
  return std::sqrt(s);
}

ComparisonResult compare_epsilon_sweep(const Scenario& s, std::size_t threads) {
  s.validate();
  for (double eps : s.epsilons) {
    const std::size_t need = required_cells(s, eps);
    if (s.cells < need)
      throw PreconditionError("grid of " + std::to_string(s.cells) +
                              " cells per axis does not resolve eps = " + num(eps) +
                              ": at least " + std::to_string(need) +
                              " cells (16 per oscillation period) are required");
  }

  const HomogenizedTensor ht = homogenized_tensor(s, threads);
  const WaveProblem hom = homogenized_problem(ht.tensor.value, s.coefficient.macro(), s.drift,
                                              s.diffusion, s.cells);
  const WaveSolver hom_solver(hom, s.dt);
  std::vector<WaveSolver> osc;
  osc.reserve(s.epsilons.size());
  for (double eps : s.epsilons)
    osc.emplace_back(oscillatory_problem(s.coefficient, s.drift, s.diffusion, eps, s.cells), s.dt);

  const std::size_t steps = step_count(s.T, s.dt);
  const std::size_t ne = s.epsilons.size();
  std::vector<double> e(ne * s.paths, 0.0);
  parallel_for(s.paths, threads, [&](std::size_t p) {
    const auto inc = BrownianIncrements::generate(s.seed, p, s.diffusion.modes(), steps, s.dt);
    const auto r0 = hom_solver.run(initial_state(hom, s.u0, s.u1), s.T, s.stride, &inc, true);
    for (std::size_t i = 0; i < ne; ++i) {
      const auto& solver = osc[i];
      const auto re = solver.run(initial_state(solver.problem(), s.u0, s.u1), s.T, s.stride,
                                 &inc, true);
      e[i * s.paths + p] = space_time_distance(hom_solver, re, r0);
    }
  });

  ComparisonResult r;
  r.scenario = s.name;
  r.effective = ht.tensor.value;
  r.provenance = ht.tensor.provenance;
  r.deltas = s.deltas.empty()
                 ? default_deltas(std::span<const double>(e.data(), s.paths))
                 : s.deltas;
  r.negligible = true;
  for (std::size_t i = 0; i < ne; ++i) {
    EpsilonSummary sum;
    sum.epsilon = s.epsilons[i];
    std::vector<double> col(e.begin() + static_cast<std::ptrdiff_t>(i * s.paths),
                            e.begin() + static_cast<std::ptrdiff_t>((i + 1) * s.paths));
    for (std::size_t p = 0; p < s.paths; ++p) {
      r.errors.push_back({s.epsilons[i], p, col[p]});
      sum.mean_e2 += col[p] * col[p];
      if (col[p] > 1e-10) r.negligible = false;
    }
    sum.mean_e2 /= static_cast<double>(s.paths);
    sum.median_e = median(col);
    for (double d : r.deltas) {
      std::size_t count = 0;
      for (double v : col) count += v > d ? 1 : 0;
      sum.exceed.push_back(static_cast<double>(count) / static_cast<double>(s.paths));
    }
    r.summary.push_back(std::move(sum));
  }

  r.mean_e2_decreasing = ne >= 2;
  for (std::size_t i = 1; i < ne; ++i)
    if (!(r.summary[i].mean_e2 < r.summary[i - 1].mean_e2)) r.mean_e2_decreasing = false;
  bool tails = true;
  for (std::size_t d = 0; d < r.deltas.size(); ++d) {
    bool ok = true;
    for (std::size_t i = 1; i < ne; ++i)
      if (r.summary[i].exceed[d] > r.summary[i - 1].exceed[d]) ok = false;
    r.exceed_nonincreasing.push_back(ok);
    tails = tails && ok;
  }
  r.pass = r.negligible || (r.mean_e2_decreasing && tails);
  return r;
}

// ---------------------------------------------------------------------------

double interpolate(const CellSolution& chi, std::span<const double> y) {
  const Grid& g = chi.grid;
  const std::size_t dim = g.dim();
  if (y.size() != dim) throw ArgumentError("point dimension mismatch");
  const double h = g.spacing();
  std::array<std::size_t, 2> lo{}, hi{};
  std::array<double, 2> t{};
  for (std::size_t d = 0; d < dim; ++d) {
    double s = (y[d] - g.origin()) / h;
    const double n = static_cast<double>(g.cells());
    if (g.periodic()) {
      s = std::fmod(s, n);
      if (s < 0.0) s += n;
    } else if (s < -1e-9 || s > n + 1e-9) {
      throw ArgumentError("point outside the corrector box");
    }
    s = std::clamp(s, 0.0, n);
    std::size_t i = static_cast<std::size_t>(std::floor(s));
    if (i >= g.cells()) i = g.cells() - 1;
    lo[d] = i;
    hi[d] = g.next(i);
    t[d] = s - static_cast<double>(i);
  }
  const auto& c = chi.chi;
  if (dim == 1) return (1.0 - t[0]) * c[lo[0]] + t[0] * c[hi[0]];
  return (1.0 - t[0]) * (1.0 - t[1]) * c[g.node_index(lo[0], lo[1])] +
         t[0] * (1.0 - t[1]) * c[g.node_index(hi[0], lo[1])] +
         (1.0 - t[0]) * t[1] * c[g.node_index(lo[0], hi[1])] +
         t[0] * t[1] * c[g.node_index(hi[0], hi[1])];
}

std::vector<double> centred_gradient(const WaveProblem& problem, std::span<const double> u,
                                     std::size_t d) {
  const Grid& grid = problem.grid;
  if (d >= grid.dim()) throw ArgumentError("gradient component out of range");
  const auto w = to_nodal(problem, u);
  const auto& op = problem.stiffness;
  std::vector<double> g(op.unknowns());
  const double h = grid.spacing();
  for (std::size_t k = 0; k < op.unknowns(); ++k) {
    const auto [i, j] = grid.node_ij(op.node_of[k]);
    const std::size_t a = d == 0 ? grid.node_index(i + 1, j) : grid.node_index(i, j + 1);
    const std::size_t b = d == 0 ? grid.node_index(i - 1, j) : grid.node_index(i, j - 1);
    g[k] = (w[a] - w[b]) / (2.0 * h);
  }
  return g;
}

std::vector<std::vector<double>> corrector_reconstruction(
    const WaveProblem& problem, const std::vector<std::vector<double>>& u0_snapshots,
    std::span<const CellSolution> correctors, double eps) {
  if (u0_snapshots.empty()) throw ArgumentError("no u0 snapshots to reconstruct from");
  const std::size_t dim = problem.grid.dim();
  if (correctors.size() != dim) throw ArgumentError("one corrector per direction required");
  if (!(eps > 0.0)) throw ArgumentError("epsilon must be positive");
  const auto& op = problem.stiffness;
  const std::size_t n = op.unknowns();

  std::vector<std::vector<double>> chi(dim, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    auto y = problem.grid.node_point(op.node_of[k]);
    for (std::size_t d = 0; d < dim; ++d) y[d] /= eps;
    for (std::size_t j = 0; j < dim; ++j)
      chi[j][k] = interpolate(correctors[j], std::span<const double>(y.data(), dim));
  }

  std::vector<std::vector<double>> out;
  out.reserve(u0_snapshots.size());
  for (const auto& u : u0_snapshots) {
    if (u.size() != n) throw ArgumentError("snapshot size does not match the grid");
    std::vector<double> r(u);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto g = centred_gradient(problem, u, j);
      for (std::size_t k = 0; k < n; ++k) r[k] += eps * chi[j][k] * g[k];
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace homog
