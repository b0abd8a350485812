#include "homog/wave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "homog/errors.hpp"

namespace homog {

namespace {

std::vector<double> sample_interior(const DivergenceOperator& op, double inv_eps,
                                    const Profile& p) {
  const std::size_t dim = op.grid.dim();
  if (p.dimension() != dim) throw ArgumentError("profile dimension differs from the domain");
  std::vector<double> out(op.unknowns());
  for (std::size_t k = 0; k < op.unknowns(); ++k) {
    auto x = op.grid.node_point(op.node_of[k]);
    for (std::size_t d = 0; d < dim; ++d) x[d] *= inv_eps;
    out[k] = p(std::span<const double>(x.data(), dim));
  }
  return out;
}

NodalTerm oscillating_term(const DivergenceOperator& op, const SeparableTerm& term, double eps,
                           double weight) {
  NodalTerm t;
  t.space = sample_interior(op, 1.0 / eps, term.space);
  t.time = term.time;
  t.rate = 1.0 / eps;
  t.response = term.response;
  t.scale = term.scale;
  t.weight = weight;
  return t;
}

NodalTerm averaged_term(const DivergenceOperator& op, const SeparableTerm& term, double weight) {
  NodalTerm t;
  t.space.assign(op.unknowns(), term.space.mean());
  t.time = Profile::constant(term.time.mean(), 1);
  t.rate = 0.0;
  t.response = term.response;
  t.scale = term.scale;
  t.weight = weight;
  return t;
}

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ArgumentError("epsilon must be positive");
}

}  // namespace

WaveProblem oscillatory_problem(const MatrixField& a, const DriftField& f,
                                const DiffusionField& g, double eps, std::size_t cells) {
  check_eps(eps);
  const std::size_t dim = a.dim();
  if (f.dim() != dim || g.dim() != dim) throw ArgumentError("field dimensions differ");
  const Grid grid = Grid::unit_domain(dim, cells);
  WaveProblem p{grid,
                assemble_divergence_operator(grid,
                                             [&](std::span<const double> x) {
                                               std::array<double, 2> y{};
                                               for (std::size_t d = 0; d < dim; ++d)
                                                 y[d] = x[d] / eps;
                                               return a(x, std::span<const double>(y.data(), dim));
                                             }),
                {},
                {}};
  p.drift = oscillating_term(p.stiffness, f.term(), eps, 1.0);
  for (std::size_t k = 0; k < g.modes(); ++k)
    p.modes.push_back(oscillating_term(p.stiffness, g.shape(k), eps, g.weight(k)));
  return p;
}

WaveProblem homogenized_problem(const Tensor& effective, const Profile& macro,
                                const DriftField& f, const DiffusionField& g, std::size_t cells) {
  const std::size_t dim = effective.dim();
  if (f.dim() != dim || g.dim() != dim || macro.dimension() != dim)
    throw ArgumentError("field dimensions differ");
  const Grid grid = Grid::unit_domain(dim, cells);
  WaveProblem p{grid,
                assemble_divergence_operator(grid,
                                             [&](std::span<const double> x) {
                                               const double m = macro(x);
                                               Tensor t(dim);
                                               for (std::size_t i = 0; i < dim; ++i)
                                                 for (std::size_t j = 0; j < dim; ++j)
                                                   t(i, j) = m * effective(i, j);
                                               return t;
                                             }),
                {},
                {}};
  p.drift = averaged_term(p.stiffness, f.term(), 1.0);
  for (std::size_t k = 0; k < g.modes(); ++k)
    p.modes.push_back(averaged_term(p.stiffness, g.shape(k), g.weight(k)));
  return p;
}

WaveProblem free_wave_problem(const Tensor& a, std::size_t cells) {
  const std::size_t dim = a.dim();
  return homogenized_problem(a, Profile::constant(1.0, dim), DriftField::zero(dim),
                             DiffusionField::zero(dim), cells);
}

WaveState initial_state(const WaveProblem& problem, const Profile& u0, const Profile& u1) {
  WaveState s;
  s.u = sample_interior(problem.stiffness, 1.0, u0);
  s.v = sample_interior(problem.stiffness, 1.0, u1);
  s.t = 0.0;
  return s;
}

std::vector<double> to_nodal(const WaveProblem& problem, std::span<const double> interior) {
  const auto& op = problem.stiffness;
  if (interior.size() != op.unknowns()) throw ArgumentError("state size mismatch");
  std::vector<double> out(op.grid.node_count(), 0.0);
  for (std::size_t k = 0; k < op.unknowns(); ++k) out[op.node_of[k]] = interior[k];
  return out;
}

std::size_t step_count(double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw ArgumentError("T and dt must be positive");
  const double ratio = T / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    throw ArgumentError("dt must divide T");
  return static_cast<std::size_t>(n);
}

// ---------------------------------------------------------------------------

WaveSolver::WaveSolver(const WaveProblem& problem, double dt, double tolerance)
    : problem_(problem),
      dt_(dt),
      implicit_(problem.stiffness.matrix.shifted(1.0, 0.25 * dt * dt),
                SolverOptions{tolerance, 0, false, SolverKind::automatic}) {
  if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
  if (problem.drift.space.size() != problem.unknowns())
    throw ArgumentError("drift term does not match the grid");
}

void WaveSolver::step(WaveState& s, std::span<const double> dW) const {
  const std::size_t n = problem_.unknowns();
  const auto& L = problem_.stiffness.matrix;
  if (s.u.size() != n || s.v.size() != n) throw ArgumentError("state size mismatch");
  if (!dW.empty() && dW.size() < problem_.modes.size())
    throw ArgumentError("fewer noise increments than diffusion modes");

  std::vector<double> lu(n), lv(n), rhs(n);
  L.multiply(s.u, lu);
  L.multiply(s.v, lv);
  const double dt = dt_;
  const double q = 0.25 * dt * dt;
  const double tmid = s.t + 0.5 * dt;
  const double ft = problem_.drift.temporal(tmid);
  for (std::size_t i = 0; i < n; ++i)
    rhs[i] = s.v[i] - q * lv[i] - dt * lu[i] + dt * problem_.drift(i, ft, s.u[i]);
  if (!dW.empty()) {
    for (std::size_t k = 0; k < problem_.modes.size(); ++k) {
      const NodalTerm& g = problem_.modes[k];
      if (g.weight == 0.0 || dW[k] == 0.0) continue;
      const double gt = g.temporal(tmid);
      for (std::size_t i = 0; i < n; ++i) rhs[i] += g(i, gt, s.u[i]) * dW[k];
    }
  }

  std::vector<double> vn(s.v);  // warm start
  implicit_.solve(rhs, vn);
  for (std::size_t i = 0; i < n; ++i) {
    s.u[i] += 0.5 * dt * (s.v[i] + vn[i]);
    if (!std::isfinite(s.u[i]) || !std::isfinite(vn[i]))
      throw BlowUpError("non-finite state at t = " + std::to_string(s.t + dt) + " (unknown " +
                            std::to_string(i) + ")",
                        s.t + dt);
  }
  s.v = std::move(vn);
  s.t += dt;
}

TrajectoryRecord WaveSolver::run(WaveState state, double T, std::size_t stride,
                                 const BrownianIncrements* noise, bool keep_snapshots) const {
  if (stride == 0) throw ArgumentError("recording stride must be positive");
  const std::size_t steps = step_count(T, dt_);
  if (noise) {
    if (noise->steps() < steps) throw ArgumentError("noise stream shorter than the run");
    if (noise->modes() < problem_.modes.size())
      throw ArgumentError("noise stream has fewer modes than the diffusion field");
    if (std::abs(noise->dt() - dt_) > 1e-14 * dt_)
      throw ArgumentError("noise stream was generated for a different dt");
  }

  TrajectoryRecord rec;
  rec.steps = steps;
  rec.dt = dt_;
  rec.stride = stride;
  double sup_h1 = 0.0, sup_v = 0.0;
  const auto monitor = [&](bool record) {
    const double h1 = h1_seminorm(state.u);
    const double lv = l2(state.v);
    sup_h1 = std::max(sup_h1, h1 * h1 * h1 * h1);
    sup_v = std::max(sup_v, lv * lv * lv * lv);
    if (!record) return;
    rec.samples.push_back({state.t, h1, lv, energy(state), sup_h1, sup_v});
    if (keep_snapshots) {
      rec.snapshot_times.push_back(state.t);
      rec.snapshots.push_back(state.u);
    }
  };

  monitor(true);
  for (std::size_t n = 0; n < steps; ++n) {
    step(state, noise ? noise->at(n) : std::span<const double>{});
    // t from the step counter, so sample times do not drift
    state.t = static_cast<double>(n + 1) * dt_;
    monitor((n + 1) % stride == 0 || n + 1 == steps);
  }
  rec.final = std::move(state);
  return rec;
}

double WaveSolver::energy(const WaveState& s) const {
  const std::size_t n = problem_.unknowns();
  std::vector<double> lu(n);
  problem_.stiffness.matrix.multiply(s.u, lu);
  return 0.5 * problem_.grid.cell_volume() * (dot(s.v, s.v) + dot(s.u, lu));
}

double WaveSolver::h1_seminorm(std::span<const double> u) const {
  const Grid& grid = problem_.grid;
  const auto w = to_nodal(problem_, u);
  const std::size_t per = grid.nodes_per_axis();
  const double h = grid.spacing();
  double s = 0.0;
  for (std::size_t node = 0; node < w.size(); ++node) {
    const auto [i, j] = grid.node_ij(node);
    if (i + 1 < per) {
      const double d = w[grid.node_index(i + 1, j)] - w[node];
      s += d * d;
    }
    if (grid.dim() == 2 && j + 1 < per) {
      const double d = w[grid.node_index(i, j + 1)] - w[node];
      s += d * d;
    }
  }
  return std::sqrt(s * grid.cell_volume()) / h;
}

double WaveSolver::l2(std::span<const double> u) const {
  const Grid& grid = problem_.grid;
  const auto w = to_nodal(problem_, u);
  const std::size_t nc = grid.dim() == 1 ? 2 : 4;
  double s = 0.0;
  for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
    const auto cn = grid.cell_nodes(cell);
    double c = 0.0;
    for (std::size_t k = 0; k < nc; ++k) c += w[cn[k]];
    c /= static_cast<double>(nc);
    s += c * c;
  }
  return std::sqrt(s * grid.cell_volume());
}

}  // namespace homog
