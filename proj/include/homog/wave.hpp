#pragma once

// Semilinear stochastic wave equation on Q = (0, 1)^N with homogeneous Dirichlet data
//
//   du' - div(A grad u) dt = f(x, t, u) dt + sum_k g_k(x, t, u) dW^k,
//
// in oscillatory form (A(x, x/eps), f(x/eps, t/eps, u), ...) or homogenized form
// (A~, f~(u), g~_k(u)). Time stepping: implicit midpoint in (u, v) for the stiffness,
// explicit drift and Euler-Maruyama noise,
//
//   (I + dt^2/4 L) v+ = (I - dt^2/4 L) v - dt L u + dt f(u, t_mid) + sum_k g_k(u, t_mid) dW^k
//   u+ = u + dt (v + v+) / 2,
//
// which conserves the discrete energy exactly when f = g = 0.

#include <cstddef>
#include <span>
#include <vector>

#include "homog/cell_problem.hpp"
#include "homog/fields.hpp"
#include "homog/grid.hpp"
#include "homog/noise.hpp"
#include "homog/sparse.hpp"
#include "homog/tensor.hpp"

namespace homog {

/// weight * scale * space[node] * time(rate * t) * h(u)
struct NodalTerm {
  std::vector<double> space;  // per unknown
  Profile time = Profile::constant(1.0, 1);
  double rate = 0.0;  // 1/eps for fast time, 0 for frozen time
  Response response = Response::linear;
  double scale = 1.0;
  double weight = 1.0;

  double temporal(double t) const { return time(rate * t); }
  double operator()(std::size_t i, double temporal_value, double u) const {
    return weight * (scale * space[i] * temporal_value * apply_response(response, u));
  }
};

struct WaveProblem {
  Grid grid;
  DivergenceOperator stiffness;  // L on interior unknowns
  NodalTerm drift;
  std::vector<NodalTerm> modes;

  std::size_t unknowns() const noexcept { return stiffness.unknowns(); }
};

/// A(x, x/eps), f(x/eps, t/eps, .), g_k(x/eps, t/eps, .) on `cells` intervals per axis.
WaveProblem oscillatory_problem(const MatrixField& a, const DriftField& f,
                                const DiffusionField& g, double eps, std::size_t cells);

/// m(x) A~, and every separable term replaced by its mean value M(space) M(time).
WaveProblem homogenized_problem(const Tensor& effective, const Profile& macro,
                                const DriftField& f, const DiffusionField& g, std::size_t cells);

/// Coefficient A (constant tensor) with no sources.
WaveProblem free_wave_problem(const Tensor& a, std::size_t cells);

struct WaveState {
  std::vector<double> u;  // interior unknowns
  std::vector<double> v;
  double t = 0.0;
};

/// u(0) = u0, u'(0) = u1 at the interior nodes.
WaveState initial_state(const WaveProblem& problem, const Profile& u0, const Profile& u1);

struct MonitorSample {
  double t = 0.0;
  double h1 = 0.0;       // |u|_{H1_0}
  double l2v = 0.0;      // |u'|_{L2}
  double energy = 0.0;
  double sup4_h1 = 0.0;  // sup_{s<=t} |u(s)|^4_{H1_0}
  double sup4_l2v = 0.0;
};

struct TrajectoryRecord {
  std::vector<MonitorSample> samples;        // every `stride` steps, t = 0 included
  std::vector<double> snapshot_times;
  std::vector<std::vector<double>> snapshots;  // u at the sample times (if requested)
  WaveState final;
  std::size_t steps = 0;
  double dt = 0.0;
  std::size_t stride = 1;
};

/// Number of steps T / dt; ArgumentError unless dt divides T within rounding.
std::size_t step_count(double T, double dt);

class WaveSolver {
 public:
  WaveSolver(const WaveProblem& problem, double dt, double tolerance = 1e-12);

  /// One step with increments dW (one per mode; may be empty when the problem is noise-free).
  void step(WaveState& state, std::span<const double> dW) const;

  /// `noise` may be null for a deterministic run. Throws BlowUpError on a non-finite state.
  TrajectoryRecord run(WaveState state, double T, std::size_t stride,
                       const BrownianIncrements* noise, bool keep_snapshots = false) const;

  double energy(const WaveState& state) const;
  /// sqrt(sum over grid edges of (du/h)^2 h^N), boundary values 0.
  double h1_seminorm(std::span<const double> u) const;
  /// Midpoint rule: cell-centre values averaged from the corners.
  double l2(std::span<const double> w) const;

  const WaveProblem& problem() const noexcept { return problem_; }
  double dt() const noexcept { return dt_; }

 private:
  WaveProblem problem_;
  double dt_;
  SpdSolver implicit_;
};

/// Interior unknowns -> all grid nodes (zeros on the boundary).
std::vector<double> to_nodal(const WaveProblem& problem, std::span<const double> interior);

}  // namespace homog
