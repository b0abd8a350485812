#pragma once

// Corrector (cell) problems
//
//   -div_y( A0(x, .) (xi + grad_y chi) ) = 0
//
// on the truncated box [-R, R]^N with chi = 0 on the boundary, or on the unit cell
// Y = [0, 1)^N with periodic, mean-zero chi.
//
// Discretization: node-based unknowns, coefficients sampled at cell centres, and the
// corner-gradient energy
//
//   J(chi) = sum_cells |cell| * mean_{corners c} (xi + g_c)^T A_cell (xi + g_c),
//
// where g_c pairs the two edge differences meeting at corner c. For diagonal A this is the
// 3-point / 5-point stencil; full symmetric A gives a 9-point SPD stencil. The Euler-Lagrange
// system L chi = b is symmetric, and its residual b - L chi equals the discrete divergence of
// the edge fluxes returned by flux().

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "homog/fields.hpp"
#include "homog/grid.hpp"
#include "homog/sparse.hpp"
#include "homog/tensor.hpp"

namespace homog {

/// Coefficient tensor sampled at a cell centre.
using CellSampler = std::function<Tensor(std::span<const double> center)>;

/// Assembled divergence-form operator -div(A grad .) on a grid.
struct DivergenceOperator {
  Grid grid;
  std::vector<Tensor> coefficients;     // one tensor per cell
  std::vector<std::ptrdiff_t> unknown;  // node -> unknown index, -1 on Dirichlet boundary nodes
  std::vector<std::size_t> node_of;     // unknown -> node
  CsrMatrix matrix;                     // symmetric, positive (semi)definite

  std::size_t unknowns() const noexcept { return node_of.size(); }
};

DivergenceOperator assemble_divergence_operator(const Grid& grid, const CellSampler& sampler);

/// Right-hand side of the corrector system for macroscopic gradient `xi`.
std::vector<double> corrector_rhs(const DivergenceOperator& op, std::span<const double> xi);

/// Corner-gradient pairs of a cell: gradients[c] for c in (bl, br, tl, tr); 1D uses c = 0 only.
struct CornerGradients {
  std::array<std::array<double, 2>, 4> g{};
  std::size_t count = 1;
};
CornerGradients corner_gradients(const Grid& grid, std::span<const double> nodal,
                                 std::size_t cell);

struct CellSolution {
  Grid grid;
  std::array<double, 2> direction{};  // xi; e_j for the j-th corrector
  std::array<double, 2> x_sample{};
  double half_width = 0.0;            // R of the truncated box (0.5 for the unit cell)
  std::vector<double> chi;            // nodal values, all nodes
  std::vector<std::array<double, 2>> gradient;  // cell-averaged corner gradient
  double residual = 0.0;              // relative residual of the discrete system
  std::size_t iterations = 0;
  double gradient_energy = 0.0;       // (1/|box|) int |grad chi|^2
  double mean = 0.0;                  // grid mean of chi
};

/// Normal fluxes on grid segments plus the cell-averaged flux vector A (xi + grad chi).
struct FluxField {
  Grid grid;
  /// edge[d][node]: flux component d on the segment from `node` to its axis-d neighbour.
  std::array<std::vector<double>, 2> edge;
  std::vector<std::array<double, 2>> cell_mean;
};

/// One grid + coefficient sample, reusable for several directions xi.
class CellProblem {
 public:
  CellProblem(const MatrixField& field, std::span<const double> x_sample, const Grid& grid,
              double tolerance);

  CellSolution solve(std::span<const double> xi) const;
  /// j is zero-based.
  CellSolution solve_direction(std::size_t j) const;
  FluxField flux(const CellSolution& sol) const;

  const DivergenceOperator& op() const noexcept { return op_; }
  const Grid& grid() const noexcept { return op_.grid; }
  double half_width() const noexcept { return half_width_; }

 private:
  std::array<double, 2> x_{};
  double half_width_;
  DivergenceOperator op_;
  SpdSolver solver_;
};

/// Truncated Dirichlet corrector on [-R, R]^N with `cells` intervals per axis. j zero-based.
CellSolution solve_truncated_cell(const MatrixField& field, std::span<const double> x_sample,
                                  std::size_t j, double half_width, std::size_t cells,
                                  double tolerance = 1e-10);

/// Periodic mean-zero corrector on Y = [0, 1)^N. Requires a constant or periodic field.
CellSolution solve_periodic_cell(const MatrixField& field, std::span<const double> x_sample,
                                 std::size_t j, std::size_t cells, double tolerance = 1e-10);

/// w(y) = chi(R y) / R on [-1, 1]^N; nodal values map one to one.
CellSolution rescale_solution(const CellSolution& sol);

/// Fluxes of `sol` with A re-sampled from `field` at sol.x_sample.
FluxField flux(const CellSolution& sol, const MatrixField& field);
/// Fluxes from already-sampled cell coefficients.
FluxField flux(const CellSolution& sol, std::span<const Tensor> coefficients);

/// Discrete divergence of the edge fluxes at every node (0 on Dirichlet boundary nodes).
std::vector<double> flux_divergence(const FluxField& flux);

/// sqrt(sum chi^2 h^N)
double l2_norm(const Grid& grid, std::span<const double> nodal);

}  // namespace homog
