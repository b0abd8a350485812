#include "homog/cell_problem.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "homog/errors.hpp"

namespace homog {

namespace {

// Corner gradient templates (scaled by h): rows are d/dy1, d/dy2; columns are the
// cell nodes (bl, br, tl, tr).
constexpr double kCorner2d[4][2][4] = {
    {{-1, 1, 0, 0}, {-1, 0, 1, 0}},  // bl
    {{-1, 1, 0, 0}, {0, -1, 0, 1}},  // br
    {{0, 0, -1, 1}, {-1, 0, 1, 0}},  // tl
    {{0, 0, -1, 1}, {0, -1, 0, 1}},  // tr
};

std::size_t corners(std::size_t dim) { return dim == 1 ? 1 : 4; }
std::size_t cell_node_count(std::size_t dim) { return dim == 1 ? 2 : 4; }

double templ(std::size_t dim, std::size_t c, std::size_t d, std::size_t k) {
  if (dim == 1) return k == 0 ? -1.0 : 1.0;
  return kCorner2d[c][d][k];
}

std::array<double, 2> to_point(std::span<const double> x, std::size_t dim) {
  if (x.size() != dim) throw ArgumentError("sample point dimension mismatch");
  std::array<double, 2> p{};
  for (std::size_t d = 0; d < dim; ++d) p[d] = x[d];
  return p;
}

}  // namespace

DivergenceOperator assemble_divergence_operator(const Grid& grid, const CellSampler& sampler) {
  DivergenceOperator op{grid, {}, {}, {}, {}};
  const std::size_t dim = grid.dim();
  const std::size_t nodes = grid.node_count();
  op.unknown.assign(nodes, -1);
  for (std::size_t node = 0; node < nodes; ++node) {
    if (grid.is_boundary(node)) continue;
    op.unknown[node] = static_cast<std::ptrdiff_t>(op.node_of.size());
    op.node_of.push_back(node);
  }

  const double h = grid.spacing();
  const double w = 1.0 / static_cast<double>(corners(dim));
  const std::size_t nc = cell_node_count(dim);
  std::vector<Triplet> triplets;
  triplets.reserve(grid.cell_count() * nc * nc);
  op.coefficients.reserve(grid.cell_count());

  for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
    const auto center = grid.cell_point(cell);
    const Tensor a = sampler(std::span<const double>(center.data(), dim));
    if (a.dim() != dim) throw ArgumentError("coefficient sampler returned wrong dimension");
    op.coefficients.push_back(a);

    // L_e = (w / h^2) sum_c G_c^T A G_c
    double le[4][4] = {};
    for (std::size_t c = 0; c < corners(dim); ++c)
      for (std::size_t k = 0; k < nc; ++k)
        for (std::size_t l = 0; l < nc; ++l) {
          double s = 0.0;
          for (std::size_t p = 0; p < dim; ++p)
            for (std::size_t q = 0; q < dim; ++q)
              s += templ(dim, c, p, k) * a(p, q) * templ(dim, c, q, l);
          le[k][l] += w * s / (h * h);
        }

    const auto cn = grid.cell_nodes(cell);
    for (std::size_t k = 0; k < nc; ++k) {
      const auto row = op.unknown[cn[k]];
      if (row < 0) continue;
      for (std::size_t l = 0; l < nc; ++l) {
        const auto col = op.unknown[cn[l]];
        if (col < 0 || le[k][l] == 0.0) continue;
        triplets.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col), le[k][l]});
      }
    }
  }
  op.matrix = CsrMatrix::from_triplets(op.unknowns(), std::move(triplets));
  return op;
}

std::vector<double> corrector_rhs(const DivergenceOperator& op, std::span<const double> xi) {
  const Grid& grid = op.grid;
  const std::size_t dim = grid.dim();
  if (xi.size() != dim) throw ArgumentError("direction vector dimension mismatch");
  const double h = grid.spacing();
  const double w = 1.0 / static_cast<double>(corners(dim));
  std::vector<double> b(op.unknowns(), 0.0);
  for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
    std::array<double, 2> axi{};
    op.coefficients[cell].apply(xi, axi);
    const auto cn = grid.cell_nodes(cell);
    for (std::size_t k = 0; k < cell_node_count(dim); ++k) {
      const auto row = op.unknown[cn[k]];
      if (row < 0) continue;
      double s = 0.0;
      for (std::size_t c = 0; c < corners(dim); ++c)
        for (std::size_t p = 0; p < dim; ++p) s += templ(dim, c, p, k) * axi[p];
      b[static_cast<std::size_t>(row)] -= w * s / h;
    }
  }
  return b;
}

CornerGradients corner_gradients(const Grid& grid, std::span<const double> nodal,
                                 std::size_t cell) {
  const std::size_t dim = grid.dim();
  const double h = grid.spacing();
  const auto cn = grid.cell_nodes(cell);
  CornerGradients out;
  out.count = corners(dim);
  for (std::size_t c = 0; c < out.count; ++c)
    for (std::size_t d = 0; d < dim; ++d) {
      double s = 0.0;
      for (std::size_t k = 0; k < cell_node_count(dim); ++k) s += templ(dim, c, d, k) * nodal[cn[k]];
      out.g[c][d] = s / h;
    }
  return out;
}

// ---------------------------------------------------------------------------

CellProblem::CellProblem(const MatrixField& field, std::span<const double> x_sample,
                         const Grid& grid, double tolerance)
    : x_(to_point(x_sample, field.dim())),
      half_width_(0.5 * grid.side()),
      op_(assemble_divergence_operator(grid,
                                       [&](std::span<const double> y) {
                                         return field(std::span<const double>(x_.data(), field.dim()), y);
                                       })),
      solver_(op_.matrix, SolverOptions{tolerance, 0, grid.periodic(), SolverKind::automatic}) {
  if (grid.dim() != field.dim()) throw ArgumentError("grid and field dimension differ");
  if (!(tolerance > 0.0)) throw ArgumentError("solver tolerance must be positive");
}

CellSolution CellProblem::solve(std::span<const double> xi) const {
  const Grid& grid = op_.grid;
  const std::size_t dim = grid.dim();
  const auto b = corrector_rhs(op_, xi);
  std::vector<double> u(op_.unknowns(), 0.0);
  const SolveReport rep = solver_.solve(b, u);

  CellSolution sol{grid, {}, x_, half_width_, {}, {}, rep.relative_residual, rep.iterations, 0.0, 0.0};
  for (std::size_t d = 0; d < dim; ++d) sol.direction[d] = xi[d];
  sol.chi.assign(grid.node_count(), 0.0);
  for (std::size_t k = 0; k < op_.unknowns(); ++k) sol.chi[op_.node_of[k]] = u[k];

  sol.gradient.resize(grid.cell_count());
  double energy = 0.0;
  for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
    const auto cg = corner_gradients(grid, sol.chi, cell);
    std::array<double, 2> mean{};
    double e = 0.0;
    for (std::size_t c = 0; c < cg.count; ++c)
      for (std::size_t d = 0; d < dim; ++d) {
        mean[d] += cg.g[c][d] / static_cast<double>(cg.count);
        e += cg.g[c][d] * cg.g[c][d] / static_cast<double>(cg.count);
      }
    sol.gradient[cell] = mean;
    energy += e;
  }
  sol.gradient_energy = energy / static_cast<double>(grid.cell_count());
  sol.mean = std::accumulate(sol.chi.begin(), sol.chi.end(), 0.0) /
             static_cast<double>(sol.chi.size());
  return sol;
}

CellSolution CellProblem::solve_direction(std::size_t j) const {
  const std::size_t dim = op_.grid.dim();
  if (j >= dim) throw ArgumentError("direction index out of range");
  std::array<double, 2> xi{};
  xi[j] = 1.0;
  return solve(std::span<const double>(xi.data(), dim));
}

FluxField CellProblem::flux(const CellSolution& sol) const {
  return homog::flux(sol, op_.coefficients);
}

// ---------------------------------------------------------------------------

CellSolution solve_truncated_cell(const MatrixField& field, std::span<const double> x_sample,
                                  std::size_t j, double half_width, std::size_t cells,
                                  double tolerance) {
  if (!(half_width > 0.0)) throw ArgumentError("truncation half-width R must be positive");
  if (j >= field.dim()) throw ArgumentError("direction index out of range");
  require_elliptic(field, x_sample, half_width);
  const CellProblem problem(field, x_sample, Grid::box(field.dim(), half_width, cells), tolerance);
  return problem.solve_direction(j);
}

CellSolution solve_periodic_cell(const MatrixField& field, std::span<const double> x_sample,
                                 std::size_t j, std::size_t cells, double tolerance) {
  if (field.structure() != Structure::constant && field.structure() != Structure::periodic)
    throw InputError(std::string("periodic cell problem needs a periodic field, got ") +
                     std::string(to_string(field.structure())));
  if (j >= field.dim()) throw ArgumentError("direction index out of range");
  require_elliptic(field, x_sample, 1.0);
  const CellProblem problem(field, x_sample, Grid::unit_cell(field.dim(), cells), tolerance);
  return problem.solve_direction(j);
}

CellSolution rescale_solution(const CellSolution& sol) {
  if (sol.grid.periodic()) throw ArgumentError("rescaling applies to truncated Dirichlet solutions");
  const double r = sol.half_width;
  CellSolution w = sol;
  w.grid = Grid(sol.grid.dim(), sol.grid.origin() / r, sol.grid.side() / r, sol.grid.cells(),
                Boundary::dirichlet);
  w.half_width = 1.0;
  for (double& v : w.chi) v /= r;
  w.mean = sol.mean / r;
  return w;
}

FluxField flux(const CellSolution& sol, const MatrixField& field) {
  const Grid& grid = sol.grid;
  std::vector<Tensor> coeff;
  coeff.reserve(grid.cell_count());
  const std::span<const double> x(sol.x_sample.data(), grid.dim());
  for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
    const auto c = grid.cell_point(cell);
    coeff.push_back(field(x, std::span<const double>(c.data(), grid.dim())));
  }
  return flux(sol, coeff);
}

FluxField flux(const CellSolution& sol, std::span<const Tensor> coefficients) {
  const Grid& grid = sol.grid;
  const std::size_t dim = grid.dim();
  if (coefficients.size() != grid.cell_count())
    throw ArgumentError("one coefficient tensor per cell required");
  FluxField out{grid, {}, {}};
  out.cell_mean.resize(grid.cell_count());
  for (std::size_t d = 0; d < dim; ++d) out.edge[d].assign(grid.node_count(), 0.0);
  std::vector<double> weight(dim == 1 ? 0 : grid.node_count() * 2, 0.0);

  const std::span<const double> xi(sol.direction.data(), dim);
  for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
    const auto cg = corner_gradients(grid, sol.chi, cell);
    std::array<std::array<double, 2>, 4> q{};
    std::array<double, 2> mean{};
    for (std::size_t c = 0; c < cg.count; ++c) {
      std::array<double, 2> v{};
      for (std::size_t d = 0; d < dim; ++d) v[d] = xi[d] + cg.g[c][d];
      coefficients[cell].apply(std::span<const double>(v.data(), dim), q[c]);
      for (std::size_t d = 0; d < dim; ++d) mean[d] += q[c][d] / static_cast<double>(cg.count);
    }
    out.cell_mean[cell] = mean;

    const auto cn = grid.cell_nodes(cell);
    if (dim == 1) {
      out.edge[0][cn[0]] = q[0][0];
      continue;
    }
    // bottom segment (bl -> br) uses corners bl, br; top (tl -> tr) uses tl, tr;
    // left segment (bl -> tl) uses bl, tl; right (br -> tr) uses br, tr.
    const std::size_t nn = grid.node_count();
    auto add = [&](std::size_t axis, std::size_t node, double value) {
      out.edge[axis][node] += value;
      weight[axis * nn + node] += 1.0;
    };
    add(0, cn[0], q[0][0]);
    add(0, cn[0], q[1][0]);
    add(0, cn[2], q[2][0]);
    add(0, cn[2], q[3][0]);
    add(1, cn[0], q[0][1]);
    add(1, cn[0], q[2][1]);
    add(1, cn[1], q[1][1]);
    add(1, cn[1], q[3][1]);
  }
  if (dim == 2) {
    const std::size_t nn = grid.node_count();
    for (std::size_t axis = 0; axis < 2; ++axis)
      for (std::size_t node = 0; node < nn; ++node)
        if (weight[axis * nn + node] > 0.0) out.edge[axis][node] /= weight[axis * nn + node];
  }
  return out;
}

std::vector<double> flux_divergence(const FluxField& flux) {
  const Grid& grid = flux.grid;
  const std::size_t dim = grid.dim();
  const double h = grid.spacing();
  const std::size_t cells = grid.cells();
  std::vector<double> div(grid.node_count(), 0.0);
  const auto prev = [&](std::size_t i) { return grid.periodic() ? (i + cells - 1) % cells : i - 1; };
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    if (grid.is_boundary(node)) continue;
    const auto [i, j] = grid.node_ij(node);
    double s = (flux.edge[0][node] - flux.edge[0][grid.node_index(prev(i), j)]) / h;
    if (dim == 2) s += (flux.edge[1][node] - flux.edge[1][grid.node_index(i, prev(j))]) / h;
    div[node] = s;
  }
  return div;
}

double l2_norm(const Grid& grid, std::span<const double> nodal) {
  double s = 0.0;
  for (double v : nodal) s += v * v;
  return std::sqrt(s * grid.cell_volume());
}

}  // namespace homog
