#include "homog/grid.hpp"

#include <cmath>
#include <string>

namespace homog {

std::string_view to_string(Boundary b) {
  return b == Boundary::dirichlet ? "dirichlet" : "periodic";
}

Grid::Grid(std::size_t dim, double origin, double side, std::size_t cells, Boundary bc)
    : dim_(dim), origin_(origin), side_(side), cells_(cells), bc_(bc) {
  if (dim < 1 || dim > kMaxDim) throw ArgumentError("grid dimension must be 1 or 2");
  if (cells < 4) throw ArgumentError("grid needs at least 4 cells per axis, got " +
                                     std::to_string(cells));
  if (!(side > 0.0) || !std::isfinite(side)) throw ArgumentError("grid side must be positive");
}

Grid Grid::box(std::size_t dim, double half_width, std::size_t cells) {
  return Grid(dim, -half_width, 2.0 * half_width, cells, Boundary::dirichlet);
}

Grid Grid::unit_cell(std::size_t dim, std::size_t cells) {
  return Grid(dim, 0.0, 1.0, cells, Boundary::periodic);
}

Grid Grid::unit_domain(std::size_t dim, std::size_t cells) {
  return Grid(dim, 0.0, 1.0, cells, Boundary::dirichlet);
}

double Grid::cell_volume() const noexcept { return std::pow(spacing(), static_cast<double>(dim_)); }

double Grid::volume() const noexcept { return std::pow(side_, static_cast<double>(dim_)); }

std::size_t Grid::node_count() const noexcept {
  const std::size_t n = nodes_per_axis();
  return dim_ == 1 ? n : n * n;
}

std::size_t Grid::cell_count() const noexcept { return dim_ == 1 ? cells_ : cells_ * cells_; }

bool Grid::is_boundary(std::size_t node) const noexcept {
  if (periodic()) return false;
  const auto [i, j] = node_ij(node);
  if (i == 0 || i == cells_) return true;
  return dim_ == 2 && (j == 0 || j == cells_);
}

std::array<double, 2> Grid::node_point(std::size_t node) const noexcept {
  const auto [i, j] = node_ij(node);
  return {coordinate(i), dim_ == 2 ? coordinate(j) : 0.0};
}

std::array<double, 2> Grid::cell_point(std::size_t cell) const noexcept {
  const auto [i, j] = cell_ij(cell);
  return {cell_center(i), dim_ == 2 ? cell_center(j) : 0.0};
}

std::array<std::size_t, 4> Grid::cell_nodes(std::size_t cell) const noexcept {
  const auto [i, j] = cell_ij(cell);
  if (dim_ == 1) return {i, next(i), 0, 0};
  const std::size_t i1 = next(i);
  const std::size_t j1 = next(j);
  return {node_index(i, j), node_index(i1, j), node_index(i, j1), node_index(i1, j1)};
}

}  // namespace homog
