#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "homog/tensor.hpp"

namespace homog {

enum class Boundary { dirichlet, periodic };

std::string_view to_string(Boundary b);

/// Uniform tensor grid of `cells` intervals per axis on [origin, origin + side]^dim.
/// Dirichlet grids carry cells + 1 nodes per axis (boundary nodes included);
/// periodic grids carry `cells` nodes per axis with opposite faces identified.
class Grid {
 public:
  Grid(std::size_t dim, double origin, double side, std::size_t cells, Boundary bc);

  /// [-R, R]^dim with Dirichlet boundary.
  static Grid box(std::size_t dim, double half_width, std::size_t cells);
  /// Unit cell Y = [0, 1)^dim, periodic.
  static Grid unit_cell(std::size_t dim, std::size_t cells);
  /// Physical domain Q = (0, 1)^dim, Dirichlet.
  static Grid unit_domain(std::size_t dim, std::size_t cells);

  std::size_t dim() const noexcept { return dim_; }
  double origin() const noexcept { return origin_; }
  double side() const noexcept { return side_; }
  std::size_t cells() const noexcept { return cells_; }
  Boundary boundary() const noexcept { return bc_; }
  bool periodic() const noexcept { return bc_ == Boundary::periodic; }
  double spacing() const noexcept { return side_ / static_cast<double>(cells_); }
  /// h^dim
  double cell_volume() const noexcept;
  double volume() const noexcept;

  std::size_t nodes_per_axis() const noexcept { return periodic() ? cells_ : cells_ + 1; }
  std::size_t node_count() const noexcept;
  std::size_t cell_count() const noexcept;

  /// Coordinate of node index i along any axis.
  double coordinate(std::size_t i) const noexcept {
    return origin_ + spacing() * static_cast<double>(i);
  }
  /// Coordinate of the centre of cell i along any axis.
  double cell_center(std::size_t i) const noexcept {
    return origin_ + spacing() * (static_cast<double>(i) + 0.5);
  }

  std::size_t node_index(std::size_t i, std::size_t j = 0) const noexcept {
    return i + nodes_per_axis() * j;
  }
  std::array<std::size_t, 2> node_ij(std::size_t node) const noexcept {
    return {node % nodes_per_axis(), node / nodes_per_axis()};
  }
  std::array<std::size_t, 2> cell_ij(std::size_t cell) const noexcept {
    return {cell % cells_, cell / cells_};
  }
  /// Node index of axis position i + 1, wrapping on periodic grids.
  std::size_t next(std::size_t i) const noexcept { return periodic() ? (i + 1) % cells_ : i + 1; }

  bool is_boundary(std::size_t node) const noexcept;
  /// Node coordinates (dim entries used).
  std::array<double, 2> node_point(std::size_t node) const noexcept;
  std::array<double, 2> cell_point(std::size_t cell) const noexcept;

  /// Corner node indices of cell c in the order (bl, br, tl, tr); 1D uses (left, right).
  std::array<std::size_t, 4> cell_nodes(std::size_t cell) const noexcept;

 private:
  std::size_t dim_;
  double origin_;
  double side_;
  std::size_t cells_;
  Boundary bc_;
};

}  // namespace homog
