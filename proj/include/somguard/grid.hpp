#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "somguard/error.hpp"

namespace somguard {

struct GridPosition {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const GridPosition&, const GridPosition&) = default;
};

// Rectangular lattice, nodes indexed row-major.
class GridShape {
public:
  GridShape(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) {
      throw domain_error("grid shape must have at least one row and one column, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t node_count() const noexcept { return rows_ * cols_; }

  bool contains(const GridPosition& p) const noexcept { return p.row < rows_ && p.col < cols_; }

  friend bool operator==(const GridShape&, const GridShape&) = default;

private:
  std::size_t rows_;
  std::size_t cols_;
};

inline GridPosition position_of(std::size_t index, const GridShape& shape) {
  if (index >= shape.node_count()) {
    throw domain_error("node index " + std::to_string(index) + " out of range for " +
                       std::to_string(shape.rows()) + "x" + std::to_string(shape.cols()) + " grid");
  }
  return {index / shape.cols(), index % shape.cols()};
}

inline std::size_t index_of(const GridPosition& p, const GridShape& shape) {
  if (!shape.contains(p)) {
    throw domain_error("grid position (" + std::to_string(p.row) + "," + std::to_string(p.col) +
                       ") outside " + std::to_string(shape.rows()) + "x" +
                       std::to_string(shape.cols()) + " grid");
  }
  return p.row * shape.cols() + p.col;
}

// ||a - b||^2 in lattice units. Exact for any realistic grid size.
inline double grid_distance_squared(const GridPosition& a, const GridPosition& b) noexcept {
  const double dr = static_cast<double>(a.row) - static_cast<double>(b.row);
  const double dc = static_cast<double>(a.col) - static_cast<double>(b.col);
  return dr * dr + dc * dc;
}

inline double grid_distance(const GridPosition& a, const GridPosition& b) noexcept {
  return std::sqrt(grid_distance_squared(a, b));
}

// 4-connected neighbors inside the grid, ordered up, down, left, right.
inline std::vector<GridPosition> neighbors_of(const GridPosition& p, const GridShape& shape) {
  if (!shape.contains(p)) {
    throw domain_error("grid position outside grid");
  }
  std::vector<GridPosition> out;
  out.reserve(4);
  if (p.row > 0) out.push_back({p.row - 1, p.col});
  if (p.row + 1 < shape.rows()) out.push_back({p.row + 1, p.col});
  if (p.col > 0) out.push_back({p.row, p.col - 1});
  if (p.col + 1 < shape.cols()) out.push_back({p.row, p.col + 1});
  return out;
}

}  // namespace somguard
