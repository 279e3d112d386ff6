#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "somguard/error.hpp"
#include "somguard/format.hpp"
#include "somguard/grid.hpp"
#include "somguard/som_map.hpp"

namespace somguard {

struct UMatrix {
  GridShape shape;
  std::vector<double> values;  // row-major, one per node

  double at(std::size_t row, std::size_t col) const { return values.at(row * shape.cols() + col); }
};

// Each node's mean weight-space distance to its 4-connected lattice neighbors.
inline UMatrix compute_umatrix(const SomMap& map) {
  const GridShape& shape = map.shape();
  UMatrix u{shape, std::vector<double>(shape.node_count(), 0.0)};
  for (std::size_t i = 0; i < shape.node_count(); ++i) {
    const auto nbrs = neighbors_of(position_of(i, shape), shape);
    if (nbrs.empty()) continue;
    double sum = 0.0;
    for (const auto& p : nbrs) {
      sum += euclidean_distance(map.weight(i), map.weight(index_of(p, shape)));
    }
    u.values[i] = sum / static_cast<double>(nbrs.size());
  }
  return u;
}

enum class UMatrixFormat { GridCsv, GrayscaleImage };

inline UMatrixFormat parse_umatrix_format(std::string_view tag) {
  if (tag == "grid-csv") return UMatrixFormat::GridCsv;
  if (tag == "grayscale-image") return UMatrixFormat::GrayscaleImage;
  throw usage_error("unsupported U-Matrix format '" + std::string(tag) +
                    "' (expected grid-csv or grayscale-image)");
}

// Linear min-max scaling to 0..255, rounding half away from zero. A constant
// matrix maps to all zeros.
inline std::vector<int> umatrix_gray_levels(const UMatrix& u) {
  std::vector<int> px(u.values.size(), 0);
  if (u.values.empty()) return px;
  const auto [lo, hi] = std::minmax_element(u.values.begin(), u.values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return px;
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double scaled = (u.values[i] - *lo) * 255.0 / range;
    px[i] = std::clamp(static_cast<int>(std::round(scaled)), 0, 255);
  }
  return px;
}

inline void export_umatrix(const UMatrix& u, UMatrixFormat format, std::ostream& out) {
  const std::size_t rows = u.shape.rows();
  const std::size_t cols = u.shape.cols();
  switch (format) {
    case UMatrixFormat::GridCsv:
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          if (c) out << ',';
          out << format_double(u.at(r, c));
        }
        out << '\n';
      }
      break;
    case UMatrixFormat::GrayscaleImage: {
      const auto px = umatrix_gray_levels(u);
      out << "P2\n" << cols << ' ' << rows << "\n255\n";
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          if (c) out << ' ';
          out << px[r * cols + c];
        }
        out << '\n';
      }
      break;
    }
  }
}

}  // namespace somguard
