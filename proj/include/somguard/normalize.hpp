#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "somguard/dataset.hpp"
#include "somguard/error.hpp"
#include "somguard/format.hpp"

namespace somguard {

enum class NormalizationMethod { MinMax, ZScore, None };

inline NormalizationMethod parse_normalization(std::string_view tag) {
  if (tag == "minmax") return NormalizationMethod::MinMax;
  if (tag == "zscore") return NormalizationMethod::ZScore;
  if (tag == "none") return NormalizationMethod::None;
  throw usage_error("unknown normalization '" + std::string(tag) +
                    "' (expected minmax, zscore or none)");
}

inline std::string_view to_string(NormalizationMethod m) {
  switch (m) {
    case NormalizationMethod::MinMax: return "minmax";
    case NormalizationMethod::ZScore: return "zscore";
    case NormalizationMethod::None: return "none";
  }
  return "none";
}

// For minmax, (first, second) = (min, max); for zscore, (mean, population
// stddev). Constant columns are flagged as degenerate and map to 0.
struct NormalizationModel {
  NormalizationMethod method = NormalizationMethod::None;
  std::vector<double> first;
  std::vector<double> second;
  std::vector<bool> degenerate;

  std::size_t dim() const noexcept { return first.size(); }
};

inline NormalizationModel fit_normalizer(const Dataset& data, NormalizationMethod method) {
  if (data.empty()) throw domain_error("cannot fit a normalizer on an empty dataset");
  const std::size_t n = data.dim();
  NormalizationModel m{method, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                       std::vector<bool>(n, false)};
  switch (method) {
    case NormalizationMethod::None:
      break;
    case NormalizationMethod::MinMax: {
      const auto b = data_bounds(data);
      for (std::size_t k = 0; k < n; ++k) {
        m.first[k] = b[k].min;
        m.second[k] = b[k].max;
        m.degenerate[k] = !(b[k].max > b[k].min);
      }
      break;
    }
    case NormalizationMethod::ZScore: {
      const double count = static_cast<double>(data.size());
      for (const auto& v : data.vectors) {
        for (std::size_t k = 0; k < n; ++k) m.first[k] += v[k];
      }
      for (auto& mean : m.first) mean /= count;
      for (const auto& v : data.vectors) {
        for (std::size_t k = 0; k < n; ++k) {
          const double d = v[k] - m.first[k];
          m.second[k] += d * d;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        m.second[k] = std::sqrt(m.second[k] / count);
        m.degenerate[k] = !(m.second[k] > 0.0);
      }
      break;
    }
  }
  return m;
}

inline FeatureVector apply_normalizer(const NormalizationModel& m, const FeatureVector& x) {
  if (x.size() != m.dim()) {
    throw domain_error("dimension mismatch: normalizer expects " + std::to_string(m.dim()) +
                       ", input has " + std::to_string(x.size()));
  }
  FeatureVector y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    switch (m.method) {
      case NormalizationMethod::None:
        y[k] = x[k];
        break;
      case NormalizationMethod::MinMax:
        y[k] = m.degenerate[k]
                   ? 0.0
                   : std::clamp((x[k] - m.first[k]) / (m.second[k] - m.first[k]), 0.0, 1.0);
        break;
      case NormalizationMethod::ZScore:
        y[k] = m.degenerate[k] ? 0.0 : (x[k] - m.first[k]) / m.second[k];
        break;
    }
  }
  return y;
}

inline Dataset apply_normalizer(const NormalizationModel& m, const Dataset& data) {
  Dataset out;
  out.column_names = data.column_names;
  out.labels = data.labels;
  out.vectors.reserve(data.size());
  for (const auto& v : data.vectors) out.vectors.push_back(apply_normalizer(m, v));
  return out;
}

inline constexpr int kNormalizerFormatVersion = 1;

/*
 *   SOMGUARD-NORM 1
 *   method <minmax|zscore|none>
 *   dim <n>
 *   <first> <second> <degenerate 0|1>     one line per dimension
 *   end
 */
inline void save_normalizer(const NormalizationModel& m, std::ostream& out) {
  out << "SOMGUARD-NORM " << kNormalizerFormatVersion << '\n'
      << "method " << to_string(m.method) << '\n'
      << "dim " << m.dim() << '\n';
  for (std::size_t k = 0; k < m.dim(); ++k) {
    out << format_double(m.first[k]) << ' ' << format_double(m.second[k]) << ' '
        << (m.degenerate[k] ? 1 : 0) << '\n';
  }
  out << "end\n";
}

inline NormalizationModel load_normalizer(std::istream& in) {
  std::string magic, key, method, tok1, tok2;
  int version = 0;
  std::size_t dim = 0;
  if (!(in >> magic) || magic != "SOMGUARD-NORM") throw format_error("not a somguard normalizer file");
  if (!(in >> version) || version != kNormalizerFormatVersion) {
    throw format_error("unsupported normalizer format version " + std::to_string(version));
  }
  if (!(in >> key >> method) || key != "method" || !(in >> key >> dim) || key != "dim") {
    throw format_error("unexpected end of normalizer file");
  }
  NormalizationModel m;
  try {
    m.method = parse_normalization(method);
  } catch (const usage_error& e) {
    throw format_error(e.what());
  }
  for (std::size_t k = 0; k < dim; ++k) {
    int flag = 0;
    if (!(in >> tok1 >> tok2 >> flag)) throw format_error("unexpected end of normalizer file");
    const auto a = parse_double(tok1);
    const auto b = parse_double(tok2);
    if (!a || !b || (flag != 0 && flag != 1)) throw format_error("malformed normalizer statistics");
    m.first.push_back(*a);
    m.second.push_back(*b);
    m.degenerate.push_back(flag == 1);
  }
  if (!(in >> key) || key != "end") throw format_error("unexpected end of normalizer file");
  return m;
}

}  // namespace somguard
