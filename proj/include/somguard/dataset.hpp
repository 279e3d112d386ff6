#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "somguard/error.hpp"
#include "somguard/format.hpp"
#include "somguard/label.hpp"
#include "somguard/som_map.hpp"

namespace somguard {

struct Dataset {
  std::vector<FeatureVector> vectors;
  std::vector<std::string> column_names;  // feature columns only; empty without a header
  std::optional<std::vector<Label>> labels;

  std::size_t size() const noexcept { return vectors.size(); }
  bool empty() const noexcept { return vectors.empty(); }
  std::size_t dim() const noexcept { return vectors.empty() ? 0 : vectors.front().size(); }
};

struct CsvOptions {
  bool has_header = true;
  std::optional<std::string> label_column;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

}  // namespace detail

/// Reads comma-separated numeric rows. Blank lines are skipped; CRLF is
/// accepted. Errors report 1-based line and field numbers.
inline Dataset load_csv(std::istream& in, const CsvOptions& options = {}) {
  if (options.label_column && !options.has_header) {
    throw usage_error("a label column can only be selected by name when the file has a header");
  }
  Dataset ds;
  std::optional<std::size_t> label_index;
  std::size_t expected_fields = 0;
  bool header_seen = !options.has_header;
  std::vector<Label> labels;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto fields = detail::split_fields(line);

    if (!header_seen) {
      header_seen = true;
      expected_fields = fields.size();
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (options.label_column && fields[c] == *options.label_column) {
          label_index = c;
        } else {
          ds.column_names.emplace_back(fields[c]);
        }
      }
      if (options.label_column && !label_index) {
        throw parse_error("label column '" + *options.label_column + "' not found in header",
                          line_no, 0);
      }
      continue;
    }

    if (expected_fields == 0) expected_fields = fields.size();
    if (fields.size() != expected_fields) {
      throw parse_error("row " + std::to_string(line_no) + ": expected " +
                            std::to_string(expected_fields) + " fields, got " +
                            std::to_string(fields.size()),
                        line_no, 0);
    }
    FeatureVector v;
    v.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (label_index && c == *label_index) {
        if (fields[c] == "normal") {
          labels.push_back(Label::Normal);
        } else if (fields[c] == "anomalous") {
          labels.push_back(Label::Anomalous);
        } else {
          throw parse_error("row " + std::to_string(line_no) + ", column " +
                                std::to_string(c + 1) + ": label must be 'normal' or 'anomalous', got '" +
                                std::string(fields[c]) + "'",
                            line_no, c + 1);
        }
        continue;
      }
      const auto value = parse_double(fields[c]);
      if (!value) {
        throw parse_error("row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                              ": not a number: '" + std::string(fields[c]) + "'",
                          line_no, c + 1);
      }
      if (!std::isfinite(*value)) {
        throw parse_error("row " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                              ": value is not finite",
                          line_no, c + 1);
      }
      v.push_back(*value);
    }
    if (v.empty()) {
      throw parse_error("row " + std::to_string(line_no) + ": no feature columns", line_no, 0);
    }
    ds.vectors.push_back(std::move(v));
  }
  if (ds.vectors.empty()) throw parse_error("no rows: input contains no data rows");
  if (label_index) ds.labels = std::move(labels);
  return ds;
}

// Inverse of load_csv. Values are written at full round-trip precision.
inline void write_csv(const Dataset& ds, std::ostream& out, bool write_header = true,
                      std::string_view label_name = "label") {
  const bool with_labels = ds.labels.has_value();
  if (write_header) {
    for (std::size_t c = 0; c < ds.dim(); ++c) {
      if (c) out << ',';
      out << (c < ds.column_names.size() ? ds.column_names[c] : "x" + std::to_string(c + 1));
    }
    if (with_labels) out << ',' << label_name;
    out << '\n';
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& v = ds.vectors[i];
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (c) out << ',';
      out << format_double(v[c]);
    }
    if (with_labels) out << ',' << ((*ds.labels)[i] == Label::Anomalous ? "anomalous" : "normal");
    out << '\n';
  }
}

// Per-dimension bounds of the data, as used for map initialization.
inline std::vector<Bounds> data_bounds(const Dataset& ds) {
  if (ds.empty()) throw domain_error("bounds of an empty dataset");
  std::vector<Bounds> b(ds.dim());
  for (std::size_t k = 0; k < ds.dim(); ++k) b[k] = {ds.vectors[0][k], ds.vectors[0][k]};
  for (const auto& v : ds.vectors) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      b[k].min = std::min(b[k].min, v[k]);
      b[k].max = std::max(b[k].max, v[k]);
    }
  }
  return b;
}

}  // namespace somguard
