#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "somguard/error.hpp"
#include "somguard/format.hpp"
#include "somguard/som_map.hpp"

namespace somguard {

inline constexpr int kMapFormatVersion = 1;
inline constexpr std::string_view kMapMagic = "SOMGUARD-MAP";

/*
 * Text map format, one item per line:
 *
 *   SOMGUARD-MAP 1
 *   rows <n>
 *   cols <n>
 *   dim <n>
 *   seed <n>
 *   steps_trained <n>
 *   weights
 *   <dim values of node 0, space separated>
 *   ...
 *   end
 *
 * Values use the shortest representation that round-trips, so save/load is
 * bit-exact.
 */
inline void save_map(const SomMap& map, std::ostream& out) {
  out << kMapMagic << ' ' << kMapFormatVersion << '\n'
      << "rows " << map.shape().rows() << '\n'
      << "cols " << map.shape().cols() << '\n'
      << "dim " << map.dim() << '\n'
      << "seed " << map.seed() << '\n'
      << "steps_trained " << map.steps_trained() << '\n'
      << "weights\n";
  for (std::size_t i = 0; i < map.node_count(); ++i) {
    const auto w = map.weight(i);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k) out << ' ';
      out << format_double(w[k]);
    }
    out << '\n';
  }
  out << "end\n";
}

namespace detail {

class MapReader {
public:
  explicit MapReader(std::istream& in) : in_(in) {}

  std::string next_line() {
    std::string line;
    // Every line is newline-terminated, so a final line without one was cut short.
    if (!std::getline(in_, line) || in_.eof()) {
      throw format_error("unexpected end of map file after line " + std::to_string(line_no_));
    }
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  template <typename Int>
  Int keyed_integer(std::string_view key) {
    const std::string line = next_line();
    const std::string_view view(line);
    if (view.substr(0, key.size()) != key || view.size() <= key.size() || view[key.size()] != ' ') {
      fail("expected '" + std::string(key) + " <value>'");
    }
    const auto v = parse_integer<Int>(view.substr(key.size() + 1));
    if (!v) fail("malformed value for '" + std::string(key) + "'");
    return *v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw format_error("map file line " + std::to_string(line_no_) + ": " + what);
  }

private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace detail

inline SomMap load_map(std::istream& in) {
  detail::MapReader reader(in);
  {
    const std::string header = reader.next_line();
    std::istringstream hs(header);
    std::string magic;
    int version = 0;
    if (!(hs >> magic) || magic != kMapMagic) reader.fail("not a somguard map file");
    if (!(hs >> version)) reader.fail("missing format version");
    if (version != kMapFormatVersion) {
      reader.fail("unsupported map format version " + std::to_string(version) + " (expected " +
                  std::to_string(kMapFormatVersion) + ")");
    }
  }
  const auto rows = reader.keyed_integer<std::size_t>("rows");
  const auto cols = reader.keyed_integer<std::size_t>("cols");
  const auto dim = reader.keyed_integer<std::size_t>("dim");
  const auto seed = reader.keyed_integer<std::uint64_t>("seed");
  const auto steps = reader.keyed_integer<std::uint64_t>("steps_trained");
  if (rows == 0 || cols == 0 || dim == 0) reader.fail("rows, cols and dim must be positive");
  if (reader.next_line() != "weights") reader.fail("expected 'weights'");

  const GridShape shape(rows, cols);
  std::vector<double> weights;
  weights.reserve(shape.node_count() * dim);
  for (std::size_t i = 0; i < shape.node_count(); ++i) {
    const std::string line = reader.next_line();
    std::string_view rest(line);
    std::size_t fields = 0;
    while (!rest.empty()) {
      const auto sp = rest.find(' ');
      const auto tok = rest.substr(0, sp);
      const auto v = parse_double(tok);
      if (!v || !std::isfinite(*v)) reader.fail("malformed weight value '" + std::string(tok) + "'");
      weights.push_back(*v);
      ++fields;
      rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp + 1);
    }
    if (fields != dim) {
      reader.fail("node " + std::to_string(i) + " has " + std::to_string(fields) +
                  " weights, expected " + std::to_string(dim));
    }
  }
  if (reader.next_line() != "end") reader.fail("expected 'end'");
  return SomMap(shape, dim, std::move(weights), seed, steps);
}

}  // namespace somguard
