#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "balance/error.hpp"
#include "balance/signed_graph.hpp"

namespace balance {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <class Int>
std::optional<Int> parse_uint(std::string_view token) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

inline std::optional<int> parse_sign(std::string_view token) {
  if (token == "+1" || token == "+") return 1;
  if (token == "-1" || token == "-") return -1;
  return std::nullopt;
}

}  // namespace detail

/// Reads the "u v s" edge-list format. `#` lines are comments; an optional
/// "N <count>" line fixes the vertex count, otherwise it is max index + 1.
inline SignedGraph parse_edge_list(std::istream& in) {
  std::vector<SignedEdgeRecord> records;
  std::optional<std::size_t> declared;
  std::size_t max_index_plus_one = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.front() == "N") {
      if (tokens.size() != 2) throw ValidationError("header must be 'N <count>'", line_no);
      if (declared) throw ValidationError("repeated vertex-count header", line_no);
      declared = detail::parse_uint<std::size_t>(tokens[1]);
      if (!declared) throw ValidationError("bad vertex count '" + std::string(tokens[1]) + "'", line_no);
      continue;
    }
    if (tokens.size() != 3) {
      throw ValidationError("expected 'u v s', got " + std::to_string(tokens.size()) + " fields", line_no);
    }
    const auto u = detail::parse_uint<Vertex>(tokens[0]);
    const auto v = detail::parse_uint<Vertex>(tokens[1]);
    if (!u || !v) throw ValidationError("bad vertex index", line_no);
    const auto s = detail::parse_sign(tokens[2]);
    if (!s) throw ValidationError("invalid sign token '" + std::string(tokens[2]) + "'", line_no);
    records.push_back({*u, *v, *s, line_no});
    max_index_plus_one = std::max<std::size_t>(max_index_plus_one, std::max(*u, *v) + std::size_t{1});
  }
  return from_edge_list(declared.value_or(max_index_plus_one), records);
}

inline SignedGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

inline SignedGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_edge_list(in);
}

/// Writes the vertex-count header followed by one "u v ±1" line per edge.
inline void write_edge_list(std::ostream& out, const SignedGraph& g) {
  out << "N " << g.vertex_count() << '\n';
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(i);
    out << e.u << ' ' << e.v << ' ' << (is_negative(g.sign(i)) ? "-1" : "+1") << '\n';
  }
}

inline void write_edge_list(const std::filesystem::path& path, const SignedGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(out, g);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace balance
