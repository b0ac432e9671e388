#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "balance/signed_graph.hpp"

namespace balance {

/// Edge indices of one triangle, ascending.
using Triangle = std::array<EdgeId, 3>;

/// Every triangle exactly once, sorted lexicographically.
///
/// Orients each edge from the lower- to the higher-ranked endpoint (rank by
/// degree, then index) and intersects forward neighborhoods, so each
/// triangle is found from its lowest-ranked vertex only.
inline std::vector<Triangle> triangles(const Graph& g) {
  const auto n = g.vertex_count();
  auto ranks_before = [&](Vertex a, Vertex b) {
    const auto da = g.degree(a), db = g.degree(b);
    return da < db || (da == db && a < b);
  };
  std::vector<std::vector<Neighbor>> forward(n);
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& nb : g.neighbors(v)) {
      if (ranks_before(v, nb.vertex)) forward[v].push_back(nb);
    }
  }
  constexpr auto none = std::numeric_limits<EdgeId>::max();
  std::vector<EdgeId> mark(n, none);
  std::vector<Triangle> out;
  for (Vertex u = 0; u < n; ++u) {
    for (const auto& nb : forward[u]) mark[nb.vertex] = nb.edge;
    for (const auto& uv : forward[u]) {
      for (const auto& vw : forward[uv.vertex]) {
        if (mark[vw.vertex] != none) {
          Triangle t{uv.edge, vw.edge, mark[vw.vertex]};
          std::sort(t.begin(), t.end());
          out.push_back(t);
        }
      }
    }
    for (const auto& nb : forward[u]) mark[nb.vertex] = none;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Triangle> triangles(const SignedGraph& g) { return triangles(g.support()); }

/// Edges sharing one embeddedness level.
struct Stratum {
  std::uint32_t level = 0;
  std::vector<EdgeId> edges;  // ascending
  std::size_t negatives = 0;

  std::size_t size() const noexcept { return edges.size(); }
  /// m_l / n_l.
  double ratio() const { return static_cast<double>(negatives) / static_cast<double>(edges.size()); }
  bool single_signed() const noexcept { return negatives == 0 || negatives == edges.size(); }
};

/// Per-edge triangle membership counts and the strata they induce.
struct EmbeddednessIndex {
  std::vector<std::uint32_t> eps;
  std::vector<Stratum> strata;  // occupied levels only, ascending by level
  std::uint32_t max_level = 0;
  std::uint32_t max_negative_level = 0;  // 0 when there are no negatives
  std::size_t triangle_count = 0;

  const Stratum* find(std::uint32_t level) const {
    auto it = std::lower_bound(strata.begin(), strata.end(), level,
                               [](const Stratum& s, std::uint32_t l) { return s.level < l; });
    return it != strata.end() && it->level == level ? &*it : nullptr;
  }
};

inline EmbeddednessIndex embeddedness(const SignedGraph& g, std::span<const Triangle> tris) {
  EmbeddednessIndex idx;
  idx.eps.assign(g.edge_count(), 0);
  idx.triangle_count = tris.size();
  for (const auto& t : tris) {
    for (auto e : t) ++idx.eps[e];
  }
  std::uint32_t top = 0;
  for (auto e : idx.eps) top = std::max(top, e);
  std::vector<Stratum> by_level(g.edge_count() == 0 ? 0 : top + 1);
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    auto& s = by_level[idx.eps[i]];
    s.edges.push_back(i);
    if (is_negative(g.sign(i))) {
      ++s.negatives;
      idx.max_negative_level = std::max(idx.max_negative_level, idx.eps[i]);
    }
  }
  for (std::uint32_t l = 0; l < by_level.size(); ++l) {
    if (by_level[l].edges.empty()) continue;
    by_level[l].level = l;
    idx.strata.push_back(std::move(by_level[l]));
  }
  idx.max_level = top;
  return idx;
}

inline EmbeddednessIndex embeddedness(const SignedGraph& g) {
  const auto tris = triangles(g);
  return embeddedness(g, tris);
}

namespace detail {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

inline IntMatrix adjacency_matrix(const SignedGraph& g, bool absolute) {
  IntMatrix a = IntMatrix::Zero(static_cast<Eigen::Index>(g.vertex_count()),
                                static_cast<Eigen::Index>(g.vertex_count()));
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(i);
    const std::int64_t w = absolute ? 1 : static_cast<std::int64_t>(g.sign(i));
    a(e.u, e.v) = w;
    a(e.v, e.u) = w;
  }
  return a;
}

}  // namespace detail

/// Embeddedness via the dense matrix identity eps_ij = (|A| o |A|^2)_ij.
/// O(N^3); meant for cross-checking the enumeration path on small graphs.
inline std::vector<std::uint32_t> embeddedness_by_matrix(const SignedGraph& g) {
  const auto abs_a = detail::adjacency_matrix(g, true);
  const detail::IntMatrix common = (abs_a * abs_a).cwiseProduct(abs_a);
  std::vector<std::uint32_t> eps(g.edge_count());
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    eps[i] = static_cast<std::uint32_t>(common(g.edge(i).u, g.edge(i).v));
  }
  return eps;
}

/// Triangle counts by number of negative edges; u = t1 + t3 is the number of
/// unbalanced triangles.
struct TriadCensus {
  std::size_t t0 = 0, t1 = 0, t2 = 0, t3 = 0;
  std::size_t u = 0;

  std::size_t total() const noexcept { return t0 + t1 + t2 + t3; }
  std::size_t by_negatives(int k) const { return std::array{t0, t1, t2, t3}[static_cast<std::size_t>(k)]; }
  friend bool operator==(const TriadCensus&, const TriadCensus&) = default;
};

inline TriadCensus census(std::span<const Triangle> tris, std::span<const Sign> signs) {
  std::array<std::size_t, 4> counts{};
  for (const auto& t : tris) {
    const int k = is_negative(signs[t[0]]) + is_negative(signs[t[1]]) + is_negative(signs[t[2]]);
    ++counts[static_cast<std::size_t>(k)];
  }
  return {counts[0], counts[1], counts[2], counts[3], counts[1] + counts[3]};
}

inline TriadCensus census(const SignedGraph& g) {
  const auto tris = triangles(g);
  return census(tris, g.signs());
}

/// Unbalanced triangle count from (1/12) tr(|A|^3 - A^3). Dense, O(N^3).
inline std::int64_t unbalanced_by_trace(const SignedGraph& g) {
  const auto a = detail::adjacency_matrix(g, false);
  const auto abs_a = detail::adjacency_matrix(g, true);
  const detail::IntMatrix a2 = a * a;
  const detail::IntMatrix abs_a2 = abs_a * abs_a;
  const std::int64_t tr_a3 = a2.cwiseProduct(a.transpose()).sum();
  const std::int64_t tr_abs3 = abs_a2.cwiseProduct(abs_a.transpose()).sum();
  return (tr_abs3 - tr_a3) / 12;
}

/// The unbalanced-triangle statistic with the triangle list of a fixed
/// support precomputed, for repeated evaluation on re-signed copies.
class UnbalancedCount {
 public:
  explicit UnbalancedCount(const SignedGraph& g) : tris_(balance::triangles(g)) {}
  explicit UnbalancedCount(std::vector<Triangle> tris) : tris_(std::move(tris)) {}

  std::size_t count(std::span<const Sign> signs) const {
    std::size_t u = 0;
    for (const auto& t : tris_) {
      u += static_cast<int>(signs[t[0]]) * static_cast<int>(signs[t[1]]) * static_cast<int>(signs[t[2]]) < 0;
    }
    return u;
  }

  double operator()(const SignedGraph& g) const { return static_cast<double>(count(g.signs())); }

  std::span<const Triangle> triangles() const noexcept { return tris_; }

 private:
  std::vector<Triangle> tris_;
};

}  // namespace balance
