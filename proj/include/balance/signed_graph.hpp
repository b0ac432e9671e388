#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "balance/error.hpp"

namespace balance {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Undirected edge, stored canonically with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex;
  EdgeId edge;
};

enum class Sign : std::int8_t { negative = -1, positive = 1 };

inline constexpr bool is_negative(Sign s) noexcept { return s == Sign::negative; }

namespace detail {

// Validates raw pairs and returns the permutation that sorts them into
// canonical order. `lines[i]` names record i in error messages.
inline std::vector<std::size_t> canonical_order(std::size_t vertex_count, std::vector<Edge>& edges,
                                                std::span<const std::size_t> lines) {
  auto line_of = [&](std::size_t i) { return lines.empty() ? i + 1 : lines[i]; };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto& e = edges[i];
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw ValidationError("vertex index out of range (vertex count " + std::to_string(vertex_count) +
                                ") in edge " + std::to_string(e.u) + " " + std::to_string(e.v),
                            line_of(i));
    }
    if (e.u == e.v) {
      throw ValidationError("self-loop on vertex " + std::to_string(e.u), line_of(i));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (edges[order[k]] == edges[order[k - 1]]) {
      const auto& e = edges[order[k]];
      throw ValidationError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v),
                            line_of(order[k]));
    }
  }
  return order;
}

}  // namespace detail

class SignedGraph;
struct SignedEdgeRecord;

/// Simple undirected graph with canonically ordered edges and CSR adjacency.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t vertex_count, std::vector<Edge> edges) : vertex_count_(vertex_count) {
    const auto order = detail::canonical_order(vertex_count, edges, {});
    edges_.reserve(edges.size());
    for (auto i : order) edges_.push_back(edges[i]);
    build_adjacency();
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId i) const { return edges_[i]; }

  /// Neighbors of v sorted by vertex index.
  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const {
    if (a >= vertex_count_ || b >= vertex_count_) return std::nullopt;
    auto nbrs = neighbors(a);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b,
                               [](const Neighbor& n, Vertex x) { return n.vertex < x; });
    if (it == nbrs.end() || it->vertex != b) return std::nullopt;
    return it->edge;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  friend SignedGraph from_edge_list(std::size_t, std::span<const SignedEdgeRecord>);
  friend SignedGraph sign_subgraph(const SignedGraph&, Sign);
  struct PreSorted {};
  Graph(PreSorted, std::size_t vertex_count, std::vector<Edge> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {
    build_adjacency();
  }

  void build_adjacency() {
    offsets_.assign(vertex_count_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Lexicographic edge order makes every neighbor run come out sorted.
    for (EdgeId i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      adjacency_[cursor[e.u]++] = {e.v, i};
      adjacency_[cursor[e.v]++] = {e.u, i};
    }
  }

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// One input record of a signed edge list. `sign` must be +1 or -1; `line`
/// is the source line used in error messages (0 means "use list position").
struct SignedEdgeRecord {
  Vertex u = 0;
  Vertex v = 0;
  int sign = 1;
  std::size_t line = 0;
};

/// Immutable signed graph. The support is shared between a graph and every
/// sign rearrangement of it, so null-model draws only copy the sign vector.
class SignedGraph {
 public:
  SignedGraph() : support_(std::make_shared<const Graph>()) {}

  SignedGraph(std::shared_ptr<const Graph> support, std::vector<Sign> signs)
      : support_(std::move(support)), signs_(std::move(signs)) {
    if (signs_.size() != support_->edge_count()) {
      throw ValidationError("sign vector length " + std::to_string(signs_.size()) +
                                " does not match edge count " +
                                std::to_string(support_->edge_count()),
                            0);
    }
    negatives_ = static_cast<std::size_t>(std::count(signs_.begin(), signs_.end(), Sign::negative));
  }

  SignedGraph(Graph support, std::vector<Sign> signs)
      : SignedGraph(std::make_shared<const Graph>(std::move(support)), std::move(signs)) {}

  /// All-positive graph on the given support.
  explicit SignedGraph(Graph support) : support_(std::make_shared<const Graph>(std::move(support))) {
    signs_.assign(support_->edge_count(), Sign::positive);
  }

  const Graph& support() const noexcept { return *support_; }
  const std::shared_ptr<const Graph>& shared_support() const noexcept { return support_; }

  std::size_t vertex_count() const noexcept { return support_->vertex_count(); }
  std::size_t edge_count() const noexcept { return support_->edge_count(); }
  std::span<const Edge> edges() const noexcept { return support_->edges(); }
  const Edge& edge(EdgeId i) const { return support_->edge(i); }

  std::span<const Sign> signs() const noexcept { return signs_; }
  Sign sign(EdgeId i) const { return signs_[i]; }
  std::size_t negative_count() const noexcept { return negatives_; }

  /// Same support, new signs.
  SignedGraph with_signs(std::vector<Sign> signs) const { return {support_, std::move(signs)}; }

  friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
    return a.signs_ == b.signs_ && (a.support_ == b.support_ || *a.support_ == *b.support_);
  }

 private:
  std::shared_ptr<const Graph> support_;
  std::vector<Sign> signs_;
  std::size_t negatives_ = 0;
};

/// Builds a validated, canonically ordered signed graph.
inline SignedGraph from_edge_list(std::size_t vertex_count, std::span<const SignedEdgeRecord> records) {
  std::vector<Edge> raw;
  std::vector<std::size_t> lines;
  raw.reserve(records.size());
  lines.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    lines.push_back(r.line == 0 ? i + 1 : r.line);
    if (r.sign != 1 && r.sign != -1) {
      throw ValidationError("invalid sign " + std::to_string(r.sign), lines.back());
    }
    raw.push_back({r.u, r.v});
  }
  const auto order = detail::canonical_order(vertex_count, raw, lines);
  std::vector<Edge> edges;
  std::vector<Sign> signs;
  edges.reserve(raw.size());
  signs.reserve(raw.size());
  for (auto i : order) {
    edges.push_back(raw[i]);
    signs.push_back(records[i].sign < 0 ? Sign::negative : Sign::positive);
  }
  return {Graph(Graph::PreSorted{}, vertex_count, std::move(edges)), std::move(signs)};
}

inline SignedGraph from_edge_list(std::size_t vertex_count, std::initializer_list<SignedEdgeRecord> records) {
  return from_edge_list(vertex_count, std::span<const SignedEdgeRecord>(records.begin(), records.size()));
}

/// Subgraph on the same vertex set keeping only edges of one sign.
inline SignedGraph sign_subgraph(const SignedGraph& g, Sign sign) {
  std::vector<Edge> edges;
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    if (g.sign(i) == sign) edges.push_back(g.edge(i));
  }
  std::vector<Sign> signs(edges.size(), sign);
  return {Graph(Graph::PreSorted{}, g.vertex_count(), std::move(edges)), std::move(signs)};
}

}  // namespace balance
