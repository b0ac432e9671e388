#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "balance/signed_graph.hpp"
#include "balance/triangles.hpp"

namespace balance {

/// Descriptive statistics of the unsigned skeleton of a graph.
struct SummaryStats {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  double density = 0.0;       // n / C(N, 2)
  double transitivity = 0.0;  // 3 * triangles / connected triples; 0 without triples
  std::optional<double> mean_path_length;  // over reachable ordered pairs
  std::size_t component_count = 0;         // components with at least 2 vertices
};

inline SummaryStats summary(const Graph& g) {
  SummaryStats s;
  const auto n_vertices = g.vertex_count();
  s.vertex_count = n_vertices;
  s.edge_count = g.edge_count();
  if (n_vertices >= 2) {
    const double pairs = static_cast<double>(n_vertices) * static_cast<double>(n_vertices - 1) / 2.0;
    s.density = static_cast<double>(g.edge_count()) / pairs;
  }

  double connected_triples = 0.0;
  for (Vertex v = 0; v < n_vertices; ++v) {
    const auto d = static_cast<double>(g.degree(v));
    connected_triples += d * (d - 1.0) / 2.0;
  }
  if (connected_triples > 0.0) {
    s.transitivity = 3.0 * static_cast<double>(triangles(g).size()) / connected_triples;
  }

  // BFS from every vertex; components fall out of the first sweep.
  std::vector<std::int64_t> dist(n_vertices);
  std::vector<std::size_t> component(n_vertices, 0);
  std::size_t next_component = 0;
  std::vector<std::size_t> component_size;
  long double total_length = 0.0L;
  std::uint64_t reachable_pairs = 0;
  std::queue<Vertex> frontier;
  for (Vertex src = 0; src < n_vertices; ++src) {
    if (g.degree(src) == 0) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    frontier.push(src);
    const bool new_component = component[src] == 0;
    if (new_component) component_size.push_back(0);
    const auto label = new_component ? ++next_component : component[src];
    while (!frontier.empty()) {
      const auto v = frontier.front();
      frontier.pop();
      if (new_component) {
        component[v] = label;
        ++component_size.back();
      }
      if (v != src) {
        total_length += static_cast<long double>(dist[v]);
        ++reachable_pairs;
      }
      for (const auto& nb : g.neighbors(v)) {
        if (dist[nb.vertex] < 0) {
          dist[nb.vertex] = dist[v] + 1;
          frontier.push(nb.vertex);
        }
      }
    }
  }
  s.component_count = static_cast<std::size_t>(
      std::count_if(component_size.begin(), component_size.end(), [](std::size_t c) { return c >= 2; }));
  if (reachable_pairs > 0) {
    s.mean_path_length = static_cast<double>(total_length / static_cast<long double>(reachable_pairs));
  }
  return s;
}

inline SummaryStats summary(const SignedGraph& g) { return summary(g.support()); }

/// Quantities governing how far the uniform and stratified nulls drift apart.
struct Diagnostics {
  std::uint32_t max_negative_level = 0;
  double max_eps_squared_over_n = 0.0;  // sup eps_i^2 / n; 0 for an empty graph
  /// (1-p)^2 * sum(eps)/n - sum_{negative}(eps)/m with p = m/n; absent when m = 0.
  std::optional<double> embeddedness_gap;
};

inline Diagnostics diagnostics(const SignedGraph& g, const EmbeddednessIndex& idx) {
  Diagnostics d;
  d.max_negative_level = idx.max_negative_level;
  const auto n = static_cast<double>(g.edge_count());
  if (g.edge_count() == 0) return d;
  double sum_eps = 0.0, sum_neg_eps = 0.0, max_eps = 0.0;
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    const auto e = static_cast<double>(idx.eps[i]);
    sum_eps += e;
    max_eps = std::max(max_eps, e);
    if (is_negative(g.sign(i))) sum_neg_eps += e;
  }
  d.max_eps_squared_over_n = max_eps * max_eps / n;
  if (g.negative_count() > 0) {
    const auto m = static_cast<double>(g.negative_count());
    const double p = m / n;
    d.embeddedness_gap = (1.0 - p) * (1.0 - p) * sum_eps / n - sum_neg_eps / m;
  }
  return d;
}

inline Diagnostics diagnostics(const SignedGraph& g) { return diagnostics(g, embeddedness(g)); }

}  // namespace balance
