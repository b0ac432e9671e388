#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "balance/rng.hpp"
#include "balance/signed_graph.hpp"

namespace balance {

/// Periodic d-dimensional lattice of n_per_dim^d vertices; vertices within
/// L1 distance k (with wraparound) are joined, then endpoints are rewired.
struct WsSpec {
  unsigned d = 1;
  std::size_t n_per_dim = 100;
  unsigned k = 2;
  double rewire_p = 0.0;

  void validate() const {
    if (d < 1) throw std::invalid_argument("lattice dimension must be at least 1");
    if (n_per_dim < 2) throw std::invalid_argument("lattice needs at least 2 nodes per dimension");
    if (k < 1) throw std::invalid_argument("neighborhood radius must be at least 1");
    if (!(rewire_p >= 0.0 && rewire_p <= 1.0)) throw std::invalid_argument("rewiring probability outside [0, 1]");
  }

  std::size_t vertex_count() const {
    std::size_t n = 1;
    for (unsigned i = 0; i < d; ++i) {
      if (n > std::numeric_limits<Vertex>::max() / n_per_dim) throw std::invalid_argument("lattice too large");
      n *= n_per_dim;
    }
    return n;
  }
};

/// Rewiring gives up on an endpoint after this many rejected candidates.
inline constexpr int kRewireRetries = 64;

namespace detail {

inline std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Nonzero integer vectors with L1 norm <= k. Only one of each +/- pair is
// kept; the lattice edges are undirected.
inline std::vector<std::vector<long>> lattice_offsets(unsigned d, unsigned k) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(d, 0);
  auto rec = [&](auto&& self, unsigned dim, long budget) -> void {
    if (dim == d) {
      auto first = std::find_if(cur.begin(), cur.end(), [](long x) { return x != 0; });
      if (first != cur.end() && *first > 0) out.push_back(cur);
      return;
    }
    for (long x = -budget; x <= budget; ++x) {
      cur[dim] = x;
      self(self, dim + 1, budget - std::abs(x));
    }
    cur[dim] = 0;
  };
  rec(rec, 0, static_cast<long>(k));
  return out;
}

}  // namespace detail

inline Graph gen_ws(const WsSpec& spec, Rng& rng) {
  spec.validate();
  const auto n_vertices = spec.vertex_count();
  const auto n = static_cast<long>(spec.n_per_dim);
  const auto offsets = detail::lattice_offsets(spec.d, spec.k);

  std::vector<Edge> edges;
  edges.reserve(n_vertices * offsets.size());
  std::vector<long> coord(spec.d);
  for (std::size_t v = 0; v < n_vertices; ++v) {
    auto rest = v;
    for (unsigned i = 0; i < spec.d; ++i) {
      coord[i] = static_cast<long>(rest % spec.n_per_dim);
      rest /= spec.n_per_dim;
    }
    for (const auto& off : offsets) {
      std::size_t w = 0;
      for (unsigned i = spec.d; i-- > 0;) {
        const long c = ((coord[i] + off[i]) % n + n) % n;
        w = w * spec.n_per_dim + static_cast<std::size_t>(c);
      }
      if (w == v) continue;
      edges.push_back({static_cast<Vertex>(std::min(v, w)), static_cast<Vertex>(std::max(v, w))});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  if (spec.rewire_p > 0.0) {
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    for (const auto& e : edges) present.insert(detail::pair_key(e.u, e.v));
    for (auto& e : edges) {
      for (int end = 0; end < 2; ++end) {
        if (!rng.bernoulli(spec.rewire_p)) continue;
        const Vertex keep = end == 0 ? e.v : e.u;
        for (int attempt = 0; attempt < kRewireRetries; ++attempt) {
          const auto w = static_cast<Vertex>(rng.below(n_vertices));
          if (w == keep || present.contains(detail::pair_key(keep, w))) continue;
          present.erase(detail::pair_key(e.u, e.v));
          present.insert(detail::pair_key(keep, w));
          e = {std::min(keep, w), std::max(keep, w)};
          break;
        }
      }
    }
  }
  return Graph(n_vertices, std::move(edges));
}

/// Uniform m-subset of the C(N, 2) vertex pairs (Floyd's sampling).
inline Graph gen_er_gnm(std::size_t n_vertices, std::size_t m, Rng& rng) {
  const std::uint64_t total =
      n_vertices < 2 ? 0 : static_cast<std::uint64_t>(n_vertices) * (n_vertices - 1) / 2;
  if (m > total) {
    throw std::invalid_argument("cannot place " + std::to_string(m) + " edges among " + std::to_string(total) +
                                " vertex pairs");
  }
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  for (std::uint64_t j = total - m; j < total; ++j) {
    const auto t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> ranks(chosen.begin(), chosen.end());
  std::sort(ranks.begin(), ranks.end());

  // Pair ranks are lexicographic: row u holds (u, u+1) .. (u, N-1).
  std::vector<Edge> edges;
  edges.reserve(m);
  std::uint64_t row_start = 0;
  Vertex u = 0;
  for (auto r : ranks) {
    while (r >= row_start + (n_vertices - 1 - u)) {
      row_start += n_vertices - 1 - u;
      ++u;
    }
    edges.push_back({u, static_cast<Vertex>(u + 1 + (r - row_start))});
  }
  return Graph(n_vertices, std::move(edges));
}

/// Exactly `negatives` edges, chosen uniformly, become negative.
inline SignedGraph sign_uniform(const Graph& g, std::size_t negatives, Rng& rng) {
  const auto n = g.edge_count();
  if (negatives > n) throw std::invalid_argument("more negative edges requested than edges present");
  std::vector<EdgeId> slots(n);
  for (EdgeId i = 0; i < n; ++i) slots[i] = i;
  std::vector<Sign> signs(n, Sign::positive);
  for (std::size_t t = 0; t < negatives; ++t) {
    const auto j = t + static_cast<std::size_t>(rng.below(n - t));
    std::swap(slots[t], slots[j]);
    signs[slots[t]] = Sign::negative;
  }
  return {g, std::move(signs)};
}

/// Fraction form: round(fraction * n) negatives.
inline SignedGraph sign_uniform(const Graph& g, double fraction, Rng& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("negative fraction outside [0, 1]");
  const auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(g.edge_count())));
  return sign_uniform(g, count, rng);
}

/// Union of the two edge sets; an edge in `negative` is negative even when
/// `positive` also has it.
inline SignedGraph compose(const Graph& positive, const Graph& negative) {
  if (positive.vertex_count() != negative.vertex_count()) {
    throw std::invalid_argument("composed graphs must share a vertex count");
  }
  std::vector<Edge> edges;
  std::vector<Sign> signs;
  edges.reserve(positive.edge_count() + negative.edge_count());
  signs.reserve(edges.capacity());
  const auto pos = positive.edges();
  const auto neg = negative.edges();
  std::size_t i = 0, j = 0;
  while (i < pos.size() || j < neg.size()) {
    if (j == neg.size() || (i < pos.size() && pos[i] < neg[j])) {
      edges.push_back(pos[i++]);
      signs.push_back(Sign::positive);
    } else {
      if (i < pos.size() && pos[i] == neg[j]) ++i;
      edges.push_back(neg[j++]);
      signs.push_back(Sign::negative);
    }
  }
  return {Graph(positive.vertex_count(), std::move(edges)), std::move(signs)};
}

/// Two-community signed blockmodel. Vertices below n/2 form community 0.
/// Within a community a pair draws a positive edge with p_plus and a negative
/// one with p_minus; across communities the rates are q_plus and q_minus.
struct SbmSpec {
  std::size_t n_vertices = 0;
  double p_plus = 0.0, q_plus = 0.0, p_minus = 0.0, q_minus = 0.0;

  void validate() const {
    for (double p : {p_plus, q_plus, p_minus, q_minus}) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("blockmodel probability outside [0, 1]");
    }
    if (n_vertices > std::numeric_limits<Vertex>::max()) throw std::invalid_argument("too many vertices");
  }
};

/// What to do with a pair that draws both a positive and a negative edge.
enum class SbmClash { void_pair, negative_wins };

inline SignedGraph gen_signed_sbm(const SbmSpec& spec, Rng& rng, SbmClash clash = SbmClash::void_pair) {
  spec.validate();
  const auto n = spec.n_vertices;
  const auto half = n / 2;
  std::vector<Edge> edges;
  std::vector<Sign> signs;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const bool same = (u < half) == (v < half);
      const bool pos = rng.bernoulli(same ? spec.p_plus : spec.q_plus);
      const bool neg = rng.bernoulli(same ? spec.p_minus : spec.q_minus);
      if (!pos && !neg) continue;
      if (pos && neg && clash == SbmClash::void_pair) continue;
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
      signs.push_back(neg ? Sign::negative : Sign::positive);
    }
  }
  return {Graph(n, std::move(edges)), std::move(signs)};
}

}  // namespace balance
