#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "balance/error.hpp"
#include "balance/mc_test.hpp"
#include "balance/normal.hpp"
#include "balance/null_models.hpp"
#include "balance/signed_graph.hpp"
#include "balance/triangles.hpp"

// Notation for this header. Under the independent model edge i is negative
// with probability q_i. With X_i = +1/-1 its sign, r_i = E[X_i] = 1 - 2 q_i,
// s_i = sd(X_i) = 2 sqrt(q_i (1 - q_i)) and the normalized sign
// Xt_i = (X_i - r_i) / s_i (taken as 0 when s_i = 0). T_a counts triangles
// with exactly a negative edges, a = 1, 2, 3.
//
// T_a - E[T_a] is a polynomial in the Xt_i with linear, pairwise and
// triple terms. Monomials over distinct edge sets are orthonormal, so every
// covariance is a plain sum of coefficient products.

namespace balance {

/// Coefficients of T_a - E[T_a] = sum_i lin_a(i) Xt_i
///                              + sum_{i<j} pair_a(i,j) Xt_i Xt_j
///                              + sum_{i<j<k} triple_a(i,j,k) Xt_i Xt_j Xt_k.
/// Array slot [a - 1] holds T_a. The ordered-tuple convention (each unordered
/// pair split over its 2 orderings, each triple over 6) is available via t2/t3.
struct Decomposition {
  struct PairTerm {
    EdgeId i = 0, j = 0;  // i < j
    std::array<double, 3> coef{};
  };
  struct TripleTerm {
    Triangle edges{};
    std::array<double, 3> coef{};
  };

  std::vector<double> q, s, r;
  std::array<std::vector<double>, 3> linear;
  std::vector<PairTerm> pairs;
  std::vector<TripleTerm> triples;  // parallel to the triangle list
  std::array<double, 3> expected{};

  /// t_{a,1}(i).
  double t1(int a, EdgeId i) const { return linear[slot(a)][i]; }

  /// t_{a,2}(i, j) for the ordered pair; 0 unless i, j share a triangle.
  double t2(int a, EdgeId i, EdgeId j) const {
    auto it = pair_index_.find(key(std::min(i, j), std::max(i, j)));
    return it == pair_index_.end() ? 0.0 : pairs[it->second].coef[slot(a)] / 2.0;
  }

  /// t_{a,3} for any ordering of triangle number `triangle`.
  double t3(int a, std::size_t triangle) const { return triples[triangle].coef[slot(a)] / 6.0; }

  /// h_l(i) = -(s_i / 2) 1{i in E_l}.
  double h(std::uint32_t level, EdgeId i, const EmbeddednessIndex& idx) const {
    return idx.eps[i] == level ? -s[i] / 2.0 : 0.0;
  }

  std::vector<double> normalized(std::span<const Sign> signs) const {
    std::vector<double> xt(signs.size(), 0.0);
    for (std::size_t i = 0; i < xt.size(); ++i) {
      if (s[i] > 0.0) xt[i] = (static_cast<double>(signs[i]) - r[i]) / s[i];
    }
    return xt;
  }

  /// T_{a,b} for a sign vector: row a-1 holds the linear, pairwise and triple parts.
  std::array<std::array<double, 3>, 3> parts(std::span<const Sign> signs) const {
    const auto xt = normalized(signs);
    std::array<std::array<double, 3>, 3> out{};
    for (int a = 0; a < 3; ++a) {
      for (std::size_t i = 0; i < xt.size(); ++i) out[a][0] += linear[a][i] * xt[i];
    }
    for (const auto& p : pairs) {
      const double m = xt[p.i] * xt[p.j];
      for (int a = 0; a < 3; ++a) out[a][1] += p.coef[a] * m;
    }
    for (const auto& t : triples) {
      const double m = xt[t.edges[0]] * xt[t.edges[1]] * xt[t.edges[2]];
      for (int a = 0; a < 3; ++a) out[a][2] += t.coef[a] * m;
    }
    return out;
  }

  void index_pairs() {
    pair_index_.clear();
    pair_index_.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) pair_index_.emplace(key(pairs[k].i, pairs[k].j), k);
  }

 private:
  static std::size_t slot(int a) {
    if (a < 1 || a > 3) throw std::out_of_range("triangle class must be 1, 2 or 3");
    return static_cast<std::size_t>(a - 1);
  }
  static std::uint64_t key(EdgeId i, EdgeId j) { return (static_cast<std::uint64_t>(i) << 32) | j; }

  std::unordered_map<std::uint64_t, std::size_t> pair_index_;
};

namespace detail {

// P(exactly k of three independent events), k = 0..3.
inline std::array<double, 4> count_law(const std::array<double, 3>& y) {
  std::array<double, 4> law{1.0, 0.0, 0.0, 0.0};
  for (double p : y) {
    for (int k = 3; k >= 0; --k) law[k] = law[k] * (1.0 - p) + (k > 0 ? law[k - 1] * p : 0.0);
  }
  return law;
}

}  // namespace detail

/// Expansion coefficients for the given per-edge negative probabilities.
///
/// Per triangle, the count indicator is multilinear in the negative
/// indicators Y_e = q_e - (s_e / 2) Xt_e. The coefficient of the monomial
/// over edge set S is the mixed finite difference of the count law over S,
/// evaluated with the remaining edges at their means, times prod_{e in S} (-s_e / 2).
inline Decomposition coefficients(std::span<const Triangle> tris, std::span<const double> q) {
  Decomposition d;
  const auto n = q.size();
  d.q.assign(q.begin(), q.end());
  d.s.resize(n);
  d.r.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.s[i] = 2.0 * std::sqrt(q[i] * (1.0 - q[i]));
    d.r[i] = 1.0 - 2.0 * q[i];
  }
  for (auto& lin : d.linear) lin.assign(n, 0.0);
  d.pairs.reserve(3 * tris.size());
  d.triples.reserve(tris.size());

  for (const auto& t : tris) {
    const std::array<double, 3> mean{q[t[0]], q[t[1]], q[t[2]]};
    const std::array<double, 3> amp{-d.s[t[0]] / 2.0, -d.s[t[1]] / 2.0, -d.s[t[2]] / 2.0};
    std::array<std::array<double, 3>, 8> coef{};  // by edge-subset mask, classes 1..3
    for (unsigned mask = 0; mask < 8; ++mask) {
      for (unsigned sub = mask;; sub = (sub - 1) & mask) {
        auto y = mean;
        for (int e = 0; e < 3; ++e) {
          if (mask & (1u << e)) y[e] = (sub & (1u << e)) ? 1.0 : 0.0;
        }
        const auto law = detail::count_law(y);
        const double sign = (std::popcount(mask ^ sub) % 2 == 0) ? 1.0 : -1.0;
        for (int a = 0; a < 3; ++a) coef[mask][a] += sign * law[a + 1];
        if (sub == 0) break;
      }
      double scale = 1.0;
      for (int e = 0; e < 3; ++e) {
        if (mask & (1u << e)) scale *= amp[e];
      }
      for (int a = 0; a < 3; ++a) coef[mask][a] *= scale;
    }
    for (int a = 0; a < 3; ++a) {
      d.expected[a] += coef[0][a];
      for (int e = 0; e < 3; ++e) d.linear[a][t[e]] += coef[1u << e][a];
    }
    d.pairs.push_back({t[0], t[1], coef[0b011]});
    d.pairs.push_back({t[0], t[2], coef[0b101]});
    d.pairs.push_back({t[1], t[2], coef[0b110]});
    d.triples.push_back({t, coef[0b111]});
  }
  d.index_pairs();
  return d;
}

inline Decomposition coefficients(const SignedGraph& g, const EmbeddednessIndex& idx, const RademacherSpec& spec) {
  const auto tris = triangles(g);
  const auto q = spec.per_edge(idx);
  return coefficients(tris, q);
}

/// (E[T1], E[T2], E[T3], E[V]) with V = T1 + T3.
inline std::array<double, 4> expected_counts(std::span<const Triangle> tris, std::span<const double> q) {
  std::array<double, 4> e{};
  for (const auto& t : tris) {
    const auto law = detail::count_law({q[t[0]], q[t[1]], q[t[2]]});
    for (int a = 0; a < 3; ++a) e[a] += law[a + 1];
  }
  e[3] = e[0] + e[2];
  return e;
}

inline std::array<double, 4> expected_counts(const SignedGraph& g, const EmbeddednessIndex& idx,
                                             const RademacherSpec& spec) {
  const auto tris = triangles(g);
  const auto q = spec.per_edge(idx);
  return expected_counts(tris, q);
}

/// How the negative counts are conditioned on: per embeddedness level, or
/// only through the overall total.
enum class Conditioning { stratified, uniform };

/// Moments of (T1, T2, T3, M) under the independent model. `sigma` is the
/// unnormalized covariance with rows/columns labelled by `labels`
/// ("T1", "T2", "T3", then one "M<level>" per retained level, or a single
/// "M" for uniform conditioning).
struct GaussianSummary {
  double mu = 0.0;  // E[V] = E[T1] + E[T3]
  std::array<double, 3> expected_T{};
  Eigen::MatrixXd sigma;
  std::vector<std::string> labels;
  Eigen::Matrix3d sigma_s = Eigen::Matrix3d::Zero();  // filled by conditional()
  double var_u = 0.0;                                   // filled by conditional()
  std::vector<std::uint32_t> dropped_levels;
};

namespace detail {

struct ConditioningGroup {
  std::string label;
  std::vector<EdgeId> edges;
  std::vector<std::uint32_t> levels;
};

}  // namespace detail

inline GaussianSummary covariance(const Decomposition& d, const EmbeddednessIndex& idx, Conditioning mode) {
  std::vector<detail::ConditioningGroup> groups;
  if (mode == Conditioning::stratified) {
    for (const auto& s : idx.strata) groups.push_back({"M" + std::to_string(s.level), s.edges, {s.level}});
  } else {
    detail::ConditioningGroup all{"M", {}, {}};
    for (const auto& s : idx.strata) {
      all.edges.insert(all.edges.end(), s.edges.begin(), s.edges.end());
      all.levels.push_back(s.level);
    }
    if (!all.edges.empty()) groups.push_back(std::move(all));
  }

  GaussianSummary out;
  std::vector<const detail::ConditioningGroup*> kept;
  for (const auto& grp : groups) {
    // A group has zero variance exactly when all its q are 0 or all are 1.
    double var = 0.0;
    for (auto e : grp.edges) var += d.s[e] * d.s[e] / 4.0;
    if (var > 0.0) {
      kept.push_back(&grp);
    } else {
      out.dropped_levels.insert(out.dropped_levels.end(), grp.levels.begin(), grp.levels.end());
    }
  }

  const auto dim = static_cast<Eigen::Index>(3 + kept.size());
  out.sigma = Eigen::MatrixXd::Zero(dim, dim);
  out.labels = {"T1", "T2", "T3"};
  for (const auto* grp : kept) out.labels.push_back(grp->label);

  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      double c = 0.0;
      for (std::size_t i = 0; i < d.s.size(); ++i) c += d.linear[a][i] * d.linear[b][i];
      for (const auto& p : d.pairs) c += p.coef[a] * p.coef[b];
      for (const auto& t : d.triples) c += t.coef[a] * t.coef[b];
      out.sigma(a, b) = out.sigma(b, a) = c;
    }
  }
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(3 + k);
    double var = 0.0;
    std::array<double, 3> cross{};
    for (auto e : kept[k]->edges) {
      const double h = -d.s[e] / 2.0;
      var += h * h;
      for (int a = 0; a < 3; ++a) cross[a] += d.linear[a][e] * h;
    }
    out.sigma(col, col) = var;
    for (int a = 0; a < 3; ++a) out.sigma(a, col) = out.sigma(col, a) = cross[a];
  }
  out.expected_T = d.expected;
  out.mu = d.expected[0] + d.expected[2];
  return out;
}

inline GaussianSummary covariance(const SignedGraph& g, const EmbeddednessIndex& idx, const RademacherSpec& spec,
                                  Conditioning mode = Conditioning::stratified) {
  return covariance(coefficients(g, idx, spec), idx, mode);
}

/// Schur complement of the count block: Cov(T | M) and var_u = Var(T1 + T3 | M).
inline GaussianSummary conditional(GaussianSummary summary) {
  const auto k = summary.sigma.rows() - 3;
  const Eigen::Matrix3d tt = summary.sigma.topLeftCorner(3, 3);
  if (k == 0) {
    summary.sigma_s = tt;
  } else {
    const Eigen::MatrixXd tm = summary.sigma.topRightCorner(3, k);
    const Eigen::MatrixXd mm = summary.sigma.bottomRightCorner(k, k);
    const Eigen::LLT<Eigen::MatrixXd> llt(mm);
    if (llt.info() != Eigen::Success) {
      throw std::logic_error("conditioning block is singular after removing degenerate levels");
    }
    summary.sigma_s = tt - tm * llt.solve(tm.transpose());
  }
  const auto& s = summary.sigma_s;
  summary.var_u = s(0, 0) + s(2, 2) + 2.0 * s(0, 2);
  return summary;
}

/// Analytic null summary of the unbalanced count for a graph.
inline GaussianSummary gaussian_summary(const SignedGraph& g, const EmbeddednessIndex& idx,
                                        std::span<const Triangle> tris, Conditioning mode) {
  const auto spec = mode == Conditioning::stratified
                        ? RademacherSpec::plug_in(idx)
                        : RademacherSpec::constant(idx, g.edge_count() == 0
                                                            ? 0.0
                                                            : static_cast<double>(g.negative_count()) /
                                                                  static_cast<double>(g.edge_count()));
  const auto q = spec.per_edge(idx);
  return conditional(covariance(coefficients(tris, q), idx, mode));
}

inline GaussianSummary gaussian_summary(const SignedGraph& g, Conditioning mode = Conditioning::stratified) {
  const auto tris = triangles(g);
  const auto idx = embeddedness(g, tris);
  return gaussian_summary(g, idx, tris, mode);
}

/// Exact (E[T1], E[T2], E[T3], E[U]) under sign permutation within groups:
/// group g of `group_of` holds sizes[g] edges of which negatives[g] are
/// negative. Edges of a triangle that share a group are drawn without
/// replacement, which is where this differs from expected_counts.
inline std::array<double, 4> permutation_expected_counts(std::span<const Triangle> tris,
                                                         std::span<const std::size_t> group_of,
                                                         std::span<const std::size_t> sizes,
                                                         std::span<const std::size_t> negatives) {
  std::array<double, 4> out{};
  for (const auto& t : tris) {
    // Distinct groups of the triangle's edges with their multiplicities.
    std::array<std::size_t, 3> grp{};
    std::array<int, 3> mult{};
    int distinct = 0;
    for (auto e : t) {
      int k = 0;
      while (k < distinct && grp[k] != group_of[e]) ++k;
      if (k == distinct) grp[distinct++] = group_of[e];
      ++mult[k];
    }
    std::array<double, 4> law{1.0, 0.0, 0.0, 0.0};
    for (int g = 0; g < distinct; ++g) {
      const int c = mult[g];
      const auto n = static_cast<double>(sizes[grp[g]]);
      const auto m = static_cast<double>(negatives[grp[g]]);
      std::array<double, 4> part{};
      for (int k = 0; k <= c; ++k) {
        double p = (c == 3 && (k == 1 || k == 2)) ? 3.0 : (c == 2 && k == 1 ? 2.0 : 1.0);  // C(c, k)
        for (int j = 0; j < k; ++j) p *= m - j;
        for (int j = 0; j < c - k; ++j) p *= n - m - j;
        for (int j = 0; j < c; ++j) p /= n - j;
        part[k] = p;
      }
      std::array<double, 4> next{};
      for (int i = 0; i < 4; ++i) {
        for (int k = 0; k <= c && i + k < 4; ++k) next[i + k] += law[i] * part[k];
      }
      law = next;
    }
    for (int a = 0; a < 3; ++a) out[a] += law[a + 1];
  }
  out[3] = out[0] + out[2];
  return out;
}

inline std::array<double, 4> permutation_expected_counts(const SignedGraph& g, const EmbeddednessIndex& idx,
                                                         std::span<const Triangle> tris, Conditioning mode) {
  std::vector<std::size_t> group_of(g.edge_count(), 0), sizes, negatives;
  if (mode == Conditioning::uniform) {
    sizes = {g.edge_count()};
    negatives = {g.negative_count()};
  } else {
    for (const auto& s : idx.strata) {
      for (auto e : s.edges) group_of[e] = sizes.size();
      sizes.push_back(s.size());
      negatives.push_back(s.negatives);
    }
  }
  return permutation_expected_counts(tris, group_of, sizes, negatives);
}

/// Center of the Gaussian test. `rademacher` is E[V] under independent
/// signs; `permutation` is the exact mean of U under the permutation null,
/// which removes an O(1) bias that is visible on mid-sized graphs.
enum class Centering { rademacher, permutation };

/// Graphs with fewer edges than this get an "unreliable" note on Gaussian results.
inline constexpr std::size_t kGaussianMinEdges = 100;

/// Left-tailed p-value Phi((U - mu) / sqrt(var_u)) from the normal limit of
/// the null distribution; no Monte Carlo.
inline TestResult gaussian_test(const SignedGraph& g, Conditioning mode = Conditioning::stratified,
                                Centering centering = Centering::rademacher) {
  const auto tris = triangles(g);
  if (tris.empty()) throw DegenerateApproximation("no triangles: the normal approximation is undefined");
  const auto idx = embeddedness(g, tris);
  const auto summary = gaussian_summary(g, idx, tris, mode);
  const double scale = 1.0 + std::abs(summary.sigma.topLeftCorner(3, 3).trace());
  if (!(summary.var_u > 1e-9 * scale)) {
    throw DegenerateApproximation("degenerate approximation: conditional variance of U is zero");
  }
  TestResult result;
  result.method = Method::gaussian;
  result.observed = static_cast<double>(census(tris, g.signs()).u);
  result.replicates = 0;
  const double center = centering == Centering::rademacher
                            ? summary.mu
                            : permutation_expected_counts(g, idx, tris, mode)[3];
  result.p_value = normal_cdf((result.observed - center) / std::sqrt(summary.var_u));
  result.p_value_mode = PValueMode::raw_left;
  result.null_mean = center;
  result.null_var = summary.var_u;
  if (g.edge_count() < kGaussianMinEdges) {
    result.notes.push_back("graph has only " + std::to_string(g.edge_count()) +
                           " edges; the normal approximation is unreliable at this size");
  }
  return result;
}

/// mu + z_alpha sqrt(var_u).
inline double critical_value(const GaussianSummary& summary, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  return summary.mu + normal_quantile(alpha) * std::sqrt(std::max(summary.var_u, 0.0));
}

}  // namespace balance
