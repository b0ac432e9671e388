#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "balance/rng.hpp"
#include "balance/signed_graph.hpp"
#include "balance/triangles.hpp"

namespace balance {

/// Anything that can hand out uniform indices in [0, bound). `Rng` is the
/// production source; tests substitute sources that enumerate every path.
template <class S>
concept IndexSource = requires(S& s, std::uint64_t bound) {
  { s.below(bound) } -> std::convertible_to<std::uint64_t>;
};

/// Disjoint groups of edge indices whose signs are exchanged among themselves.
using Strata = std::vector<std::vector<EdgeId>>;

/// Sign permutation restricted to a fixed partition of the edges.
///
/// Each stratum holding both signs gets a partial Fisher-Yates pass that
/// picks the slots of its minority sign; the result is a uniform placement
/// of the stratum's negatives. Single-signed strata draw nothing.
class StrataPermutation {
 public:
  explicit StrataPermutation(Strata strata) : strata_(std::move(strata)) {
    for (const auto& s : strata_) widest_ = std::max(widest_, s.size());
  }

  template <IndexSource S>
  SignedGraph operator()(const SignedGraph& g, S& source) const {
    std::vector<Sign> signs(g.signs().begin(), g.signs().end());
    std::vector<EdgeId> scratch;
    scratch.reserve(widest_);
    for (const auto& slots : strata_) {
      std::size_t negatives = 0;
      for (auto e : slots) negatives += is_negative(signs[e]);
      if (negatives == 0 || negatives == slots.size()) continue;
      const bool pick_negatives = 2 * negatives <= slots.size();
      const auto picks = pick_negatives ? negatives : slots.size() - negatives;
      scratch.assign(slots.begin(), slots.end());
      for (std::size_t t = 0; t < picks; ++t) {
        const auto j = t + static_cast<std::size_t>(source.below(scratch.size() - t));
        std::swap(scratch[t], scratch[j]);
      }
      const Sign picked = pick_negatives ? Sign::negative : Sign::positive;
      const Sign rest = pick_negatives ? Sign::positive : Sign::negative;
      for (auto e : slots) signs[e] = rest;
      for (std::size_t t = 0; t < picks; ++t) signs[scratch[t]] = picked;
    }
    return g.with_signs(std::move(signs));
  }

  const Strata& strata() const noexcept { return strata_; }

 private:
  Strata strata_;
  std::size_t widest_ = 0;
};

/// Old null model: one stratum holding every edge.
inline StrataPermutation uniform_permutation(const SignedGraph& g) {
  std::vector<EdgeId> all(g.edge_count());
  for (EdgeId i = 0; i < all.size(); ++i) all[i] = i;
  return StrataPermutation(Strata{std::move(all)});
}

/// New null model: one stratum per occupied embeddedness level, level 0 included.
inline StrataPermutation stratified_permutation(const EmbeddednessIndex& idx) {
  Strata strata;
  strata.reserve(idx.strata.size());
  for (const auto& s : idx.strata) strata.push_back(s.edges);
  return StrataPermutation(std::move(strata));
}

/// Inclusive range of embeddedness levels; `hi` empty means unbounded.
struct LevelBin {
  std::uint32_t lo = 0;
  std::optional<std::uint32_t> hi;

  bool contains(std::uint32_t level) const { return level >= lo && (!hi || level <= *hi); }
};

/// Strata formed by merging levels per bin. The bins must be disjoint and
/// cover every occupied level.
inline Strata binned_strata(const EmbeddednessIndex& idx, std::span<const LevelBin> bins) {
  std::vector<LevelBin> sorted(bins.begin(), bins.end());
  std::sort(sorted.begin(), sorted.end(), [](const LevelBin& a, const LevelBin& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].hi && *sorted[i].hi < sorted[i].lo) {
      throw std::invalid_argument("empty level bin starting at " + std::to_string(sorted[i].lo));
    }
    if (i > 0 && (!sorted[i - 1].hi || *sorted[i - 1].hi >= sorted[i].lo)) {
      throw std::invalid_argument("level bins overlap at level " + std::to_string(sorted[i].lo));
    }
  }
  Strata strata(sorted.size());
  for (const auto& s : idx.strata) {
    auto it = std::find_if(sorted.begin(), sorted.end(), [&](const LevelBin& b) { return b.contains(s.level); });
    if (it == sorted.end()) {
      throw std::invalid_argument("level " + std::to_string(s.level) + " is not covered by any bin");
    }
    auto& dst = strata[static_cast<std::size_t>(it - sorted.begin())];
    dst.insert(dst.end(), s.edges.begin(), s.edges.end());
  }
  for (auto& s : strata) std::sort(s.begin(), s.end());
  std::erase_if(strata, [](const std::vector<EdgeId>& s) { return s.empty(); });
  return strata;
}

inline StrataPermutation binned_permutation(const EmbeddednessIndex& idx, std::span<const LevelBin> bins) {
  return StrataPermutation(binned_strata(idx, bins));
}

template <IndexSource S>
SignedGraph shuffle_uniform(const SignedGraph& g, S& source) {
  return uniform_permutation(g)(g, source);
}

template <IndexSource S>
SignedGraph shuffle_stratified(const SignedGraph& g, const EmbeddednessIndex& idx, S& source) {
  return stratified_permutation(idx)(g, source);
}

template <IndexSource S>
SignedGraph shuffle_binned(const SignedGraph& g, const EmbeddednessIndex& idx, std::span<const LevelBin> bins,
                           S& source) {
  return binned_permutation(idx, bins)(g, source);
}

/// Per-level probability that an edge is negative under the independent model.
struct RademacherSpec {
  std::map<std::uint32_t, double> q;

  /// q_l = m_l / n_l, the default.
  static RademacherSpec plug_in(const EmbeddednessIndex& idx) {
    RademacherSpec spec;
    for (const auto& s : idx.strata) spec.q[s.level] = s.ratio();
    return spec;
  }

  /// The same probability on every occupied level.
  static RademacherSpec constant(const EmbeddednessIndex& idx, double p) {
    RademacherSpec spec;
    for (const auto& s : idx.strata) spec.q[s.level] = p;
    return spec;
  }

  double at(std::uint32_t level) const {
    auto it = q.find(level);
    if (it == q.end()) throw std::invalid_argument("no probability for level " + std::to_string(level));
    return it->second;
  }

  void validate(const EmbeddednessIndex& idx) const {
    for (const auto& s : idx.strata) {
      const double p = at(s.level);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability for level " + std::to_string(s.level) + " outside [0, 1]");
      }
    }
  }

  /// q for every edge of the indexed graph.
  std::vector<double> per_edge(const EmbeddednessIndex& idx) const {
    validate(idx);
    std::vector<double> out(idx.eps.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(idx.eps[i]);
    return out;
  }
};

/// Independent signs: edge i is negative with probability q at its level.
inline SignedGraph sample_rademacher(const SignedGraph& g, const EmbeddednessIndex& idx,
                                     const RademacherSpec& spec, Rng& rng) {
  const auto q = spec.per_edge(idx);
  std::vector<Sign> signs(g.edge_count());
  for (std::size_t i = 0; i < signs.size(); ++i) {
    signs[i] = rng.bernoulli(q[i]) ? Sign::negative : Sign::positive;
  }
  return g.with_signs(std::move(signs));
}

}  // namespace balance
