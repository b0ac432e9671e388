#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "balance/gaussian.hpp"
#include "balance/generators.hpp"
#include "balance/mc_test.hpp"
#include "balance/normal.hpp"
#include "balance/null_models.hpp"
#include "balance/parallel.hpp"
#include "balance/rng.hpp"
#include "balance/triangles.hpp"

namespace balance {

/// Kolmogorov-Smirnov distance between the sample's empirical CDF and the
/// standard normal CDF. Tied samples are handled as a single jump.
inline double ks_statistic_normal(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("KS statistic of an empty sample");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double f = normal_cdf(x[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return d;
}

/// Fraction of p-values at or below alpha.
inline double rejection_rate(std::span<const double> p_values, double alpha) {
  if (p_values.empty()) return 0.0;
  const auto hits = std::count_if(p_values.begin(), p_values.end(), [&](double p) { return p <= alpha; });
  return static_cast<double>(hits) / static_cast<double>(p_values.size());
}

/// Per-replicate output of a preset plus its headline numbers.
struct SimulationResult {
  std::string preset;
  SeedSpec seed;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, double> summary;

  std::vector<double> column(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range("no column " + name);
    const auto c = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
};

// Seed tags. Graph k of a preset is drawn from substream k of derive(seed,
// kGraphTag); the tests on it use derive(derive(seed, kOldTag), k) and so on.
inline constexpr std::uint64_t kGraphTag = 1;
inline constexpr std::uint64_t kOldTag = 2;
inline constexpr std::uint64_t kNewTag = 3;
inline constexpr std::uint64_t kNullTag = 4;

inline constexpr double kAlpha = 0.05;

/// Fixed lattice graph with a uniform fraction of negative edges.
inline SignedGraph ws_signed_base(const WsSpec& ws, double negative_fraction, const SeedSpec& seed) {
  auto rng = Rng::substream(derive(seed, kGraphTag), 0);
  const auto g = gen_ws(ws, rng);
  return sign_uniform(g, negative_fraction, rng);
}

struct CltOptions {
  WsSpec ws{3, 6, 3, 0.2};
  double negative_fraction = 0.1;
  std::size_t draws = 10000;
  unsigned workers = 1;
};

/// Stratified-null draws of U on one graph, standardized by the analytic
/// mean and conditional variance.
inline SimulationResult clt_normality(const CltOptions& opt, const SeedSpec& seed) {
  const auto g = ws_signed_base(opt.ws, opt.negative_fraction, seed);
  auto tris = triangles(g);
  const auto idx = embeddedness(g, tris);
  const auto summary = gaussian_summary(g, idx, tris, Conditioning::stratified);
  if (!(summary.var_u > 0.0)) throw DegenerateApproximation("degenerate approximation: zero conditional variance");
  const double sd = std::sqrt(summary.var_u);
  const UnbalancedCount stat(std::move(tris));
  const auto perm = stratified_permutation(idx);
  const auto null_seed = derive(seed, kNullTag);

  SimulationResult out{"clt-normality", seed, {"replicate", "u", "z"}, {}, {}};
  out.rows.resize(opt.draws);
  parallel_for(opt.draws, opt.workers, [&](std::size_t b) {
    auto rng = Rng::substream(null_seed, b);
    const double u = stat(perm(g, rng));
    out.rows[b] = {static_cast<double>(b), u, (u - summary.mu) / sd};
  });
  const auto z = out.column("z");
  out.summary = {{"edges", static_cast<double>(g.edge_count())},
                 {"triangles", static_cast<double>(stat.triangles().size())},
                 {"mu", summary.mu},
                 {"var_u", summary.var_u},
                 {"observed_u", stat(g)},
                 {"ks", ks_statistic_normal(z)}};
  return out;
}

struct WsH0Options {
  WsSpec ws{1, 100, 2, 0.1};
  double negative_ratio = 0.06;  // negatives per positive edge
  std::size_t graphs = 1000;
  std::size_t replicates = 1000;
  unsigned workers = 1;
};

/// Lattice positives overlaid with Erdos-Renyi negatives; the negative layer
/// wins where both have an edge.
inline SignedGraph ws_er_graph(const WsH0Options& opt, Rng& rng) {
  const auto pos = gen_ws(opt.ws, rng);
  const auto m = static_cast<std::size_t>(std::llround(opt.negative_ratio * static_cast<double>(pos.edge_count())));
  const auto neg = gen_er_gnm(pos.vertex_count(), m, rng);
  return compose(pos, neg);
}

namespace detail {

inline std::array<double, 2> both_tests(const SignedGraph& g, const SeedSpec& seed, std::size_t k,
                                        std::size_t replicates) {
  McOptions old_opts{replicates, derive(derive(seed, kOldTag), k), PValueMode::raw_left, false, 1};
  McOptions new_opts{replicates, derive(derive(seed, kNewTag), k), PValueMode::raw_left, false, 1};
  return {old_test(g, old_opts).p_value, new_test(g, new_opts).p_value};
}

inline void add_rejection_rates(SimulationResult& out, const std::string& prefix) {
  out.summary[prefix + "reject_old"] = rejection_rate(out.column("p_old"), kAlpha);
  out.summary[prefix + "reject_new"] = rejection_rate(out.column("p_new"), kAlpha);
}

}  // namespace detail

/// Old and new test p-values on graphs with no balance mechanism.
inline SimulationResult ws_h0(const WsH0Options& opt, const SeedSpec& seed) {
  SimulationResult out{"ws-h0", seed, {"replicate", "p_old", "p_new"}, {}, {}};
  out.rows.resize(opt.graphs);
  const auto graph_seed = derive(seed, kGraphTag);
  parallel_for(opt.graphs, opt.workers, [&](std::size_t k) {
    auto rng = Rng::substream(graph_seed, k);
    const auto g = ws_er_graph(opt, rng);
    const auto p = detail::both_tests(g, seed, k, opt.replicates);
    out.rows[k] = {static_cast<double>(k), p[0], p[1]};
  });
  detail::add_rejection_rates(out, "");
  out.summary["alpha"] = kAlpha;
  return out;
}

/// Models 1-3 of the signed blockmodel experiment.
inline const std::array<SbmSpec, 3>& sbm_models() {
  static const std::array<SbmSpec, 3> models{{
      {100, 0.4, 0.1, 0.03, 0.1},
      {50, 0.3, 0.0, 0.0, 0.3},
      {50, 0.3, 0.2, 0.2, 0.3},
  }};
  return models;
}

struct SbmH1Options {
  std::vector<std::size_t> models{1, 2, 3};
  std::size_t graphs = 1000;
  std::size_t replicates = 1000;
  SbmClash clash = SbmClash::void_pair;
  unsigned workers = 1;
};

/// Old and new test p-values on blockmodel draws, per model.
inline SimulationResult sbm_h1(const SbmH1Options& opt, const SeedSpec& seed) {
  SimulationResult out{"sbm-h1", seed, {"model", "replicate", "p_old", "p_new"}, {}, {}};
  for (auto model : opt.models) {
    if (model < 1 || model > sbm_models().size()) {
      throw std::invalid_argument("unknown blockmodel " + std::to_string(model));
    }
    const auto& spec = sbm_models()[model - 1];
    const auto model_seed = derive(seed, 100 + model);
    const auto graph_seed = derive(model_seed, kGraphTag);
    std::vector<std::vector<double>> rows(opt.graphs);
    parallel_for(opt.graphs, opt.workers, [&](std::size_t k) {
      auto rng = Rng::substream(graph_seed, k);
      const auto g = gen_signed_sbm(spec, rng, opt.clash);
      const auto p = detail::both_tests(g, model_seed, k, opt.replicates);
      rows[k] = {static_cast<double>(model), static_cast<double>(k), p[0], p[1]};
    });
    std::vector<double> p_old, p_new;
    for (const auto& r : rows) {
      p_old.push_back(r[2]);
      p_new.push_back(r[3]);
    }
    const auto prefix = "model" + std::to_string(model) + "_";
    out.summary[prefix + "reject_old"] = rejection_rate(p_old, kAlpha);
    out.summary[prefix + "reject_new"] = rejection_rate(p_new, kAlpha);
    out.rows.insert(out.rows.end(), rows.begin(), rows.end());
  }
  out.summary["alpha"] = kAlpha;
  return out;
}

struct TypeIOptions {
  WsSpec ws{2, 30, 2, 0.3};
  double negative_fraction = 0.15;
  std::size_t graphs = 1000;
  std::size_t replicates = 1000;
  unsigned workers = 1;
};

/// New-test p-values on graphs drawn from the new test's own null: each
/// replicate is a stratified reshuffle of one fixed base graph.
inline SimulationResult typeI_stratified(const TypeIOptions& opt, const SeedSpec& seed) {
  const auto base = ws_signed_base(opt.ws, opt.negative_fraction, seed);
  auto tris = triangles(base);
  const auto idx = embeddedness(base, tris);
  const auto perm = stratified_permutation(idx);
  const UnbalancedCount stat(std::move(tris));
  const auto graph_seed = derive(seed, kNullTag);
  const auto test_seed = derive(seed, kNewTag);

  SimulationResult out{"typeI-stratified", seed, {"replicate", "u", "p_new"}, {}, {}};
  out.rows.resize(opt.graphs);
  parallel_for(opt.graphs, opt.workers, [&](std::size_t k) {
    auto rng = Rng::substream(graph_seed, k);
    const auto g = perm(base, rng);
    const McOptions mc{opt.replicates, derive(test_seed, k), PValueMode::raw_left, false, 1};
    const auto r = mc_test(g, stat, perm, Method::new_test, mc);
    out.rows[k] = {static_cast<double>(k), r.observed, r.p_value};
  });
  out.summary = {{"edges", static_cast<double>(base.edge_count())},
                 {"triangles", static_cast<double>(stat.triangles().size())},
                 {"alpha", kAlpha},
                 {"reject_new", rejection_rate(out.column("p_new"), kAlpha)}};
  return out;
}

inline const std::array<std::string_view, 4>& preset_names() {
  static const std::array<std::string_view, 4> names{"clt-normality", "ws-h0", "sbm-h1", "typeI-stratified"};
  return names;
}

}  // namespace balance
