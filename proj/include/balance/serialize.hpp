#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <system_error>

#include "json.hpp"

#include "balance/experiments.hpp"
#include "balance/gaussian.hpp"
#include "balance/mc_test.hpp"
#include "balance/summary.hpp"

namespace balance {

using Json = nlohmann::ordered_json;

inline Json to_json(const TestResult& r) {
  return Json{{"method", to_string(r.method)},
              {"observed", r.observed},
              {"replicates", r.replicates},
              {"p_value", r.p_value},
              {"p_value_mode", to_string(r.p_value_mode)},
              {"null_mean", r.null_mean},
              {"null_var", r.null_var},
              {"seed", r.seed.master_seed}};
}

inline Json to_json(const GaussianSummary& s) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < s.sigma.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < s.sigma.cols(); ++j) row.push_back(s.sigma(i, j));
    rows.push_back(std::move(row));
  }
  Json sigma_s = Json::array();
  for (int i = 0; i < 3; ++i) sigma_s.push_back({s.sigma_s(i, 0), s.sigma_s(i, 1), s.sigma_s(i, 2)});
  return Json{{"mu", s.mu},
              {"expected_T", s.expected_T},
              {"sigma", {{"labels", s.labels}, {"rows", rows}}},
              {"sigma_s", sigma_s},
              {"var_u", s.var_u},
              {"dropped_levels", s.dropped_levels}};
}

inline Json to_json(const SummaryStats& s) {
  Json out{{"vertex_count", s.vertex_count},
           {"edge_count", s.edge_count},
           {"density", s.density},
           {"transitivity", s.transitivity},
           {"mean_path_length", nullptr},
           {"component_count", s.component_count}};
  if (s.mean_path_length) out["mean_path_length"] = *s.mean_path_length;
  return out;
}

inline Json to_json(const Diagnostics& d) {
  Json out{{"max_negative_level", d.max_negative_level},
           {"max_eps_squared_over_n", d.max_eps_squared_over_n},
           {"embeddedness_gap", nullptr}};
  if (d.embeddedness_gap) out["embeddedness_gap"] = *d.embeddedness_gap;
  return out;
}

/// Headline numbers of a preset run; per-replicate rows go to CSV.
inline Json to_json(const SimulationResult& r) {
  Json summary = Json::object();
  for (const auto& [k, v] : r.summary) summary[k] = v;
  return Json{{"preset", r.preset}, {"seed", r.seed.master_seed}, {"rows", r.rows.size()}, {"summary", summary}};
}

/// Shortest decimal that round-trips; integral values print without a point.
inline std::string format_number(double x) {
  if (std::isfinite(x) && x == std::trunc(x) && std::abs(x) < 1e15) {
    return std::to_string(static_cast<long long>(x));
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& out, const SimulationResult& r) {
  for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << r.columns[c];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

inline void write_csv(std::ostream& out, const TestResult& r) {
  const Json j = to_json(r);
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    out << (first ? "" : ",") << k;
    first = false;
  }
  out << '\n';
  out << to_string(r.method) << ',' << format_number(r.observed) << ',' << r.replicates << ','
      << format_number(r.p_value) << ',' << to_string(r.p_value_mode) << ',' << format_number(r.null_mean) << ','
      << format_number(r.null_var) << ',' << r.seed.master_seed << '\n';
}

}  // namespace balance
