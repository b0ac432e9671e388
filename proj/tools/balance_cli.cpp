// balance: command-line front end for the structural balance tests.
//
//   balance summarize --input g.txt
//   balance test --input g.txt --method new --reps 10000 --seed 7
//   balance approx --input g.txt
//   balance generate --ws 1,100,2,0.1 --neg-frac 0.1 --seed 3 --out g.txt
//   balance simulate --preset ws-h0 --seed 1 --out pvalues.csv
//
// Exit codes: 0 ok, 1 I/O or parse error, 2 statistic undefined,
// 3 degenerate approximation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "balance/balance.hpp"

namespace {

using namespace balance;

constexpr int kExitIo = 1;
constexpr int kExitUndefined = 2;
constexpr int kExitDegenerate = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> numbers(const std::string& s, std::size_t expected, const std::string& flag) {
  const auto parts = split(s, ',');
  if (parts.size() != expected) {
    throw std::invalid_argument(flag + " expects " + std::to_string(expected) + " comma-separated values");
  }
  std::vector<double> out;
  for (const auto& p : parts) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != p.size()) throw std::invalid_argument(flag + ": bad number '" + p + "'");
    out.push_back(v);
  }
  return out;
}

std::size_t whole(double v, const std::string& flag) {
  if (v < 0 || v != std::floor(v)) throw std::invalid_argument(flag + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

WsSpec parse_ws(const std::string& s) {
  const auto v = numbers(s, 4, "--ws");
  return {static_cast<unsigned>(whole(v[0], "--ws")), whole(v[1], "--ws"), static_cast<unsigned>(whole(v[2], "--ws")),
          v[3]};
}

SbmSpec parse_sbm(const std::string& s) {
  const auto v = numbers(s, 5, "--sbm");
  return {whole(v[0], "--sbm"), v[1], v[2], v[3], v[4]};
}

/// "0-2,3-5,6+" style level bins; "6-" also means unbounded.
std::vector<LevelBin> parse_bins(const std::string& s) {
  std::vector<LevelBin> bins;
  for (const auto& part : split(s, ',')) {
    LevelBin b;
    const auto dash = part.find_first_of("-+");
    try {
      if (dash == std::string::npos) {
        b.lo = static_cast<std::uint32_t>(std::stoul(part));
        b.hi = b.lo;
      } else {
        b.lo = static_cast<std::uint32_t>(std::stoul(part.substr(0, dash)));
        const auto rest = part.substr(dash + 1);
        if (part[dash] == '-' && !rest.empty()) b.hi = static_cast<std::uint32_t>(std::stoul(rest));
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("--bins: bad bin '" + part + "'");
    }
    bins.push_back(b);
  }
  return bins;
}

struct Output {
  std::string path;
  std::ofstream file;

  std::ostream& stream() {
    if (path.empty() || path == "-") return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot write " + path);
    }
    return file;
  }
};

void emit(Output& out, const Json& j) { out.stream() << j.dump(2) << '\n'; }

struct Common {
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  std::string format = "json";
  unsigned workers = 1;
};

int run_summarize(const Common& c) {
  const auto g = read_edge_list(c.input);
  Output out{c.out, {}};
  emit(out, Json{{"whole", to_json(summary(g))},
                 {"positive", to_json(summary(sign_subgraph(g, Sign::positive)))},
                 {"negative", to_json(summary(sign_subgraph(g, Sign::negative)))}});
  return 0;
}

int run_diagnose(const Common& c) {
  const auto g = read_edge_list(c.input);
  const auto tris = triangles(g);
  const auto idx = embeddedness(g, tris);
  Json strata = Json::array();
  for (const auto& s : idx.strata) {
    strata.push_back({{"level", s.level}, {"n", s.size()}, {"m", s.negatives}, {"p", s.ratio()}});
  }
  const auto tc = census(tris, g.signs());
  Output out{c.out, {}};
  emit(out, Json{{"census", {{"t0", tc.t0}, {"t1", tc.t1}, {"t2", tc.t2}, {"t3", tc.t3}, {"u", tc.u}}},
                 {"strata", strata},
                 {"diagnostics", to_json(diagnostics(g, idx))}});
  return 0;
}

struct TestArgs {
  std::string method = "new";
  std::size_t reps = 10000;
  std::optional<std::string> pvalue;
  std::string bins;
  std::string conditioning = "stratified";
  std::string centering = "rademacher";
};

std::optional<PValueMode> parse_mode(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  static const std::map<std::string, PValueMode> modes{{"raw", PValueMode::raw_left},
                                                       {"add-one", PValueMode::add_one_left},
                                                       {"right", PValueMode::raw_right},
                                                       {"two-sided", PValueMode::two_sided}};
  return modes.at(*s);
}

int run_test(const Common& c, const TestArgs& t) {
  const auto g = read_edge_list(c.input);
  TestResult r;
  if (t.method == "gaussian") {
    r = gaussian_test(g, t.conditioning == "uniform" ? Conditioning::uniform : Conditioning::stratified,
                      t.centering == "exact" ? Centering::permutation : Centering::rademacher);
    r.seed = SeedSpec{c.seed};
  } else {
    McOptions opts{t.reps, SeedSpec{c.seed}, parse_mode(t.pvalue), false, c.workers};
    if (t.method == "old") {
      r = old_test(g, opts);
    } else if (t.method == "new") {
      r = new_test(g, opts);
    } else if (t.method == "binned") {
      if (t.bins.empty()) throw std::invalid_argument("--method binned needs --bins");
      r = binned_test(g, parse_bins(t.bins), opts);
    } else {
      r = structural_test(g, opts);
    }
  }
  for (const auto& note : r.notes) std::cerr << "note: " << note << '\n';
  Output out{c.out, {}};
  if (c.format == "csv") {
    write_csv(out.stream(), r);
  } else {
    emit(out, to_json(r));
  }
  return 0;
}

int run_approx(const Common& c, const std::string& conditioning) {
  const auto g = read_edge_list(c.input);
  if (g.edge_count() == 0) throw DegenerateApproximation("empty graph");
  const auto s = gaussian_summary(g, conditioning == "uniform" ? Conditioning::uniform : Conditioning::stratified);
  Output out{c.out, {}};
  emit(out, to_json(s));
  return 0;
}

struct GenerateArgs {
  std::string ws, er, sbm, config;
  std::optional<double> neg_frac;
  std::optional<double> neg_er;  // ER negative overlay, negatives per positive edge
  std::string clash = "void";
};

// {"ws": {"d":1,"n":100,"k":2,"p":0.1}} | {"er": {"N":..,"m":..}} |
// {"sbm": {"N":..,"p_plus":..,"q_plus":..,"p_minus":..,"q_minus":..}}
// plus optional "neg_frac", "neg_er", "clash".
void apply_config(GenerateArgs& a, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto j = nlohmann::json::parse(in);
  auto join = [](std::initializer_list<double> v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + format_number(x);
    return s;
  };
  if (j.contains("ws")) {
    const auto& w = j["ws"];
    a.ws = join({w.at("d").get<double>(), w.at("n").get<double>(), w.at("k").get<double>(), w.value("p", 0.0)});
  }
  if (j.contains("er")) a.er = join({j["er"].at("N").get<double>(), j["er"].at("m").get<double>()});
  if (j.contains("sbm")) {
    const auto& s = j["sbm"];
    a.sbm = join({s.at("N").get<double>(), s.value("p_plus", 0.0), s.value("q_plus", 0.0), s.value("p_minus", 0.0),
                  s.value("q_minus", 0.0)});
  }
  if (j.contains("neg_frac")) a.neg_frac = j["neg_frac"].get<double>();
  if (j.contains("neg_er")) a.neg_er = j["neg_er"].get<double>();
  if (j.contains("clash")) a.clash = j["clash"].get<std::string>();
}

int run_generate(const Common& c, GenerateArgs a) {
  if (!a.config.empty()) apply_config(a, a.config);
  const int chosen = !a.ws.empty() + !a.er.empty() + !a.sbm.empty();
  if (chosen != 1) throw std::invalid_argument("give exactly one of --ws, --er, --sbm (or a --config naming one)");
  auto rng = Rng::substream(derive(SeedSpec{c.seed}, kGraphTag), 0);
  SignedGraph g;
  if (!a.sbm.empty()) {
    g = gen_signed_sbm(parse_sbm(a.sbm), rng, a.clash == "negative-wins" ? SbmClash::negative_wins : SbmClash::void_pair);
  } else {
    Graph base;
    if (!a.ws.empty()) {
      base = gen_ws(parse_ws(a.ws), rng);
    } else {
      const auto v = numbers(a.er, 2, "--er");
      base = gen_er_gnm(whole(v[0], "--er"), whole(v[1], "--er"), rng);
    }
    if (a.neg_er) {
      const auto m = static_cast<std::size_t>(std::llround(*a.neg_er * static_cast<double>(base.edge_count())));
      g = compose(base, gen_er_gnm(base.vertex_count(), m, rng));
    } else {
      g = sign_uniform(base, a.neg_frac.value_or(0.0), rng);
    }
  }
  Output out{c.out, {}};
  write_edge_list(out.stream(), g);
  return 0;
}

struct SimulateArgs {
  std::string preset;
  std::string summary_path;
  std::optional<std::size_t> graphs;
  std::optional<std::size_t> reps;
};

int run_simulate(const Common& c, const SimulateArgs& a) {
  const SeedSpec seed{c.seed};
  SimulationResult r;
  if (a.preset == "clt-normality") {
    CltOptions o;
    o.draws = a.reps.value_or(o.draws);
    o.workers = c.workers;
    r = clt_normality(o, seed);
  } else if (a.preset == "ws-h0") {
    WsH0Options o;
    o.graphs = a.graphs.value_or(o.graphs);
    o.replicates = a.reps.value_or(o.replicates);
    o.workers = c.workers;
    r = ws_h0(o, seed);
  } else if (a.preset == "sbm-h1") {
    SbmH1Options o;
    o.graphs = a.graphs.value_or(o.graphs);
    o.replicates = a.reps.value_or(o.replicates);
    o.workers = c.workers;
    r = sbm_h1(o, seed);
  } else {
    TypeIOptions o;
    o.graphs = a.graphs.value_or(o.graphs);
    o.replicates = a.reps.value_or(o.replicates);
    o.workers = c.workers;
    r = typeI_stratified(o, seed);
  }
  Output out{c.out, {}};
  if (c.format == "json") {
    emit(out, to_json(r));
  } else {
    write_csv(out.stream(), r);
  }
  if (!a.summary_path.empty()) {
    Output summary{a.summary_path, {}};
    emit(summary, to_json(r));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural balance tests for signed graphs"};
  app.require_subcommand(1);

  Common common;
  TestArgs test_args;
  GenerateArgs gen_args;
  SimulateArgs sim_args;
  std::string conditioning = "stratified";

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input,-i", common.input, "Edge-list file")->required()->check(CLI::ExistingFile);
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out,-o", common.out, "Output path (default stdout)"); };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", common.seed, "Master seed"); };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", common.workers, "Worker threads (0 = all cores)");
  };

  auto* summarize = app.add_subcommand("summarize", "Summary statistics of the whole, positive and negative graphs");
  add_input(summarize);
  add_out(summarize);

  auto* diagnose = app.add_subcommand("diagnose", "Triad census, embeddedness strata and null-model diagnostics");
  add_input(diagnose);
  add_out(diagnose);

  auto* test = app.add_subcommand("test", "Run a balance test");
  add_input(test);
  add_out(test);
  add_seed(test);
  add_workers(test);
  test->add_option("--method", test_args.method)
      ->check(CLI::IsMember({"old", "new", "binned", "structural", "gaussian"}))
      ->capture_default_str();
  test->add_option("--reps,-N", test_args.reps, "Monte Carlo replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  test->add_option("--pvalue", test_args.pvalue, "p-value mode")
      ->check(CLI::IsMember({"raw", "add-one", "right", "two-sided"}));
  test->add_option("--bins", test_args.bins, "Level bins for --method binned, e.g. 0-2,3-5,6+");
  test->add_option("--conditioning", test_args.conditioning, "Gaussian conditioning")
      ->check(CLI::IsMember({"stratified", "uniform"}))
      ->capture_default_str();
  test->add_option("--centering", test_args.centering, "Gaussian centering: rademacher mean or exact permutation mean")
      ->check(CLI::IsMember({"rademacher", "exact"}))
      ->capture_default_str();
  test->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* approx = app.add_subcommand("approx", "Analytic Gaussian summary of the null");
  add_input(approx);
  add_out(approx);
  approx->add_option("--conditioning", conditioning)
      ->check(CLI::IsMember({"stratified", "uniform"}))
      ->capture_default_str();

  auto* generate = app.add_subcommand("generate", "Write a generated signed graph as an edge list");
  add_out(generate);
  add_seed(generate);
  generate->add_option("--ws", gen_args.ws, "Watts-Strogatz lattice d,n,k,p");
  generate->add_option("--er", gen_args.er, "Erdos-Renyi N,m");
  generate->add_option("--sbm", gen_args.sbm, "Signed blockmodel N,p+,q+,p-,q-");
  generate->add_option("--neg-frac", gen_args.neg_frac, "Fraction of edges made negative")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--neg-er", gen_args.neg_er, "Overlay Erdos-Renyi negatives, count = ratio * edges");
  generate->add_option("--clash", gen_args.clash, "Blockmodel pairs drawn with both signs")
      ->check(CLI::IsMember({"void", "negative-wins"}))
      ->capture_default_str();
  generate->add_option("--config", gen_args.config, "JSON generator config")->check(CLI::ExistingFile);

  auto* simulate = app.add_subcommand("simulate", "Run a simulation preset");
  add_out(simulate);
  add_seed(simulate);
  add_workers(simulate);
  simulate->add_option("--preset", sim_args.preset)
      ->required()
      ->check(CLI::IsMember({"clt-normality", "ws-h0", "sbm-h1", "typeI-stratified"}));
  simulate->add_option("--graphs", sim_args.graphs, "Replicate graphs (default 1000)");
  simulate->add_option("--reps,-N", sim_args.reps, "Monte Carlo replicates per test")->check(CLI::PositiveNumber);
  simulate->add_option("--summary", sim_args.summary_path, "Also write the JSON summary here");
  common.format = "json";
  simulate->add_option("--format", common.format, "csv: per-replicate rows; json: summary")
      ->check(CLI::IsMember({"json", "csv"}));
  simulate->preparse_callback([&](std::size_t) { common.format = "csv"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitIo;
  }

  try {
    if (*summarize) return run_summarize(common);
    if (*diagnose) return run_diagnose(common);
    if (*test) return run_test(common, test_args);
    if (*approx) return run_approx(common, conditioning);
    if (*generate) return run_generate(common, gen_args);
    if (*simulate) return run_simulate(common, sim_args);
  } catch (const StatisticUndefined& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUndefined;
  } catch (const DegenerateApproximation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
