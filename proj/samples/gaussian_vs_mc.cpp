// Compare the analytic Gaussian p-value with the Monte Carlo one on a few
// graphs, under both centerings.
//
//   sample_gaussian_vs_mc [graphs] [replicates]

#include <cstdio>
#include <cstdlib>

#include "balance/balance.hpp"

int main(int argc, char** argv) {
  using namespace balance;
  const std::size_t graphs = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5;
  const std::size_t reps = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 5000;

  std::printf("%-5s %8s %9s %9s %9s %9s\n", "graph", "u", "p_mc", "p_gauss", "p_exact", "diff");
  for (std::size_t k = 0; k < graphs; ++k) {
    const auto g = ws_signed_base({2, 15, 2, 0.2}, 0.1, SeedSpec{100 + k});
    const auto mc = new_test(g, McOptions{reps, SeedSpec{k}, PValueMode::raw_left, {}, 1});
    const auto gauss = gaussian_test(g);
    const auto exact = gaussian_test(g, Conditioning::stratified, Centering::permutation);
    std::printf("%-5zu %8.0f %9.4f %9.4f %9.4f %+9.4f\n", k, mc.observed, mc.p_value, gauss.p_value, exact.p_value,
                gauss.p_value - mc.p_value);
  }
}
