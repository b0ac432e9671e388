// Generate a small lattice graph with random negatives, then run the uniform
// and level-stratified permutation tests on it.

#include <iostream>

#include "balance/balance.hpp"

int main() {
  using namespace balance;
  auto rng = Rng::substream(SeedSpec{42}, 0);
  const auto g = sign_uniform(gen_ws({1, 100, 2, 0.1}, rng), 0.1, rng);

  const auto c = census(g);
  std::cout << "edges " << g.edge_count() << ", negatives " << g.negative_count() << ", triangles " << c.total()
            << ", unbalanced " << c.u << "\n";

  const McOptions opts{5000, SeedSpec{7}, {}, {}, 1};
  for (const auto& r : {old_test(g, opts), new_test(g, opts)}) {
    std::cout << to_json(r).dump() << "\n";
  }
  std::cout << to_json(gaussian_test(g)).dump() << "\n";
}
