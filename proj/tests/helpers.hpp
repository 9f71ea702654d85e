#pragma once

#include <cstdint>
#include <vector>

#include "clearx/model.hpp"
#include "clearx/types.hpp"

namespace clearx::testutil {

// Symmetric beta matrix from the strict upper triangle listed row by row:
// b01, b02, ..., b0(n-1), b12, b13, ...
inline std::vector<std::vector<double>> beta_matrix(int n,
                                                    std::vector<double> upper) {
  std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      b[i][j] = b[j][i] = upper.at(k);
      ++k;
    }
  return b;
}

inline Instance make_instance(std::vector<std::vector<int>> rows,
                              std::vector<double> upper) {
  int n = static_cast<int>(rows.size());
  return Instance::make(std::move(rows), beta_matrix(n, std::move(upper)));
}

// Two complementary pairs on two goods; agents 0 and 2 start with good 0,
// agents 1 and 3 with good 1. Betas strictly increasing in pair order.
inline Instance chain4() {
  return make_instance({{1, 0}, {0, 1}, {1, 0}, {0, 1}},
                       {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
}

// Utility recomputed directly from the definition, one good at a time.
inline double naive_utility(const Instance& inst, const Allocation& alloc,
                            AgentId agent) {
  double u = 0.0;
  for (GoodId r = 0; r < inst.num_goods; ++r) {
    if (alloc.holds(agent, r)) u += 1.0;
    for (AgentId j = 0; j < inst.num_agents; ++j)
      if (j != agent && alloc.holds(j, r)) u -= inst.beta_at(agent, j);
  }
  return u;
}

// Deterministic pseudo-random accept/reject based on a hash of the exchange
// and round; lets multi-round runs happen without real randomness.
inline bool hash_accept(std::uint64_t salt, int round, const Exchange& e,
                        int percent_accept = 70) {
  std::uint64_t h = salt * 0x9e3779b97f4a7c15ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(round));
  mix(static_cast<std::uint64_t>(e.giver_a));
  mix(static_cast<std::uint64_t>(e.good_a));
  mix(static_cast<std::uint64_t>(e.giver_b));
  mix(static_cast<std::uint64_t>(e.good_b));
  return static_cast<int>(h % 100) < percent_accept;
}

}  // namespace clearx::testutil
