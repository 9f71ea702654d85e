#pragma once

#include <cstdint>

#include "clearx/types.hpp"

namespace clearx {

struct GenConfig {
  int num_agents = 0;
  int num_goods = 0;
  double density = 0.5;       // probability a cell of the initial matrix is 1
  double beta_low = 0.01;     // betas drawn uniformly from [beta_low, beta_high]
  double beta_high = 0.99;
  std::uint64_t master_seed = 0;
};

// Seed of the RNG used for a given trial; exposed for reporting.
std::uint64_t trial_seed(const GenConfig& cfg, std::uint64_t trial);

// Deterministic per (config, trial): initial cells are i.i.d. Bernoulli
// draws, betas i.i.d. uniform and mirrored.
Instance random_instance(const GenConfig& cfg, std::uint64_t trial);

}  // namespace clearx
