#include "clearx/gen.hpp"

#include <random>

namespace clearx {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0,1) from the top 53 bits; avoids the implementation-defined
// behavior of std::uniform_real_distribution so seeds replay everywhere.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t trial_seed(const GenConfig& cfg, std::uint64_t trial) {
  return splitmix64(splitmix64(cfg.master_seed) ^ trial);
}

Instance random_instance(const GenConfig& cfg, std::uint64_t trial) {
  std::mt19937_64 rng(trial_seed(cfg, trial));
  Instance inst;
  inst.num_agents = cfg.num_agents;
  inst.num_goods = cfg.num_goods;
  inst.initial.resize(static_cast<std::size_t>(cfg.num_agents) * cfg.num_goods);
  for (auto& cell : inst.initial)
    cell = unit_uniform(rng) < cfg.density ? 1 : 0;
  inst.beta.assign(static_cast<std::size_t>(cfg.num_agents) * cfg.num_agents,
                   0.0);
  for (AgentId i = 0; i < cfg.num_agents; ++i) {
    for (AgentId j = i + 1; j < cfg.num_agents; ++j) {
      double b = cfg.beta_low + (cfg.beta_high - cfg.beta_low) * unit_uniform(rng);
      inst.beta[static_cast<std::size_t>(i) * cfg.num_agents + j] = b;
      inst.beta[static_cast<std::size_t>(j) * cfg.num_agents + i] = b;
    }
  }
  return inst;
}

}  // namespace clearx
