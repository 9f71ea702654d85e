#include "clearx/demos.hpp"

#include <tuple>

namespace clearx {

namespace {

// Symmetric beta matrix from an upper-triangle list {{i,j,beta}, ...}.
std::vector<std::vector<double>> beta_matrix(
    int n, std::vector<std::tuple<int, int, double>> entries) {
  std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
  for (auto [i, j, v] : entries) {
    b[i][j] = v;
    b[j][i] = v;
  }
  return b;
}

std::vector<DemoEntry> build_catalog() {
  std::vector<DemoEntry> demos;

  demos.push_back(DemoEntry{
      "fig1a",
      "4 agents, 3 goods; rejecting one proposal makes the planner route the "
      "rejected good through a different partner in round 2",
      Instance::make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}},
                     beta_matrix(4, {{0, 1, 0.1},
                                     {0, 2, 0.2},
                                     {1, 2, 0.3},
                                     {0, 3, 0.4},
                                     {1, 3, 0.5},
                                     {2, 3, 0.6}}))});

  demos.push_back(DemoEntry{
      "fig1b",
      "3 agents, 3 goods; the repair subroutine reroutes an incoming good so "
      "a third agent can still trade",
      Instance::make({{1, 0, 1}, {0, 1, 0}, {1, 0, 0}},
                     beta_matrix(3, {{0, 1, 0.1}, {1, 2, 0.2}, {0, 2, 0.3}}))});

  demos.push_back(DemoEntry{
      "irillus",
      "3 agents, 2 goods; agent 2 holds both goods, so joining gains it "
      "nothing but also blocks nothing",
      Instance::make({{1, 0}, {0, 1}, {1, 1}},
                     beta_matrix(3, {{0, 1, 0.1}, {0, 2, 0.2}, {1, 2, 0.3}}))});

  demos.push_back(DemoEntry{
      "ir4",
      "4 agents, 4 goods; the with/without-focal difference splits into one "
      "odd path (gain 1 - beta_03) and one even path (gain 1 + beta_02) for "
      "agent 0",
      Instance::make({{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 0}},
                     beta_matrix(4, {{0, 1, 0.1},
                                     {0, 2, 0.2},
                                     {0, 3, 0.3},
                                     {1, 2, 0.4},
                                     {1, 3, 0.5},
                                     {2, 3, 0.6}}))});

  demos.push_back(DemoEntry{
      "ir4b",
      "4 agents, 4 goods; agent 0's participation difference is a single "
      "both-ends-at-focal path of gain 2 plus one untracked exchange "
      "common to both runs",
      Instance::make({{0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 1}, {1, 0, 0, 1}},
                     beta_matrix(4, {{0, 1, 0.1},
                                     {0, 2, 0.2},
                                     {0, 3, 0.3},
                                     {1, 2, 0.4},
                                     {1, 3, 0.5},
                                     {2, 3, 0.6}}))});

  demos.push_back(DemoEntry{
      "po9",
      "3 agents, 9 goods; without the repair subroutine the run stalls at a "
      "stable but inefficient allocation, with it one agent ends up with "
      "all nine goods",
      Instance::make({{0, 0, 1, 1, 1, 1, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 1, 1, 1},
                      {1, 1, 1, 1, 1, 0, 0, 0, 0}},
                     beta_matrix(3, {{0, 1, 0.1}, {0, 2, 0.2}, {1, 2, 0.3}}))});

  demos.push_back(DemoEntry{
      "nlnh5",
      "5 agents, 3 goods; slacks have mixed signs (agent 0: -0.04, rest: "
      "0.71) yet everyone still ends up with every good",
      Instance::make({{0, 0, 1}, {1, 1, 0}, {1, 1, 0}, {1, 1, 0}, {1, 0, 1}},
                     beta_matrix(5, {{0, 1, 0.26},
                                     {0, 2, 0.26},
                                     {0, 3, 0.26},
                                     {0, 4, 0.26},
                                     {1, 2, 0.01},
                                     {1, 3, 0.01},
                                     {1, 4, 0.01},
                                     {2, 3, 0.01},
                                     {2, 4, 0.01},
                                     {3, 4, 0.01}}))});

  demos.push_back(DemoEntry{
      "nlnh5alt",
      "variant of nlnh5 where agent 0 starts with goods 1 and 2; the final "
      "allocations of the two variants do not dominate each other",
      Instance::make({{0, 1, 1}, {1, 1, 0}, {1, 1, 0}, {1, 1, 0}, {1, 0, 1}},
                     beta_matrix(5, {{0, 1, 0.26},
                                     {0, 2, 0.26},
                                     {0, 3, 0.26},
                                     {0, 4, 0.26},
                                     {1, 2, 0.01},
                                     {1, 3, 0.01},
                                     {1, 4, 0.01},
                                     {2, 3, 0.01},
                                     {2, 4, 0.01},
                                     {3, 4, 0.01}}))});

  // beta_02 and beta_13 play no role in the construction; they are fixed to
  // 0.5 arbitrarily (both pairs hold identical bundles and never trade).
  demos.push_back(DemoEntry{
      "dsic4",
      "4 agents, 2 goods; the instance separating always-accept dominance "
      "from Nash incentive compatibility: under the single-exchange "
      "reference protocol a scripted co-profile makes rejecting profitable",
      Instance::make({{1, 0}, {0, 1}, {1, 0}, {0, 1}},
                     beta_matrix(4, {{0, 1, 0.1},
                                     {1, 2, 0.2},
                                     {2, 3, 0.3},
                                     {0, 3, 0.4},
                                     {0, 2, 0.5},
                                     {1, 3, 0.5}}))});

  demos.push_back(DemoEntry{
      "truthful3",
      "3 agents, 2 goods; agent 0 holds both goods and gains exactly beta_01 "
      "by hiding good 1 from the planner",
      Instance::make({{1, 1}, {1, 0}, {0, 1}},
                     beta_matrix(3, {{0, 1, 0.1}, {0, 2, 0.2}, {1, 2, 0.3}}))});

  demos.push_back(DemoEntry{
      "single3",
      "3 agents, 2 goods; two feasible exchanges both involve agent 2, so no "
      "one-round protocol can be both stable and deviation-proof",
      Instance::make({{1, 0}, {1, 0}, {0, 1}},
                     beta_matrix(3, {{0, 1, 0.1}, {0, 2, 0.2}, {1, 2, 0.3}}))});

  demos.push_back(DemoEntry{
      "core4",
      "4 agents, 4 unique goods, all betas 0.9; pairwise coalitions beat the "
      "grand coalition, so the grand coalition is not in the core",
      Instance::make({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                     beta_matrix(4, {{0, 1, 0.9},
                                     {0, 2, 0.9},
                                     {0, 3, 0.9},
                                     {1, 2, 0.9},
                                     {1, 3, 0.9},
                                     {2, 3, 0.9}}))});

  return demos;
}

}  // namespace

const std::vector<DemoEntry>& demo_catalog() {
  static const std::vector<DemoEntry> catalog = build_catalog();
  return catalog;
}

const DemoEntry* find_demo(const std::string& name) {
  for (const DemoEntry& d : demo_catalog())
    if (d.name == name) return &d;
  return nullptr;
}

StrategyProfile dsic4_deviation_co_profile(const Instance& inst) {
  StrategyProfile profile = uniform_profile(inst.num_agents, accepting());
  profile[0] = Strategy{"accept_01_reject_03",
                        [](const Exchange& e, const StrategyContext&) {
                          return !(e.involves(0) && e.involves(3));
                        }};
  return profile;
}

}  // namespace clearx
