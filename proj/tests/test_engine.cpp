#include <algorithm>
#include <set>

#include "clearx/demos.hpp"
#include "clearx/engine.hpp"
#include "clearx/gen.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace clearx;
using namespace clearx::testutil;

namespace {

StrategyProfile all_accept(const Instance& inst) {
  return uniform_profile(inst.num_agents, accepting());
}

const Instance& demo(const char* name) { return find_demo(name)->instance; }

}  // namespace

TEST_CASE("execute dispatches to the requested protocol") {
  Instance inst = demo("dsic4");
  ParticipantSet all = ParticipantSet::all(inst);
  Trace clear = execute(inst, all, all_accept(inst), {}, ProtocolKind::kClear);
  Trace sac = execute(inst, all, all_accept(inst), {}, ProtocolKind::kSac);
  CHECK(clear.rounds.size() == 1);  // both pairs scheduled together
  CHECK(sac.rounds.size() == 2);    // one exchange per round
  CHECK(clear.final_allocation.same_cells(sac.final_allocation));
}

TEST_CASE("two-pair instance: all-accepting run and utilities") {
  Instance inst = chain4();
  ParticipantSet all = ParticipantSet::all(inst);
  Trace tr = run(inst, all, all_accept(inst), {});
  PairCounts want{{{0, 1}, 1}, {{2, 3}, 1}};
  CHECK(tr.pair_counts == want);
  CHECK(tr.utilities[0] ==
        doctest::Approx(2 - 2 * (0.1 + 0.2 + 0.3)).epsilon(1e-9));

  // Without agent 0 only the cheapest remaining swap happens.
  Trace without = run(inst, ParticipantSet::of({1, 2, 3}), all_accept(inst), {});
  PairCounts want2{{{1, 2}, 1}};
  CHECK(without.pair_counts == want2);
  CHECK(without.utilities[0] ==
        doctest::Approx(1 - 2 * (0.1 + 0.2) - 0.3).epsilon(1e-9));
}

TEST_CASE("deviation tree lists the all-accepting path first") {
  Instance inst = demo("fig1b");
  auto outcomes =
      explore_focal_tree(inst, ParticipantSet::all(inst), 1, {}, {});
  REQUIRE(!outcomes.empty());
  for (std::uint8_t b : outcomes.front().script.bits) CHECK(b == 1);
  // Agent 1 faces both round-one proposals.
  CHECK(outcomes.front().exchanges_involving_focal.size() == 2);
  // Accepting everything is optimal here.
  for (const auto& o : outcomes)
    CHECK(outcomes.front().utility >= o.utility - 1e-9);
}

TEST_CASE("deviation tree enumerates each decision string exactly once") {
  GenConfig cfg;
  cfg.num_agents = 4;
  cfg.num_goods = 3;
  cfg.master_seed = 31;
  for (std::uint64_t t = 0; t < 20; ++t) {
    Instance inst = random_instance(cfg, t);
    for (AgentId focal = 0; focal < inst.num_agents; ++focal) {
      auto outcomes =
          explore_focal_tree(inst, ParticipantSet::all(inst), focal, {}, {});
      std::set<std::vector<std::uint8_t>> seen;
      for (const auto& o : outcomes) {
        CHECK(!seen.count(o.script.bits));
        seen.insert(o.script.bits);
      }
    }
  }
}

TEST_CASE("deviation tree respects its path budget") {
  Instance inst = demo("po9");
  ExploreOptions opt;
  opt.max_paths = 1;
  CHECK_THROWS_AS(
      explore_focal_tree(inst, ParticipantSet::all(inst), 0, {}, opt),
      BudgetExceeded);
}

TEST_CASE("deviation tree with no proposals has a single outcome") {
  Instance inst = make_instance({{1, 1}, {1, 1}}, {0.5});
  auto outcomes =
      explore_focal_tree(inst, ParticipantSet::all(inst), 0, {}, {});
  REQUIRE(outcomes.size() == 1);
  CHECK(outcomes[0].script.bits.empty());
  CHECK(outcomes[0].exchanges_involving_focal.empty());
}

TEST_CASE("protocol tree of the four-agent instance") {
  Instance inst = demo("dsic4");
  ProtocolTree tree =
      build_protocol_tree(ProtocolKind::kClear, inst, ParticipantSet::all(inst));
  const auto& root = tree.nodes[0];
  std::vector<Exchange> round1{{0, 0, 1, 1}, {2, 0, 3, 1}};
  REQUIRE(root.proposals == round1);
  REQUIRE(root.children.size() == 4);

  // Accepting everything terminates immediately.
  const auto& all_acc = tree.nodes[root.children[3]];
  CHECK(all_acc.leaf());
  CHECK(all_acc.allocation.row_full(0));

  // Rejecting both reroutes through the other two pairs.
  const auto& both_rej = tree.nodes[root.children[0]];
  std::vector<Exchange> round2{{1, 1, 2, 0}, {0, 0, 3, 1}};
  CHECK(both_rej.proposals == round2);

  // Rejecting only one leaves nothing new to schedule.
  CHECK(tree.nodes[root.children[1]].leaf());
  CHECK(tree.nodes[root.children[2]].leaf());

  for (std::size_t id = 0; id < tree.nodes.size(); ++id)
    for (int child : tree.nodes[id].children)
      CHECK(tree.nodes[child].parent == static_cast<int>(id));
}

TEST_CASE("single-exchange protocol tree proposes at most one exchange per node") {
  Instance inst = demo("dsic4");
  ProtocolTree tree =
      build_protocol_tree(ProtocolKind::kSac, inst, ParticipantSet::all(inst));
  CHECK(tree.nodes.size() > 1);
  for (const auto& node : tree.nodes) {
    CHECK(node.proposals.size() <= 1);
    if (!node.proposals.empty()) REQUIRE(node.children.size() == 2);
  }
  CHECK(tree.nodes[0].proposals ==
        std::vector<Exchange>{Exchange{0, 0, 1, 1}});
}

TEST_CASE("protocol tree respects its node budget") {
  Instance inst = demo("po9");
  CHECK_THROWS_AS(build_protocol_tree(ProtocolKind::kClear, inst,
                                      ParticipantSet::all(inst), {}, 4),
                  BudgetExceeded);
}

TEST_CASE("participation battery covers every subset of the others") {
  Instance inst = chain4();
  auto battery = participation_battery(inst, 0, {});
  REQUIRE(battery.size() == 8);
  for (const auto& entry : battery) {
    if (entry.others.empty()) {
      // Joining nobody changes nothing.
      CHECK(entry.u_in == doctest::Approx(entry.u_out).epsilon(1e-12));
    }
    if (entry.others.size() == 3)
      CHECK(entry.u_in - entry.u_out ==
            doctest::Approx(1 - 0.3).epsilon(1e-9));  // 1 - beta_03
    CHECK(entry.u_in >= entry.u_out - 1e-9);
  }
}

TEST_CASE("participation battery throws past the subset budget") {
  GenConfig cfg;
  cfg.num_agents = 6;
  cfg.num_goods = 2;
  cfg.master_seed = 32;
  Instance inst = random_instance(cfg, 0);
  CHECK_THROWS_AS(participation_battery(inst, 0, {}, 8), BudgetExceeded);
}
