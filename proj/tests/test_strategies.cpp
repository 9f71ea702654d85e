#include "clearx/demos.hpp"
#include "clearx/protocol.hpp"
#include "clearx/strategies.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace clearx;
using namespace clearx::testutil;

namespace {

StrategyContext ctx_at(int round) {
  StrategyContext c;
  c.round = round;
  return c;
}

}  // namespace

TEST_CASE("constant policies") {
  Exchange e{0, 0, 1, 1};
  CHECK(accepting().decide(e, ctx_at(0)));
  CHECK(accepting().decide(e, ctx_at(5)));
  CHECK(!reject_all().decide(e, ctx_at(0)));
}

TEST_CASE("scripted decisions key on round and canonical exchange") {
  ScriptMap map{{{1, Exchange{0, 0, 2, 2}}, false}};
  Strategy s = scripted(map);
  Exchange e{0, 0, 2, 2};
  Exchange mirrored{2, 2, 0, 0};
  CHECK(s.decide(e, ctx_at(0)));        // wrong round -> default accept
  CHECK(!s.decide(e, ctx_at(1)));
  CHECK(!s.decide(mirrored, ctx_at(1)));  // same trade, flipped orientation
  CHECK(s.decide(Exchange{0, 1, 2, 2}, ctx_at(1)));  // unmapped -> accept
}

TEST_CASE("script bits are consumed in encounter order and then accept") {
  Strategy s = from_script(DeviationScript{{0, 1, 0}});
  Exchange e{0, 0, 1, 1};
  CHECK(!s.decide(e, ctx_at(0)));
  CHECK(s.decide(e, ctx_at(0)));
  CHECK(!s.decide(e, ctx_at(1)));
  CHECK(s.decide(e, ctx_at(2)));  // exhausted
  CHECK(s.decide(e, ctx_at(3)));
}

TEST_CASE("each from_script strategy owns its own cursor") {
  DeviationScript script{{0}};
  Strategy a = from_script(script);
  Strategy b = from_script(script);
  Exchange e{0, 0, 1, 1};
  CHECK(!a.decide(e, ctx_at(0)));
  CHECK(!b.decide(e, ctx_at(0)));  // unaffected by a's consumption
  CHECK(a.decide(e, ctx_at(0)));
}

TEST_CASE("uniform profile assigns the policy to every agent") {
  StrategyProfile p = uniform_profile(3, reject_all());
  REQUIRE(p.size() == 3);
  Exchange e{0, 0, 1, 1};
  for (auto& s : p) CHECK(!s.decide(e, ctx_at(0)));
}

TEST_CASE("only the two named givers are consulted about a proposal") {
  Instance inst = find_demo("fig1a")->instance;
  ParticipantSet all = ParticipantSet::all(inst);
  std::vector<int> asked(inst.num_agents, 0);
  StrategyProfile profile;
  for (AgentId a = 0; a < inst.num_agents; ++a)
    profile.push_back(Strategy{
        "count", [&asked, a](const Exchange& e, const StrategyContext& c) {
          CHECK(c.self == a);
          CHECK(e.involves(a));
          ++asked[a];
          return true;
        }});
  std::vector<Exchange> proposals{{0, 0, 1, 1}, {1, 1, 2, 2}};
  std::vector<RoundRecord> history;
  auto decisions = collect_decisions(proposals, profile, all, 0, history);
  REQUIRE(decisions.size() == 2);
  CHECK(asked == std::vector<int>{1, 2, 1, 0});
}

TEST_CASE("strategy context exposes the full proposal set and history") {
  Instance inst = find_demo("fig1a")->instance;
  ParticipantSet all = ParticipantSet::all(inst);
  bool saw_round1 = false;
  Strategy probe{"probe", [&](const Exchange& e, const StrategyContext& c) {
                   REQUIRE(c.proposals != nullptr);
                   REQUIRE(c.history != nullptr);
                   CHECK(c.participants->size() == 4);
                   if (c.round == 1) {
                     saw_round1 = true;
                     // History holds the complete first round.
                     REQUIRE(c.history->size() == 1);
                     CHECK((*c.history)[0].proposals.size() == 3);
                   }
                   // Reject one first-round proposal to force a second round.
                   return !(c.round == 0 && e == Exchange{0, 0, 2, 2});
                 }};
  run(inst, all, uniform_profile(inst.num_agents, probe), {});
  CHECK(saw_round1);
}
