#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "clearx/trace.hpp"
#include "clearx/types.hpp"

namespace clearx {

// Everything an agent may condition on when deciding about one proposal:
// who participates, the full current proposal set (including proposals not
// involving it), and the complete history of earlier rounds.
struct StrategyContext {
  AgentId self = kNoAgent;
  int round = 0;  // 0-based
  const ParticipantSet* participants = nullptr;
  const std::vector<Exchange>* proposals = nullptr;
  const std::vector<RoundRecord>* history = nullptr;
};

struct Strategy {
  std::string name;
  std::function<bool(const Exchange&, const StrategyContext&)> decide;
};

// Constant-accept policy.
Strategy accepting();
// Constant-reject policy.
Strategy reject_all();

// Looks up (round, canonical exchange) in the map; unmapped proposals are
// accepted.
using ScriptMap = std::map<std::pair<int, Exchange>, bool>;
Strategy scripted(ScriptMap decisions);

// Accept/reject bits consumed one per proposal the owning agent is asked
// about, in encounter order. An exhausted script accepts. Used to enumerate
// deviations path by path.
struct DeviationScript {
  std::vector<std::uint8_t> bits;
};

// Stateful: each call consumes the next bit. Build a fresh one per run.
Strategy from_script(const DeviationScript& script);

using StrategyProfile = std::vector<Strategy>;  // indexed by AgentId

StrategyProfile uniform_profile(int num_agents, const Strategy& s);

}  // namespace clearx
