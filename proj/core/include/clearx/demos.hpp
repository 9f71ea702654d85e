#pragma once

#include <string>
#include <vector>

#include "clearx/strategies.hpp"
#include "clearx/types.hpp"

namespace clearx {

// Small named instances used by the CLI and the test suites. Where only a
// beta ordering matters, values sit on a 0.1, 0.2, ... grid preserving it.
struct DemoEntry {
  std::string name;
  std::string description;
  Instance instance;
};

const std::vector<DemoEntry>& demo_catalog();
const DemoEntry* find_demo(const std::string& name);

// Co-profile for the dsic4 deviation demo under the single-exchange
// protocol: agent 0 rejects exchanges with agent 3 and accepts the rest,
// agents 2 and 3 accept everything. The focal agent (1) is enumerated over.
StrategyProfile dsic4_deviation_co_profile(const Instance& inst);

}  // namespace clearx
