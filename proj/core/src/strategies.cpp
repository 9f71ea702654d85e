#include "clearx/strategies.hpp"

namespace clearx {

Strategy accepting() {
  return Strategy{"accepting",
                  [](const Exchange&, const StrategyContext&) { return true; }};
}

Strategy reject_all() {
  return Strategy{"reject_all",
                  [](const Exchange&, const StrategyContext&) { return false; }};
}

Strategy scripted(ScriptMap decisions) {
  auto map = std::make_shared<ScriptMap>(std::move(decisions));
  return Strategy{"scripted",
                  [map](const Exchange& e, const StrategyContext& ctx) {
                    auto it = map->find({ctx.round, e.canonical()});
                    return it == map->end() ? true : it->second;
                  }};
}

Strategy from_script(const DeviationScript& script) {
  auto bits = std::make_shared<std::vector<std::uint8_t>>(script.bits);
  auto cursor = std::make_shared<std::size_t>(0);
  return Strategy{"script",
                  [bits, cursor](const Exchange&, const StrategyContext&) {
                    if (*cursor >= bits->size()) return true;
                    return (*bits)[(*cursor)++] != 0;
                  }};
}

StrategyProfile uniform_profile(int num_agents, const Strategy& s) {
  return StrategyProfile(static_cast<std::size_t>(num_agents), s);
}

}  // namespace clearx
