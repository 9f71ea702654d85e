#pragma once

#include <map>
#include <utility>
#include <vector>

#include "clearx/types.hpp"

namespace clearx {

// What happened in one proposal round: the scheduled exchanges in the order
// the planner produced them, and each giver's accept/reject bit.
struct RoundRecord {
  std::vector<Exchange> proposals;
  std::vector<std::uint8_t> accept_a;  // decision of giver_a, per proposal
  std::vector<std::uint8_t> accept_b;  // decision of giver_b
  std::vector<std::uint8_t> executed;  // accept_a && accept_b
};

using PairCounts = std::map<std::pair<AgentId, AgentId>, int>;

// Full record of a run. utilities covers every agent of the instance, not
// just participants.
struct Trace {
  ParticipantSet participants;
  std::vector<RoundRecord> rounds;
  Allocation final_allocation;
  ExchangeSet rejected;  // state of R at termination
  PairCounts pair_counts;
  std::vector<double> utilities;

  std::vector<Exchange> executed_exchanges() const {
    std::vector<Exchange> out;
    for (const auto& rd : rounds)
      for (std::size_t k = 0; k < rd.proposals.size(); ++k)
        if (rd.executed[k]) out.push_back(rd.proposals[k]);
    return out;
  }
  int total_proposals() const {
    int n = 0;
    for (const auto& rd : rounds) n += static_cast<int>(rd.proposals.size());
    return n;
  }
  int rejection_count() const {
    int n = 0;
    for (const auto& rd : rounds)
      for (std::uint8_t e : rd.executed) n += e ? 0 : 1;
    return n;
  }
};

inline PairCounts count_pairs(const std::vector<Exchange>& executed) {
  PairCounts pc;
  for (const Exchange& e : executed) {
    auto key = std::minmax(e.giver_a, e.giver_b);
    ++pc[{key.first, key.second}];
  }
  return pc;
}

}  // namespace clearx
