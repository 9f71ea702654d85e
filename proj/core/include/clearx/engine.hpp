#pragma once

#include <utility>
#include <vector>

#include "clearx/protocol.hpp"

namespace clearx {

enum class ProtocolKind { kClear, kSac };

// Runs the chosen protocol and returns the full trace. Utilities cover every
// agent of the instance, participating or not.
Trace execute(const Instance& inst, const ParticipantSet& participants,
              const StrategyProfile& profile, const ProtocolConfig& cfg = {},
              ProtocolKind protocol = ProtocolKind::kClear);

// One terminal outcome of the focal agent's decision tree when everyone else
// plays a fixed profile.
struct DeviationOutcome {
  DeviationScript script;  // realized bits, padded with accepts
  double utility = 0.0;    // focal's utility at the terminal allocation
  // Executed exchanges the focal agent took part in: (partner, beta).
  std::vector<std::pair<AgentId, double>> exchanges_involving_focal;
};

struct ExploreOptions {
  ProtocolKind protocol = ProtocolKind::kClear;
  std::size_t max_paths = std::size_t{1} << 20;
  // Strategies for the non-focal agents; all-accepting when null.
  const StrategyProfile* co_profile = nullptr;
};

// Depth-first enumeration of every accept/reject path available to `focal`.
// The first returned outcome is the all-accepting path. Throws
// BudgetExceeded past options.max_paths outcomes.
std::vector<DeviationOutcome> explore_focal_tree(
    const Instance& inst, const ParticipantSet& participants, AgentId focal,
    const ProtocolConfig& cfg = {}, const ExploreOptions& options = {});

// Exhaustive game tree of a protocol: each node is a round's proposal set,
// each child corresponds to one accept/reject combination over it. Nodes
// with no proposals are terminal.
struct ProtocolTree {
  struct Node {
    std::vector<Exchange> proposals;
    Allocation allocation;      // allocation entering the node
    std::vector<int> children;  // size 2^|proposals|, indexed by accept mask
    int parent = -1;
    bool leaf() const { return proposals.empty(); }
  };
  std::vector<Node> nodes;  // nodes[0] is the root
};

ProtocolTree build_protocol_tree(ProtocolKind protocol, const Instance& inst,
                                 const ParticipantSet& participants,
                                 const ProtocolConfig& cfg = {},
                                 std::size_t max_nodes = std::size_t{1} << 20);

// For each subset of the other agents: focal's utility when joining them
// versus staying out while they run the protocol among themselves.
struct ParticipationResult {
  std::vector<AgentId> others;  // the subset, sorted
  double u_in = 0.0;
  double u_out = 0.0;
};

std::vector<ParticipationResult> participation_battery(
    const Instance& inst, AgentId focal, const ProtocolConfig& cfg = {},
    std::size_t max_subsets = std::size_t{1} << 20);

}  // namespace clearx
