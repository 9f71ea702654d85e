#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clearx/engine.hpp"

namespace clearx {

inline constexpr double kUtilityTol = 1e-9;

struct CheckResult {
  bool pass = false;
  std::string detail;
};

// Pass iff every exchange still beneficial at the trace's final allocation
// was rejected during the run (empty set under all-accepting play).
CheckResult check_stability(const Instance& inst, const Trace& trace,
                            const ParticipantSet& participants);

// Pass iff accepting everything is at least as good for `focal` as every
// accept/reject deviation path, others playing the co-profile (accepting by
// default).
struct NicResult {
  bool pass = false;
  double accepting_utility = 0.0;
  double best_deviation_utility = 0.0;
  DeviationScript best_deviation;
  std::string detail;
};
NicResult check_nic(const Instance& inst, const ParticipantSet& participants,
                    AgentId focal, const ProtocolConfig& cfg = {},
                    const ExploreOptions& options = {});

// Pass iff accepting everything maximizes the number of focal exchanges
// with beta <= beta_prime over all deviation paths.
CheckResult check_betagood(const Instance& inst,
                           const ParticipantSet& participants, AgentId focal,
                           double beta_prime, const ProtocolConfig& cfg = {},
                           const ExploreOptions& options = {});

// Participation rationality: joining any accepting coalition is at least as
// good as staying out of it.
struct IrResult {
  bool pass = false;
  double min_margin = 0.0;        // min over subsets of u_in - u_out
  std::vector<AgentId> worst_subset;
  double full_margin = 0.0;       // margin when all other agents take part
  std::string detail;
};
IrResult check_ir(const Instance& inst, AgentId focal,
                  const ProtocolConfig& cfg = {},
                  std::size_t max_subsets = std::size_t{1} << 20);

// Difference analysis between the runs with and without the focal agent
// (both all-accepting). Vertices are (agent, acquired good); each executed
// exchange contributes one edge per run it appears in. Components touching
// focal vertices must be simple paths with strictly alternating labels
// starting at an in-run edge at focal; their per-class deltas sum to
// u_in - u_out. All other components are "untracked" and must contribute
// the same per-pair exchange counts to both runs.
enum class PathClass { kT1, kT2, kT3 };

struct TrackedPath {
  std::vector<std::pair<AgentId, GoodId>> vertices;
  std::vector<std::uint8_t> edge_in_e;  // 1 = with-focal run, 0 = without
  PathClass cls = PathClass::kT1;
  double delta = 0.0;
};

struct Decomposition {
  std::vector<TrackedPath> paths;
  PairCounts untracked_e;
  PairCounts untracked_ep;
  double u_in = 0.0;
  double u_out = 0.0;
  double delta_sum = 0.0;
  bool structure_ok = false;
  bool counts_ok = false;
  bool reconciled = false;
  std::string report;
  bool pass() const { return structure_ok && counts_ok && reconciled; }
};

Decomposition tracked_decomposition(const Instance& inst,
                                    const ParticipantSet& others,
                                    AgentId focal,
                                    const ProtocolConfig& cfg = {});

// Low/high externality classification from the per-agent slacks
// 1 - sum of betas towards the other participants.
enum class CoalitionClass { kLec, kHec, kNeither };

struct CoalitionReport {
  CoalitionClass cls = CoalitionClass::kNeither;
  std::vector<std::pair<AgentId, double>> slacks;
};
CoalitionReport classify_coalition(const Instance& inst,
                                   const ParticipantSet& participants);

// Pareto-efficiency check of `alloc`.
//   kBruteAdded: search allocations y >= initial cellwise (goods only added)
//   kBruteFull:  search every binary allocation
//   kLecShortcut: pass iff some agent holds every circulating good (valid
//                 on low-externality coalitions)
enum class ParetoMode { kBruteAdded, kBruteFull, kLecShortcut };

struct ParetoResult {
  bool pass = false;
  std::optional<Allocation> witness;  // a dominating allocation, if found
  std::string detail;
};
ParetoResult check_pareto(const Instance& inst, const Allocation& alloc,
                          ParetoMode mode = ParetoMode::kBruteAdded,
                          std::size_t budget = std::size_t{1} << 20);

// Pass iff some participant ends the run holding every good.
CheckResult check_conjecture(const Trace& trace);

// Triples (i, j, k) with beta_ij < beta_ik such that an (i,k) proposal sits
// strictly above an (i,j) proposal somewhere in the tree.
struct InversionPair {
  AgentId i = 0, j = 0, k = 0;
  int ancestor_node = -1;
  int descendant_node = -1;
};
std::vector<InversionPair> find_inversion_pairs(const ProtocolTree& tree,
                                                const Instance& inst);

// Runs the protocol on the reported allocation (true one with some goods
// hidden by one agent) and evaluates everyone's TRUE utilities; a received
// copy of a hidden good collapses with the original.
struct MisreportReport {
  double truthful_utility = 0.0;
  double misreport_utility = 0.0;
  std::vector<double> truthful_utilities;
  std::vector<double> misreport_utilities;
  std::vector<Exchange> misreport_executed;
};
MisreportReport misreport_demo(const Instance& true_instance, AgentId agent,
                               const std::vector<GoodId>& hidden,
                               const ProtocolConfig& cfg = {});

// Why no one-round protocol can be both stable and NIC on an instance where
// one agent is wanted by several others: proposing every feasible exchange
// lets that agent gain by rejecting one; proposing fewer leaves an
// unrejected beneficial exchange if the single proposal is rejected.
struct SingleRoundReport {
  AgentId overloaded_agent = kNoAgent;  // agent on >= 2 feasible exchanges
  double accept_all_utility = 0.0;
  double best_rejection_utility = 0.0;
  double rejection_gain = 0.0;  // > 0 breaks NIC for the propose-all planner
  std::optional<Exchange> leftover;  // unrejected beneficial exchange in the
                                     // propose-one-and-rejected scenario
  std::string detail;
};
SingleRoundReport single_round_report(const Instance& inst);

}  // namespace clearx
