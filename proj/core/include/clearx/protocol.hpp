#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "clearx/model.hpp"
#include "clearx/strategies.hpp"
#include "clearx/trace.hpp"
#include "clearx/types.hpp"

namespace clearx {

inline constexpr GoodId kRetroFail = -1;

// Instrumentation sink for the repair subroutine's invariants. When attached
// via ProtocolConfig::stats, every retrospect call is snapshot-checked:
// termination depth, per-agent scheduled-good counts, per-pair exchange
// counts, validity of the returned good, clean rollback on failure, and the
// end-of-round check that every good scheduled during the round is still
// delivered by the final proposal set.
struct RetroStats {
  long long calls = 0;
  long long successes = 0;
  long long failures = 0;
  long long retention_checks = 0;
  long long violations = 0;
  std::vector<std::string> reports;  // capped

  void violation(const std::string& what) {
    ++violations;
    if (reports.size() < 20) reports.push_back(what);
  }
};

struct ProtocolConfig {
  bool retrospect_enabled = true;
  // Speedups that must not change behavior: O(1) delivery lookup through the
  // source-annotated allocation, skipping repair for receivers whose row is
  // already full, and skipping givers that already failed within the same
  // top-level repair call.
  bool opt_source_encoding = false;
  bool opt_skip_full_receivers = false;
  bool opt_skip_failed_givers = false;
  RetroStats* stats = nullptr;

  static ProtocolConfig all_opts() {
    ProtocolConfig c;
    c.opt_source_encoding = true;
    c.opt_skip_full_receivers = true;
    c.opt_skip_failed_givers = true;
    return c;
  }
};

// Mutable state while one round's proposal set is being built. All writes go
// through journaling mutators so any suffix of the work can be rolled back.
struct RoundState {
  const Instance* inst = nullptr;
  const ExchangeSet* rejected = nullptr;
  Allocation prior;    // allocation entering the round
  Allocation working;  // allocation if everything pending is accepted
  std::vector<Exchange> proposals;
  std::vector<int> deliver;  // (agent, good) -> index into proposals, or -1

  struct JournalOp {
    enum Kind { kCell, kDeliver, kPush, kReplace } kind;
    AgentId agent = 0;
    GoodId good = 0;
    std::uint8_t old_data = 0;
    AgentId old_source = kNoAgent;
    int old_deliver = -1;
    int idx = 0;
    Exchange old_exchange{};
  };
  std::vector<JournalOp> journal;
  // Receive-cells granted this round, counted so rollbacks cancel exactly.
  std::map<std::pair<AgentId, GoodId>, int> granted;

  void init(const Instance& instance, const Allocation& prior_alloc,
            const ExchangeSet& rejected_set);

  std::size_t checkpoint() const { return journal.size(); }
  void rollback(std::size_t mark);

  void set_cell(AgentId a, GoodId g, std::uint8_t val, AgentId src);
  void set_deliver(AgentId a, GoodId g, int idx);
  void push_proposal(const Exchange& e);
  void replace_proposal(int idx, const Exchange& e);

  // Schedule ((i,r),(j,s)): i gives r to j, j gives s to i.
  void schedule(AgentId i, GoodId r, AgentId j, GoodId s);

  // Index of the pending proposal via which `receiver` gets `good`. The slow
  // path scans the proposal list; with opt_source_encoding the annotated
  // allocation pinpoints the giver first.
  int delivery_index(AgentId receiver, GoodId good,
                     const ProtocolConfig& cfg) const;
};

struct ProposalBuild {
  std::vector<Exchange> proposals;
  Allocation working;
};

// One planning pass (lines 3-22 of the round loop): iterate agent pairs in
// increasing beta, greedily schedule the lexicographically smallest
// unrejected (r,s), and call retrospect to free up slots when a demand set
// is empty.
ProposalBuild build_proposals(const Instance& inst,
                              const ParticipantSet& participants,
                              const Allocation& prior,
                              const ExchangeSet& rejected,
                              const ProtocolConfig& cfg);

// The recursive repair subroutine. Tries to free a good that `giver` could
// supply to `receiver`, rewiring already-scheduled deliveries if necessary.
// Returns the freed good or kRetroFail (state untouched on failure).
GoodId retrospect(RoundState& st, AgentId receiver, AgentId giver,
                  std::set<AgentId> examined, const ProtocolConfig& cfg);

// Ask each proposal's two givers for a decision. Only the two agents named
// in a proposal are consulted about it.
struct DecisionPair {
  bool a = true;
  bool b = true;
};
std::vector<DecisionPair> collect_decisions(
    const std::vector<Exchange>& proposals, const StrategyProfile& profile,
    const ParticipantSet& participants, int round,
    const std::vector<RoundRecord>& history);

// Full protocol run: rounds of build/decide/apply until a round's proposals
// (possibly none) are all accepted.
Trace run(const Instance& inst, const ParticipantSet& participants,
          const StrategyProfile& profile, const ProtocolConfig& cfg = {});

// Reference single-exchange protocol: each round proposes the one remaining
// beneficial unrejected exchange of minimal beta (lexicographic tie-break);
// stops when none is left.
Trace run_sac(const Instance& inst, const ParticipantSet& participants,
              const StrategyProfile& profile);

// Agent pairs (i,j), i<j, sorted by (beta_ij, i, j).
std::vector<std::pair<AgentId, AgentId>> beta_ordered_pairs(
    const Instance& inst, const ParticipantSet& participants);

}  // namespace clearx
