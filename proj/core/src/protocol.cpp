#include "clearx/protocol.hpp"

#include <algorithm>
#include <sstream>

namespace clearx {

std::vector<std::pair<AgentId, AgentId>> beta_ordered_pairs(
    const Instance& inst, const ParticipantSet& participants) {
  std::vector<std::pair<AgentId, AgentId>> pairs;
  const auto& m = participants.members;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b)
      pairs.emplace_back(m[a], m[b]);
  std::sort(pairs.begin(), pairs.end(),
            [&](const auto& p, const auto& q) {
              double bp = inst.beta_at(p.first, p.second);
              double bq = inst.beta_at(q.first, q.second);
              if (bp != bq) return bp < bq;
              return p < q;  // lexicographic tie-break on (i,j)
            });
  return pairs;
}

void RoundState::init(const Instance& instance, const Allocation& prior_alloc,
                      const ExchangeSet& rejected_set) {
  inst = &instance;
  rejected = &rejected_set;
  prior = prior_alloc;
  working = prior_alloc;
  proposals.clear();
  deliver.assign(prior.data.size(), -1);
  journal.clear();
  granted.clear();
}

void RoundState::set_cell(AgentId a, GoodId g, std::uint8_t val, AgentId src) {
  std::size_t c = working.cell(a, g);
  JournalOp op;
  op.kind = JournalOp::kCell;
  op.agent = a;
  op.good = g;
  op.old_data = working.data[c];
  op.old_source = working.source[c];
  journal.push_back(op);
  if (op.old_data == 0 && val == 1) ++granted[{a, g}];
  working.data[c] = val;
  working.source[c] = src;
}

void RoundState::set_deliver(AgentId a, GoodId g, int idx) {
  std::size_t c = working.cell(a, g);
  JournalOp op;
  op.kind = JournalOp::kDeliver;
  op.agent = a;
  op.good = g;
  op.old_deliver = deliver[c];
  journal.push_back(op);
  deliver[c] = idx;
}

void RoundState::push_proposal(const Exchange& e) {
  JournalOp op;
  op.kind = JournalOp::kPush;
  journal.push_back(op);
  proposals.push_back(e);
}

void RoundState::replace_proposal(int idx, const Exchange& e) {
  JournalOp op;
  op.kind = JournalOp::kReplace;
  op.idx = idx;
  op.old_exchange = proposals[idx];
  journal.push_back(op);
  proposals[idx] = e;
}

void RoundState::rollback(std::size_t mark) {
  while (journal.size() > mark) {
    const JournalOp op = journal.back();
    journal.pop_back();
    switch (op.kind) {
      case JournalOp::kCell: {
        std::size_t c = working.cell(op.agent, op.good);
        if (working.data[c] == 1 && op.old_data == 0) {
          auto it = granted.find({op.agent, op.good});
          if (it != granted.end() && --it->second == 0) granted.erase(it);
        }
        working.data[c] = op.old_data;
        working.source[c] = op.old_source;
        break;
      }
      case JournalOp::kDeliver:
        deliver[working.cell(op.agent, op.good)] = op.old_deliver;
        break;
      case JournalOp::kPush:
        proposals.pop_back();
        break;
      case JournalOp::kReplace:
        proposals[op.idx] = op.old_exchange;
        break;
    }
  }
}

void RoundState::schedule(AgentId i, GoodId r, AgentId j, GoodId s) {
  int idx = static_cast<int>(proposals.size());
  push_proposal(Exchange{i, r, j, s}.canonical());
  set_cell(j, r, 1, i);
  set_deliver(j, r, idx);
  set_cell(i, s, 1, j);
  set_deliver(i, s, idx);
}

int RoundState::delivery_index(AgentId receiver, GoodId good,
                               const ProtocolConfig& cfg) const {
  if (cfg.opt_source_encoding) return deliver[working.cell(receiver, good)];
  for (std::size_t k = 0; k < proposals.size(); ++k) {
    const Exchange& e = proposals[k];
    if (e.involves(receiver) && e.received_by(receiver) == good)
      return static_cast<int>(k);
  }
  return -1;
}

namespace {

std::vector<int> agent_counts(const Allocation& a) {
  std::vector<int> c(a.num_agents);
  for (AgentId i = 0; i < a.num_agents; ++i) c[i] = a.row_count(i);
  return c;
}

PairCounts proposal_pair_counts(const std::vector<Exchange>& proposals) {
  return count_pairs(proposals);
}

GoodId retrospect_impl(RoundState& st, AgentId recv, AgentId giver,
                       std::set<AgentId> examined, std::set<AgentId>* failed,
                       const ProtocolConfig& cfg, int depth) {
  RetroStats* stats = cfg.stats;
  std::vector<int> pre_counts;
  PairCounts pre_pairs;
  std::vector<std::uint8_t> pre_data;
  std::size_t pre_journal = st.journal.size();
  if (stats) {
    ++stats->calls;
    pre_counts = agent_counts(st.working);
    pre_pairs = proposal_pair_counts(st.proposals);
    pre_data = st.working.data;
    if (depth > st.inst->num_agents)
      stats->violation("recursion depth exceeds agent count");
  }

  auto fail_return = [&]() -> GoodId {
    if (stats) {
      ++stats->failures;
      if (st.journal.size() != pre_journal || st.working.data != pre_data)
        stats->violation("state not restored after failed call");
    }
    return kRetroFail;
  };
  auto success_return = [&](GoodId s) -> GoodId {
    if (stats) {
      ++stats->successes;
      if (st.prior.holds(recv, s) || !st.inst->holds(giver, s) ||
          st.working.holds(recv, s))
        stats->violation("returned good violates availability contract");
      if (agent_counts(st.working) != pre_counts)
        stats->violation("per-agent scheduled counts changed");
      if (proposal_pair_counts(st.proposals) != pre_pairs)
        stats->violation("per-pair exchange counts changed");
    }
    return s;
  };

  if (cfg.opt_skip_full_receivers && st.working.row_full(recv))
    return fail_return();

  for (GoodId s = 0; s < st.inst->num_goods; ++s) {
    if (st.prior.holds(recv, s) || !st.inst->holds(giver, s)) continue;
    if (!st.working.holds(recv, s)) return success_return(s);
    // recv is already scheduled to get s this round; try to reroute that
    // delivery so the slot opens up.
    int idx = st.delivery_index(recv, s, cfg);
    if (idx < 0) {
      if (stats) stats->violation("scheduled good without a delivering exchange");
      continue;
    }
    const Exchange cur = st.proposals[idx];
    AgentId jp = cur.partner_of(recv);
    GoodId rp = cur.given_by(recv);
    if (examined.count(jp)) continue;
    if (cfg.opt_skip_failed_givers && failed && failed->count(jp)) continue;
    std::set<AgentId> grown = examined;
    grown.insert(jp);
    std::size_t mark = st.checkpoint();
    GoodId sp = retrospect_impl(st, recv, jp, std::move(grown), failed, cfg,
                                depth + 1);
    if (sp != kRetroFail &&
        !st.rejected->count(Exchange{recv, rp, jp, sp}.canonical())) {
      st.set_cell(recv, sp, 1, jp);
      st.set_deliver(recv, sp, idx);
      st.set_cell(recv, s, 0, kNoAgent);
      st.set_deliver(recv, s, -1);
      st.replace_proposal(idx, Exchange{recv, rp, jp, sp}.canonical());
      return success_return(s);
    }
    st.rollback(mark);
    if (sp == kRetroFail && failed) failed->insert(jp);
  }
  return fail_return();
}

}  // namespace

GoodId retrospect(RoundState& st, AgentId receiver, AgentId giver,
                  std::set<AgentId> examined, const ProtocolConfig& cfg) {
  std::set<AgentId> failed;
  return retrospect_impl(st, receiver, giver, std::move(examined), &failed,
                         cfg, 1);
}

ProposalBuild build_proposals(const Instance& inst,
                              const ParticipantSet& participants,
                              const Allocation& prior,
                              const ExchangeSet& rejected,
                              const ProtocolConfig& cfg) {
  RoundState st;
  st.init(inst, prior, rejected);
  for (auto [i, j] : beta_ordered_pairs(inst, participants)) {
    // When a repair freed a slot but every candidate pair turns out to be
    // rejected, the repair must be undone too, or the freed good would end
    // the round undelivered.
    bool retro_pending = false;
    std::size_t retro_mark = 0;
    while (true) {
      std::vector<GoodId> dji, dij;  // goods j could get from i, and i from j
      for (GoodId r = 0; r < inst.num_goods; ++r) {
        if (!st.working.holds(j, r) && inst.holds(i, r)) dji.push_back(r);
        if (!st.working.holds(i, r) && inst.holds(j, r)) dij.push_back(r);
      }
      if (!dji.empty() && !dij.empty()) {
        bool scheduled = false;
        for (GoodId r : dji) {
          for (GoodId s : dij) {
            if (!rejected.count(Exchange{i, r, j, s}.canonical())) {
              st.schedule(i, r, j, s);
              scheduled = true;
              break;
            }
          }
          if (scheduled) break;
        }
        if (!scheduled) {
          if (retro_pending) st.rollback(retro_mark);
          break;
        }
        retro_pending = false;
        continue;
      }
      if (!cfg.retrospect_enabled) break;
      std::size_t mark = st.checkpoint();
      bool ok = true;
      if (dji.empty()) ok = retrospect(st, j, i, {i, j}, cfg) != kRetroFail;
      if (ok && dij.empty()) ok = retrospect(st, i, j, {i, j}, cfg) != kRetroFail;
      if (!ok) {
        st.rollback(mark);
        break;
      }
      retro_mark = mark;
      retro_pending = true;
    }
  }
  if (cfg.stats) {
    // Every good granted during planning must still be delivered by the
    // final proposal set (possibly by a different giver than at first).
    ++cfg.stats->retention_checks;
    for (const auto& [cell, count] : st.granted) {
      if (count <= 0) continue;
      auto [a, g] = cell;
      int idx = st.delivery_index(a, g, cfg);
      bool ok = st.working.holds(a, g) && idx >= 0 &&
                st.proposals[idx].received_by(a) == g;
      if (!ok) {
        std::ostringstream os;
        os << "good " << g << " granted to agent " << a
           << " is not delivered by the final proposal set";
        cfg.stats->violation(os.str());
      }
    }
  }
  return ProposalBuild{st.proposals, st.working};
}

std::vector<DecisionPair> collect_decisions(
    const std::vector<Exchange>& proposals, const StrategyProfile& profile,
    const ParticipantSet& participants, int round,
    const std::vector<RoundRecord>& history) {
  std::vector<DecisionPair> out(proposals.size());
  for (std::size_t k = 0; k < proposals.size(); ++k) {
    const Exchange& e = proposals[k];
    StrategyContext ctx;
    ctx.round = round;
    ctx.participants = &participants;
    ctx.proposals = &proposals;
    ctx.history = &history;
    ctx.self = e.giver_a;
    out[k].a = profile.at(e.giver_a).decide(e, ctx);
    ctx.self = e.giver_b;
    out[k].b = profile.at(e.giver_b).decide(e, ctx);
  }
  return out;
}

namespace {

Trace finalize(const Instance& inst, const ParticipantSet& participants,
               Trace tr, Allocation final_alloc, ExchangeSet rejected) {
  tr.participants = participants;
  tr.final_allocation = std::move(final_alloc);
  tr.rejected = std::move(rejected);
  tr.pair_counts = count_pairs(tr.executed_exchanges());
  tr.utilities = utilities(inst, tr.final_allocation);
  return tr;
}

}  // namespace

Trace run(const Instance& inst, const ParticipantSet& participants,
          const StrategyProfile& profile, const ProtocolConfig& cfg) {
  Allocation cur = Allocation::initial_of(inst);
  ExchangeSet rejected;
  Trace tr;
  // Each non-final round rejects at least one never-reproposed exchange, so
  // this bound is never hit; it guards against bookkeeping bugs only.
  int max_rounds =
      static_cast<int>(feasible_exchanges(inst, participants).size()) + 2;
  for (int round = 0; round < max_rounds; ++round) {
    ProposalBuild built = build_proposals(inst, participants, cur, rejected, cfg);
    auto decisions =
        collect_decisions(built.proposals, profile, participants, round, tr.rounds);
    RoundRecord rec;
    rec.proposals = built.proposals;
    bool all_accepted = true;
    for (std::size_t k = 0; k < rec.proposals.size(); ++k) {
      bool exec = decisions[k].a && decisions[k].b;
      rec.accept_a.push_back(decisions[k].a);
      rec.accept_b.push_back(decisions[k].b);
      rec.executed.push_back(exec);
      if (exec) {
        apply_exchange(cur, rec.proposals[k]);
      } else {
        rejected.insert(rec.proposals[k].canonical());
        all_accepted = false;
      }
    }
    tr.rounds.push_back(std::move(rec));
    if (all_accepted) break;
  }
  return finalize(inst, participants, std::move(tr), std::move(cur),
                  std::move(rejected));
}

Trace run_sac(const Instance& inst, const ParticipantSet& participants,
              const StrategyProfile& profile) {
  Allocation cur = Allocation::initial_of(inst);
  ExchangeSet rejected;
  Trace tr;
  int guard =
      2 * static_cast<int>(feasible_exchanges(inst, participants).size()) + 2;
  for (int round = 0; round < guard; ++round) {
    const Exchange* best = nullptr;
    std::vector<Exchange> bene = beneficial_exchanges(inst, cur, participants);
    for (const Exchange& e : bene) {
      if (rejected.count(e)) continue;
      if (!best) {
        best = &e;
        continue;
      }
      double be = inst.beta_at(e.giver_a, e.giver_b);
      double bb = inst.beta_at(best->giver_a, best->giver_b);
      if (be < bb || (be == bb && e < *best)) best = &e;
    }
    if (!best) break;
    std::vector<Exchange> proposals{*best};
    auto decisions =
        collect_decisions(proposals, profile, participants, round, tr.rounds);
    RoundRecord rec;
    rec.proposals = proposals;
    bool exec = decisions[0].a && decisions[0].b;
    rec.accept_a.push_back(decisions[0].a);
    rec.accept_b.push_back(decisions[0].b);
    rec.executed.push_back(exec);
    if (exec)
      apply_exchange(cur, proposals[0]);
    else
      rejected.insert(proposals[0].canonical());
    tr.rounds.push_back(std::move(rec));
  }
  return finalize(inst, participants, std::move(tr), std::move(cur),
                  std::move(rejected));
}

}  // namespace clearx
