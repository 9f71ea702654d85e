#include "clearx/engine.hpp"

namespace clearx {

Trace execute(const Instance& inst, const ParticipantSet& participants,
              const StrategyProfile& profile, const ProtocolConfig& cfg,
              ProtocolKind protocol) {
  return protocol == ProtocolKind::kClear
             ? run(inst, participants, profile, cfg)
             : run_sac(inst, participants, profile);
}

std::vector<DeviationOutcome> explore_focal_tree(
    const Instance& inst, const ParticipantSet& participants, AgentId focal,
    const ProtocolConfig& cfg, const ExploreOptions& options) {
  StrategyProfile base;
  if (options.co_profile)
    base = *options.co_profile;
  else
    base = uniform_profile(inst.num_agents, accepting());

  std::vector<DeviationOutcome> out;
  // Each pending prefix either is empty or ends in a reject; the tail is
  // filled with accepts. Branching on every accept position enumerates each
  // realized bit string exactly once.
  std::vector<std::vector<std::uint8_t>> pending{{}};
  while (!pending.empty()) {
    std::vector<std::uint8_t> prefix = std::move(pending.back());
    pending.pop_back();

    StrategyProfile profile = base;
    profile[focal] = from_script(DeviationScript{prefix});
    Trace tr = execute(inst, participants, profile, cfg, options.protocol);

    int decisions = 0;
    DeviationOutcome o;
    for (const auto& rd : tr.rounds) {
      for (std::size_t k = 0; k < rd.proposals.size(); ++k) {
        const Exchange& e = rd.proposals[k];
        if (!e.involves(focal)) continue;
        ++decisions;
        if (rd.executed[k])
          o.exchanges_involving_focal.emplace_back(
              e.partner_of(focal),
              inst.beta_at(e.giver_a, e.giver_b));
      }
    }
    o.script.bits = prefix;
    o.script.bits.resize(static_cast<std::size_t>(decisions), 1);
    o.utility = tr.utilities[focal];
    out.push_back(std::move(o));

    for (int p = static_cast<int>(prefix.size()); p < decisions; ++p) {
      std::vector<std::uint8_t> child = prefix;
      child.resize(static_cast<std::size_t>(p), 1);
      child.push_back(0);
      pending.push_back(std::move(child));
    }
    if (out.size() + pending.size() > options.max_paths)
      throw BudgetExceeded("deviation path budget exceeded");
  }
  return out;
}

namespace {

int build_tree_node(ProtocolTree& tree, ProtocolKind protocol,
                    const Instance& inst, const ParticipantSet& participants,
                    const ProtocolConfig& cfg, Allocation alloc,
                    ExchangeSet rejected, bool terminated, int parent,
                    std::size_t max_nodes) {
  if (tree.nodes.size() >= max_nodes)
    throw BudgetExceeded("protocol tree node budget exceeded");
  int id = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  tree.nodes[id].parent = parent;
  tree.nodes[id].allocation = alloc;
  if (terminated) return id;

  std::vector<Exchange> proposals;
  if (protocol == ProtocolKind::kClear) {
    proposals = build_proposals(inst, participants, alloc, rejected, cfg).proposals;
  } else {
    const Exchange* best = nullptr;
    std::vector<Exchange> bene = beneficial_exchanges(inst, alloc, participants);
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
    if (best) proposals.push_back(*best);
  }
  tree.nodes[id].proposals = proposals;
  if (proposals.empty()) return id;

  std::size_t n = proposals.size();
  std::vector<int> children(std::size_t{1} << n, -1);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Allocation next = alloc;
    ExchangeSet next_rejected = rejected;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k))
        apply_exchange(next, proposals[k]);
      else
        next_rejected.insert(proposals[k].canonical());
    }
    bool all_accepted = mask + 1 == (std::size_t{1} << n);
    // The main protocol stops as soon as a whole round is accepted; the
    // single-exchange reference protocol keeps going until nothing is left.
    bool child_terminal = protocol == ProtocolKind::kClear && all_accepted;
    children[mask] =
        build_tree_node(tree, protocol, inst, participants, cfg,
                        std::move(next), std::move(next_rejected),
                        child_terminal, id, max_nodes);
  }
  tree.nodes[id].children = std::move(children);
  return id;
}

}  // namespace

ProtocolTree build_protocol_tree(ProtocolKind protocol, const Instance& inst,
                                 const ParticipantSet& participants,
                                 const ProtocolConfig& cfg,
                                 std::size_t max_nodes) {
  ProtocolTree tree;
  build_tree_node(tree, protocol, inst, participants, cfg,
                  Allocation::initial_of(inst), {}, false, -1, max_nodes);
  return tree;
}

std::vector<ParticipationResult> participation_battery(
    const Instance& inst, AgentId focal, const ProtocolConfig& cfg,
    std::size_t max_subsets) {
  std::vector<AgentId> others;
  for (AgentId a = 0; a < inst.num_agents; ++a)
    if (a != focal) others.push_back(a);
  if (others.size() >= 8 * sizeof(std::size_t) ||
      (std::size_t{1} << others.size()) > max_subsets)
    throw BudgetExceeded("participation subset budget exceeded");

  StrategyProfile profile = uniform_profile(inst.num_agents, accepting());
  std::vector<ParticipationResult> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
    ParticipationResult r;
    for (std::size_t k = 0; k < others.size(); ++k)
      if (mask & (std::size_t{1} << k)) r.others.push_back(others[k]);
    std::vector<AgentId> with = r.others;
    with.push_back(focal);
    Trace in_tr = run(inst, ParticipantSet::of(with), profile, cfg);
    Trace out_tr = run(inst, ParticipantSet::of(r.others), profile, cfg);
    r.u_in = in_tr.utilities[focal];
    r.u_out = out_tr.utilities[focal];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace clearx
