#include "clearx/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace clearx {

CheckResult check_stability(const Instance& inst, const Trace& trace,
                            const ParticipantSet& participants) {
  for (const Exchange& e :
       beneficial_exchanges(inst, trace.final_allocation, participants)) {
    if (!trace.rejected.count(e.canonical()))
      return CheckResult{false, "unrejected beneficial exchange remains: " +
                                    to_string(e)};
  }
  return CheckResult{true, "every remaining beneficial exchange was rejected"};
}

NicResult check_nic(const Instance& inst, const ParticipantSet& participants,
                    AgentId focal, const ProtocolConfig& cfg,
                    const ExploreOptions& options) {
  auto outcomes = explore_focal_tree(inst, participants, focal, cfg, options);
  NicResult r;
  r.accepting_utility = outcomes.front().utility;  // first path accepts all
  r.best_deviation_utility = r.accepting_utility;
  for (const auto& o : outcomes) {
    if (o.utility > r.best_deviation_utility) {
      r.best_deviation_utility = o.utility;
      r.best_deviation = o.script;
    }
  }
  r.pass = r.accepting_utility >= r.best_deviation_utility - kUtilityTol;
  std::ostringstream os;
  os << "accepting " << r.accepting_utility << " vs best deviation "
     << r.best_deviation_utility << " over " << outcomes.size() << " paths";
  r.detail = os.str();
  return r;
}

CheckResult check_betagood(const Instance& inst,
                           const ParticipantSet& participants, AgentId focal,
                           double beta_prime, const ProtocolConfig& cfg,
                           const ExploreOptions& options) {
  auto outcomes = explore_focal_tree(inst, participants, focal, cfg, options);
  auto good_count = [&](const DeviationOutcome& o) {
    int c = 0;
    for (const auto& [partner, beta] : o.exchanges_involving_focal)
      if (beta <= beta_prime + 1e-12) ++c;
    return c;
  };
  int accepting = good_count(outcomes.front());
  for (const auto& o : outcomes) {
    int c = good_count(o);
    if (c > accepting) {
      std::ostringstream os;
      os << "a deviation path yields " << c << " exchanges with beta <= "
         << beta_prime << ", accepting yields " << accepting;
      return CheckResult{false, os.str()};
    }
  }
  return CheckResult{true, "accepting maximizes the low-beta exchange count"};
}

IrResult check_ir(const Instance& inst, AgentId focal,
                  const ProtocolConfig& cfg, std::size_t max_subsets) {
  auto battery = participation_battery(inst, focal, cfg, max_subsets);
  IrResult r;
  r.pass = true;
  bool first = true;
  for (const auto& entry : battery) {
    double margin = entry.u_in - entry.u_out;
    if (first || margin < r.min_margin) {
      r.min_margin = margin;
      r.worst_subset = entry.others;
      first = false;
    }
    if (entry.others.size() + 1 == static_cast<std::size_t>(inst.num_agents))
      r.full_margin = margin;
  }
  r.pass = r.min_margin >= -kUtilityTol;
  std::ostringstream os;
  os << "min margin " << r.min_margin << " over " << battery.size()
     << " subsets";
  r.detail = os.str();
  return r;
}

namespace {

struct DiffEdge {
  int u = 0, v = 0;   // vertex ids: agent * num_goods + good
  bool in_e = false;  // true: with-focal run, false: without
  Exchange ex;
};

}  // namespace

Decomposition tracked_decomposition(const Instance& inst,
                                    const ParticipantSet& others,
                                    AgentId focal, const ProtocolConfig& cfg) {
  Decomposition d;
  std::ostringstream report;

  std::vector<AgentId> with = others.members;
  with.push_back(focal);
  StrategyProfile profile = uniform_profile(inst.num_agents, accepting());
  Trace tr_in = run(inst, ParticipantSet::of(with), profile, cfg);
  Trace tr_out = run(inst, others, profile, cfg);
  d.u_in = tr_in.utilities[focal];
  d.u_out = tr_out.utilities[focal];

  const int m = inst.num_goods;
  auto vert = [m](AgentId a, GoodId g) { return a * m + g; };
  auto vert_agent = [m](int v) { return v / m; };
  auto vert_good = [m](int v) { return v % m; };

  std::vector<DiffEdge> edges;
  for (const Exchange& e : tr_in.executed_exchanges())
    edges.push_back(DiffEdge{vert(e.giver_a, e.good_b),
                             vert(e.giver_b, e.good_a), true, e});
  for (const Exchange& e : tr_out.executed_exchanges())
    edges.push_back(DiffEdge{vert(e.giver_a, e.good_b),
                             vert(e.giver_b, e.good_a), false, e});

  std::map<int, std::vector<int>> adj;  // vertex -> incident edge indices
  for (std::size_t k = 0; k < edges.size(); ++k) {
    adj[edges[k].u].push_back(static_cast<int>(k));
    adj[edges[k].v].push_back(static_cast<int>(k));
  }

  d.structure_ok = true;
  std::vector<bool> edge_seen(edges.size(), false);
  std::set<int> vertex_seen;
  for (const auto& [start_vertex, unused] : adj) {
    if (vertex_seen.count(start_vertex)) continue;
    // Collect the connected component.
    std::vector<int> comp_vertices;
    std::vector<int> comp_edges;
    std::vector<int> stack{start_vertex};
    vertex_seen.insert(start_vertex);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp_vertices.push_back(v);
      for (int ei : adj[v]) {
        if (edge_seen[ei]) continue;
        edge_seen[ei] = true;
        comp_edges.push_back(ei);
        int w = edges[ei].u == v ? edges[ei].v : edges[ei].u;
        if (!vertex_seen.count(w)) {
          vertex_seen.insert(w);
          stack.push_back(w);
        }
      }
    }

    bool touches_focal = false;
    for (int v : comp_vertices)
      if (vert_agent(v) == focal) touches_focal = true;

    if (!touches_focal) {
      for (int ei : comp_edges) {
        const Exchange& ex = edges[ei].ex;
        auto key = std::minmax(ex.giver_a, ex.giver_b);
        if (edges[ei].in_e)
          ++d.untracked_e[{key.first, key.second}];
        else
          ++d.untracked_ep[{key.first, key.second}];
      }
      continue;
    }

    // This component must be a simple path starting at a focal vertex with
    // a with-focal edge, labels strictly alternating.
    auto fail = [&](const std::string& why) {
      d.structure_ok = false;
      report << "component at vertex (" << vert_agent(start_vertex) << ","
             << vert_good(start_vertex) << "): " << why << "\n";
    };

    std::map<int, int> degree;
    for (int ei : comp_edges) {
      ++degree[edges[ei].u];
      ++degree[edges[ei].v];
    }
    std::vector<int> endpoints;
    bool degree_ok = true;
    for (const auto& [v, deg] : degree) {
      if (deg == 1) endpoints.push_back(v);
      if (deg > 2) degree_ok = false;
    }
    if (!degree_ok || endpoints.size() != 2 ||
        comp_edges.size() + 1 != comp_vertices.size()) {
      fail("not a simple path");
      continue;
    }
    int start = -1;
    for (int v : endpoints) {
      if (vert_agent(v) != focal) continue;
      int ei = adj[v][0];
      if (edges[ei].in_e) {
        start = v;
        break;
      }
    }
    if (start < 0) {
      fail("no focal endpoint with a with-focal first edge");
      continue;
    }

    TrackedPath path;
    std::set<int> used;
    int v = start;
    path.vertices.emplace_back(vert_agent(v), vert_good(v));
    bool expect_e = true;
    bool walk_ok = true;
    while (true) {
      int next_edge = -1;
      for (int ei : adj[v])
        if (!used.count(ei)) next_edge = ei;
      if (next_edge < 0) break;
      if (edges[next_edge].in_e != expect_e) {
        walk_ok = false;
        break;
      }
      used.insert(next_edge);
      path.edge_in_e.push_back(edges[next_edge].in_e);
      v = edges[next_edge].u == v ? edges[next_edge].v : edges[next_edge].u;
      path.vertices.emplace_back(vert_agent(v), vert_good(v));
      expect_e = !expect_e;
    }
    if (!walk_ok || used.size() != comp_edges.size()) {
      fail("edge labels do not alternate along the path");
      continue;
    }

    AgentId end_agent = path.vertices.back().first;
    bool last_in_e = path.edge_in_e.back();
    if (last_in_e && end_agent == focal) {
      path.cls = PathClass::kT3;
      path.delta = 2.0;
    } else if (last_in_e) {
      path.cls = PathClass::kT2;
      path.delta = 1.0 - inst.beta_at(focal, end_agent);
    } else if (end_agent != focal) {
      path.cls = PathClass::kT1;
      path.delta = 1.0 + inst.beta_at(focal, end_agent);
    } else {
      fail("path ends at focal with a without-focal edge");
      continue;
    }
    d.delta_sum += path.delta;
    d.paths.push_back(std::move(path));
  }

  d.counts_ok = d.untracked_e == d.untracked_ep;
  if (!d.counts_ok) report << "untracked per-pair counts differ\n";
  d.reconciled =
      std::abs(d.delta_sum - (d.u_in - d.u_out)) <= kUtilityTol;
  if (!d.reconciled)
    report << "delta sum " << d.delta_sum << " != u_in - u_out "
           << (d.u_in - d.u_out) << "\n";
  d.report = report.str();
  return d;
}

CoalitionReport classify_coalition(const Instance& inst,
                                   const ParticipantSet& participants) {
  CoalitionReport r;
  bool all_pos = true, all_nonpos = true;
  for (AgentId i : participants.members) {
    double slack = 1.0;
    for (AgentId j : participants.members)
      if (j != i) slack -= inst.beta_at(i, j);
    r.slacks.emplace_back(i, slack);
    if (slack <= 0.0) all_pos = false;
    if (slack > 0.0) all_nonpos = false;
  }
  if (all_pos)
    r.cls = CoalitionClass::kLec;
  else if (all_nonpos)
    r.cls = CoalitionClass::kHec;
  else
    r.cls = CoalitionClass::kNeither;
  return r;
}

ParetoResult check_pareto(const Instance& inst, const Allocation& alloc,
                          ParetoMode mode, std::size_t budget) {
  // Goods nobody holds initially can never circulate; they are excluded
  // from the added-goods search and the perfect-agent criterion.
  std::vector<bool> circulating(static_cast<std::size_t>(inst.num_goods), false);
  for (GoodId r = 0; r < inst.num_goods; ++r)
    for (AgentId i = 0; i < inst.num_agents; ++i)
      if (inst.holds(i, r)) circulating[static_cast<std::size_t>(r)] = true;

  if (mode == ParetoMode::kLecShortcut) {
    for (AgentId i = 0; i < inst.num_agents; ++i) {
      bool full = true;
      for (GoodId r = 0; r < inst.num_goods; ++r)
        if (circulating[static_cast<std::size_t>(r)] && !alloc.holds(i, r))
          full = false;
      if (full)
        return ParetoResult{true, std::nullopt,
                            "agent " + std::to_string(i) +
                                " holds all circulating goods"};
    }
    return ParetoResult{false, std::nullopt,
                        "no agent holds all circulating goods"};
  }

  // Cells free to vary: all of them in full-space mode, otherwise only the
  // empty cells of circulating goods (goods can only be added, and only
  // goods someone actually holds can be passed on).
  std::vector<std::size_t> free_cells;
  for (AgentId i = 0; i < inst.num_agents; ++i)
    for (GoodId r = 0; r < inst.num_goods; ++r)
      if (mode == ParetoMode::kBruteFull ||
          (!inst.holds(i, r) && circulating[static_cast<std::size_t>(r)]))
        free_cells.push_back(static_cast<std::size_t>(i) * inst.num_goods + r);
  if (free_cells.size() >= 8 * sizeof(std::size_t) ||
      (std::size_t{1} << free_cells.size()) > budget)
    throw BudgetExceeded("pareto search space exceeds budget");

  std::vector<double> base = utilities(inst, alloc);
  Allocation y = Allocation::initial_of(inst);
  for (std::size_t mask = 0; mask < (std::size_t{1} << free_cells.size());
       ++mask) {
    for (std::size_t k = 0; k < free_cells.size(); ++k)
      y.data[free_cells[k]] = (mask >> k) & 1 ? 1 : 0;
    std::vector<double> uy = utilities(inst, y);
    bool ge_all = true, gt_some = false;
    for (AgentId i = 0; i < inst.num_agents; ++i) {
      if (uy[i] < base[i] - kUtilityTol) ge_all = false;
      if (uy[i] > base[i] + kUtilityTol) gt_some = true;
    }
    if (ge_all && gt_some) {
      std::ostringstream os;
      os << "dominating allocation found (mask " << mask << ")";
      return ParetoResult{false, y, os.str()};
    }
  }
  return ParetoResult{true, std::nullopt, "no dominating allocation"};
}

CheckResult check_conjecture(const Trace& trace) {
  // Goods nobody among the participants holds can never circulate; the
  // claim is about the goods actually present. Holdings only grow, so the
  // final allocation determines that set.
  const Allocation& fin = trace.final_allocation;
  std::vector<GoodId> present;
  for (GoodId r = 0; r < fin.num_goods; ++r)
    for (AgentId i : trace.participants.members)
      if (fin.holds(i, r)) {
        present.push_back(r);
        break;
      }
  for (AgentId i : trace.participants.members) {
    bool full = true;
    for (GoodId r : present)
      if (!fin.holds(i, r)) {
        full = false;
        break;
      }
    if (full)
      return CheckResult{true, "agent " + std::to_string(i) +
                                   " holds every circulating good"};
  }
  return CheckResult{false, "no participant holds every circulating good"};
}

std::vector<InversionPair> find_inversion_pairs(const ProtocolTree& tree,
                                                const Instance& inst) {
  std::vector<InversionPair> out;
  std::set<std::tuple<AgentId, AgentId, AgentId>> seen;
  // (node id, agent pair) records along the current root path.
  std::vector<std::pair<int, std::pair<AgentId, AgentId>>> ancestors;

  auto scan = [&](auto&& self, int id) -> void {
    const auto& node = tree.nodes[id];
    for (const Exchange& e : node.proposals) {
      AgentId a = e.giver_a, b = e.giver_b;
      for (const auto& [anc_id, anc_pair] : ancestors) {
        auto [c, dd] = anc_pair;
        // shared agent i', current partner j', ancestral partner k'
        auto consider = [&](AgentId ip, AgentId jp, AgentId kp) {
          if (jp == kp) return;
          if (inst.beta_at(ip, jp) < inst.beta_at(ip, kp) &&
              !seen.count({ip, jp, kp})) {
            seen.insert({ip, jp, kp});
            out.push_back(InversionPair{ip, jp, kp, anc_id, id});
          }
        };
        if (a == c) consider(a, b, dd);
        if (a == dd) consider(a, b, c);
        if (b == c) consider(b, a, dd);
        if (b == dd) consider(b, a, c);
      }
    }
    if (node.children.empty()) return;
    for (const Exchange& e : node.proposals)
      ancestors.emplace_back(id, std::make_pair(e.giver_a, e.giver_b));
    for (int child : node.children)
      if (child >= 0) self(self, child);
    ancestors.resize(ancestors.size() - node.proposals.size());
  };
  if (!tree.nodes.empty()) scan(scan, 0);
  return out;
}

MisreportReport misreport_demo(const Instance& true_instance, AgentId agent,
                               const std::vector<GoodId>& hidden,
                               const ProtocolConfig& cfg) {
  for (GoodId g : hidden)
    if (!true_instance.holds(agent, g))
      throw std::invalid_argument(
          "cannot hide a good the agent does not hold");

  Instance reported = true_instance;
  for (GoodId g : hidden)
    reported.initial[reported.num_goods * static_cast<std::size_t>(agent) + g] = 0;

  ParticipantSet all = ParticipantSet::all(true_instance);
  StrategyProfile profile =
      uniform_profile(true_instance.num_agents, accepting());

  MisreportReport rep;
  Trace truthful = run(true_instance, all, profile, cfg);
  rep.truthful_utilities = truthful.utilities;
  rep.truthful_utility = truthful.utilities[agent];

  Trace misreport = run(reported, all, profile, cfg);
  rep.misreport_executed = misreport.executed_exchanges();
  // Replay the executed exchanges on the TRUE holdings; a received copy of a
  // hidden good collapses with the original.
  Allocation true_final = Allocation::initial_of(true_instance);
  for (const Exchange& e : rep.misreport_executed)
    apply_exchange(true_final, e);
  rep.misreport_utilities = utilities(true_instance, true_final);
  rep.misreport_utility = rep.misreport_utilities[agent];
  return rep;
}

SingleRoundReport single_round_report(const Instance& inst) {
  SingleRoundReport rep;
  ParticipantSet all = ParticipantSet::all(inst);
  std::vector<Exchange> feas = feasible_exchanges(inst, all);

  // Find an agent appearing in at least two feasible exchanges.
  std::map<AgentId, int> load;
  for (const Exchange& e : feas) {
    ++load[e.giver_a];
    ++load[e.giver_b];
  }
  for (const auto& [a, c] : load)
    if (c >= 2) rep.overloaded_agent = a;
  if (rep.overloaded_agent == kNoAgent) {
    rep.detail = "no agent takes part in two feasible exchanges";
    return rep;
  }

  // Scenario 1: the planner proposes every feasible exchange at once.
  Allocation accept_all = Allocation::initial_of(inst);
  for (const Exchange& e : feas) apply_exchange(accept_all, e);
  rep.accept_all_utility = utility(inst, accept_all, rep.overloaded_agent);
  rep.best_rejection_utility = rep.accept_all_utility;
  for (std::size_t skip = 0; skip < feas.size(); ++skip) {
    if (!feas[skip].involves(rep.overloaded_agent)) continue;
    Allocation a = Allocation::initial_of(inst);
    for (std::size_t k = 0; k < feas.size(); ++k)
      if (k != skip) apply_exchange(a, feas[k]);
    rep.best_rejection_utility = std::max(
        rep.best_rejection_utility, utility(inst, a, rep.overloaded_agent));
  }
  rep.rejection_gain = rep.best_rejection_utility - rep.accept_all_utility;

  // Scenario 2: the planner proposes a single exchange and it is rejected;
  // the run ends at the initial allocation with only that one in R.
  ExchangeSet rejected{feas.front().canonical()};
  Allocation initial = Allocation::initial_of(inst);
  for (const Exchange& e : beneficial_exchanges(inst, initial, all)) {
    if (!rejected.count(e.canonical())) {
      rep.leftover = e;
      break;
    }
  }

  std::ostringstream os;
  os << "agent " << rep.overloaded_agent << " gains " << rep.rejection_gain
     << " by rejecting one of the batched proposals";
  if (rep.leftover)
    os << "; single-proposal truncation leaves " << to_string(*rep.leftover)
       << " unrejected";
  rep.detail = os.str();
  return rep;
}

}  // namespace clearx
