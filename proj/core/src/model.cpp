#include "clearx/model.hpp"

namespace clearx {

double utility(const Instance& inst, const Allocation& alloc, AgentId agent) {
  if (alloc.num_agents != inst.num_agents || alloc.num_goods != inst.num_goods)
    throw std::invalid_argument("allocation dimensions do not match instance");
  double u = 0.0;
  for (AgentId j = 0; j < inst.num_agents; ++j) {
    int count = alloc.row_count(j);
    if (j == agent)
      u += count;
    else
      u -= inst.beta_at(agent, j) * count;
  }
  return u;
}

std::vector<double> utilities(const Instance& inst, const Allocation& alloc) {
  std::vector<double> us(inst.num_agents);
  for (AgentId i = 0; i < inst.num_agents; ++i) us[i] = utility(inst, alloc, i);
  return us;
}

std::vector<Exchange> feasible_exchanges(const Instance& inst,
                                         const ParticipantSet& participants) {
  std::vector<Exchange> out;
  const auto& m = participants.members;
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      AgentId i = m[a], j = m[b];
      for (GoodId r = 0; r < inst.num_goods; ++r) {
        if (!inst.holds(i, r) || inst.holds(j, r)) continue;
        for (GoodId s = 0; s < inst.num_goods; ++s) {
          if (!inst.holds(j, s) || inst.holds(i, s)) continue;
          out.push_back(Exchange{i, r, j, s});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Exchange> beneficial_exchanges(const Instance& inst,
                                           const Allocation& alloc,
                                           const ParticipantSet& participants) {
  std::vector<Exchange> out;
  for (const Exchange& e : feasible_exchanges(inst, participants)) {
    if (!alloc.holds(e.giver_a, e.good_b) && !alloc.holds(e.giver_b, e.good_a))
      out.push_back(e);
  }
  return out;
}

void apply_exchange(Allocation& alloc, const Exchange& e) {
  alloc.grant(e.giver_b, e.good_a, e.giver_a);
  alloc.grant(e.giver_a, e.good_b, e.giver_b);
}

}  // namespace clearx
