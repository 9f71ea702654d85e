#pragma once

#include <vector>

#include "clearx/types.hpp"

namespace clearx {

// u_i(x) = (own goods) - sum_j beta_ij * (j's goods). Sums over every agent
// of the instance, participating or not.
double utility(const Instance& inst, const Allocation& alloc, AgentId agent);
std::vector<double> utilities(const Instance& inst, const Allocation& alloc);

// All exchanges that could ever make sense between participants: both goods
// initially held by their givers, and neither receiver starts out with the
// good it would acquire. Independent of the current allocation. Sorted.
std::vector<Exchange> feasible_exchanges(const Instance& inst,
                                         const ParticipantSet& participants);

// Exchanges still beneficial at `alloc`: feasible ones where neither receiver
// holds (or is scheduled to hold) the incoming good yet. Empty on a stable
// allocation under all-accepting play.
std::vector<Exchange> beneficial_exchanges(const Instance& inst,
                                           const Allocation& alloc,
                                           const ParticipantSet& participants);

// Grants both goods. A receiver that already holds the incoming good keeps
// its single copy (cells never flip back).
void apply_exchange(Allocation& alloc, const Exchange& e);

}  // namespace clearx
