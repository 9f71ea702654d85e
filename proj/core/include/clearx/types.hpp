#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace clearx {

using AgentId = int;
using GoodId = int;

inline constexpr AgentId kNoAgent = -1;

// Thrown by the exhaustive enumerators (deviation trees, protocol trees,
// participation batteries, Pareto search) when an input would require more
// work than the configured cap. These tools are meant for small instances.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A problem instance: who starts with which goods, and how strongly each
// pair of agents competes. beta is symmetric with zero diagonal and
// off-diagonal entries in the open interval (0,1).
struct Instance {
  int num_agents = 0;
  int num_goods = 0;
  std::vector<std::uint8_t> initial;  // num_agents x num_goods, row-major
  std::vector<double> beta;           // num_agents x num_agents, row-major

  bool holds(AgentId i, GoodId r) const {
    return initial[static_cast<std::size_t>(i) * num_goods + r] != 0;
  }
  double beta_at(AgentId i, AgentId j) const {
    return beta[static_cast<std::size_t>(i) * num_agents + j];
  }
  int initial_count(AgentId i) const {
    int c = 0;
    for (GoodId r = 0; r < num_goods; ++r) c += holds(i, r) ? 1 : 0;
    return c;
  }

  // Throws std::invalid_argument on dimension or range violations.
  void validate() const;

  static Instance make(std::vector<std::vector<int>> rows,
                       std::vector<std::vector<double>> beta_matrix);
};

// One pairwise exchange: giver_a hands a copy of good_a to giver_b and
// receives a copy of good_b in return. Stored with giver_a < giver_b so a
// proposal and its mirror compare equal.
struct Exchange {
  AgentId giver_a = 0;
  GoodId good_a = 0;
  AgentId giver_b = 0;
  GoodId good_b = 0;

  auto operator<=>(const Exchange&) const = default;

  Exchange canonical() const {
    if (giver_a <= giver_b) return *this;
    return Exchange{giver_b, good_b, giver_a, good_a};
  }
  bool involves(AgentId a) const { return giver_a == a || giver_b == a; }
  AgentId partner_of(AgentId a) const { return giver_a == a ? giver_b : giver_a; }
  // Good that `a` receives in this exchange.
  GoodId received_by(AgentId a) const { return giver_a == a ? good_b : good_a; }
  // Good that `a` gives in this exchange.
  GoodId given_by(AgentId a) const { return giver_a == a ? good_a : good_b; }
};

using ExchangeSet = std::set<Exchange>;

std::string to_string(const Exchange& e);

// Ordered subset of the instance's agents taking part in a run.
struct ParticipantSet {
  std::vector<AgentId> members;  // sorted, unique

  static ParticipantSet all(const Instance& inst) {
    ParticipantSet p;
    p.members.resize(inst.num_agents);
    for (int i = 0; i < inst.num_agents; ++i) p.members[i] = i;
    return p;
  }
  static ParticipantSet of(std::vector<AgentId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ParticipantSet{std::move(ids)};
  }
  bool contains(AgentId a) const {
    return std::binary_search(members.begin(), members.end(), a);
  }
  std::size_t size() const { return members.size(); }
  bool operator==(const ParticipantSet&) const = default;
};

// Binary possession matrix. Cells only ever flip 0 -> 1 across rounds; the
// source matrix remembers who supplied each held good (the agent itself for
// initial goods).
struct Allocation {
  int num_agents = 0;
  int num_goods = 0;
  std::vector<std::uint8_t> data;
  std::vector<AgentId> source;  // kNoAgent when the cell is 0

  static Allocation initial_of(const Instance& inst);

  std::size_t cell(AgentId i, GoodId r) const {
    return static_cast<std::size_t>(i) * num_goods + r;
  }
  bool holds(AgentId i, GoodId r) const { return data[cell(i, r)] != 0; }
  AgentId source_of(AgentId i, GoodId r) const { return source[cell(i, r)]; }
  void grant(AgentId i, GoodId r, AgentId from) {
    std::size_t c = cell(i, r);
    if (data[c]) return;  // already holds a copy; duplicates collapse
    data[c] = 1;
    source[c] = from;
  }
  int row_count(AgentId i) const {
    int c = 0;
    for (GoodId r = 0; r < num_goods; ++r) c += holds(i, r) ? 1 : 0;
    return c;
  }
  bool row_full(AgentId i) const { return row_count(i) == num_goods; }
  bool same_cells(const Allocation& o) const { return data == o.data; }
  bool operator==(const Allocation&) const = default;
};

}  // namespace clearx
