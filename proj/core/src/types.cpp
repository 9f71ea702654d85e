#include "clearx/types.hpp"

#include <cmath>
#include <sstream>

namespace clearx {

void Instance::validate() const {
  if (num_agents < 0 || num_goods < 0)
    throw std::invalid_argument("negative dimensions");
  if (initial.size() != static_cast<std::size_t>(num_agents) * num_goods)
    throw std::invalid_argument("initial matrix has wrong size");
  if (beta.size() != static_cast<std::size_t>(num_agents) * num_agents)
    throw std::invalid_argument("beta matrix has wrong size");
  for (std::uint8_t v : initial)
    if (v != 0 && v != 1) throw std::invalid_argument("initial entries must be 0/1");
  for (int i = 0; i < num_agents; ++i) {
    if (beta_at(i, i) != 0.0)
      throw std::invalid_argument("beta diagonal must be 0");
    for (int j = 0; j < num_agents; ++j) {
      double b = beta_at(i, j);
      if (!std::isfinite(b)) throw std::invalid_argument("beta must be finite");
      if (i != j && (b <= 0.0 || b >= 1.0))
        throw std::invalid_argument("off-diagonal beta must lie in (0,1)");
      if (b != beta_at(j, i))
        throw std::invalid_argument("beta must be symmetric");
    }
  }
}

Instance Instance::make(std::vector<std::vector<int>> rows,
                        std::vector<std::vector<double>> beta_matrix) {
  Instance inst;
  inst.num_agents = static_cast<int>(rows.size());
  inst.num_goods = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != inst.num_goods)
      throw std::invalid_argument("ragged initial matrix");
    for (int v : row) inst.initial.push_back(static_cast<std::uint8_t>(v));
  }
  if (static_cast<int>(beta_matrix.size()) != inst.num_agents)
    throw std::invalid_argument("beta row count mismatch");
  for (const auto& row : beta_matrix) {
    if (static_cast<int>(row.size()) != inst.num_agents)
      throw std::invalid_argument("beta column count mismatch");
    for (double b : row) inst.beta.push_back(b);
  }
  inst.validate();
  return inst;
}

std::string to_string(const Exchange& e) {
  std::ostringstream os;
  os << "((" << e.giver_a << "," << e.good_a << "),(" << e.giver_b << ","
     << e.good_b << "))";
  return os.str();
}

Allocation Allocation::initial_of(const Instance& inst) {
  Allocation a;
  a.num_agents = inst.num_agents;
  a.num_goods = inst.num_goods;
  a.data = inst.initial;
  a.source.assign(a.data.size(), kNoAgent);
  for (AgentId i = 0; i < a.num_agents; ++i)
    for (GoodId r = 0; r < a.num_goods; ++r)
      if (a.holds(i, r)) a.source[a.cell(i, r)] = i;
  return a;
}

}  // namespace clearx
