#include "clearx/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace clearx {

using ordered_json = nlohmann::ordered_json;

Instance parse_instance(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("instance parse error: ") +
                                e.what());
  }
  if (!j.is_object() || !j.contains("agents") || !j.contains("goods") ||
      !j.contains("initial") || !j.contains("beta"))
    throw std::invalid_argument(
        "instance must be an object with agents, goods, initial, beta");
  Instance inst;
  inst.num_agents = j.at("agents").get<int>();
  inst.num_goods = j.at("goods").get<int>();
  const auto& rows = j.at("initial");
  if (!rows.is_array() || static_cast<int>(rows.size()) != inst.num_agents)
    throw std::invalid_argument("initial must have one row per agent");
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != inst.num_goods)
      throw std::invalid_argument("initial row has wrong length");
    for (const auto& v : row)
      inst.initial.push_back(static_cast<std::uint8_t>(v.get<int>()));
  }
  const auto& brows = j.at("beta");
  if (!brows.is_array() || static_cast<int>(brows.size()) != inst.num_agents)
    throw std::invalid_argument("beta must be a square agent matrix");
  for (const auto& row : brows) {
    if (!row.is_array() || static_cast<int>(row.size()) != inst.num_agents)
      throw std::invalid_argument("beta row has wrong length");
    for (const auto& v : row) inst.beta.push_back(v.get<double>());
  }
  inst.validate();
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string instance_to_json(const Instance& inst) {
  ordered_json j;
  j["agents"] = inst.num_agents;
  j["goods"] = inst.num_goods;
  ordered_json rows = ordered_json::array();
  for (AgentId i = 0; i < inst.num_agents; ++i) {
    ordered_json row = ordered_json::array();
    for (GoodId r = 0; r < inst.num_goods; ++r)
      row.push_back(inst.holds(i, r) ? 1 : 0);
    rows.push_back(row);
  }
  j["initial"] = rows;
  ordered_json brows = ordered_json::array();
  for (AgentId i = 0; i < inst.num_agents; ++i) {
    ordered_json row = ordered_json::array();
    for (AgentId k = 0; k < inst.num_agents; ++k)
      row.push_back(inst.beta_at(i, k));
    brows.push_back(row);
  }
  j["beta"] = brows;
  return j.dump(2);
}

namespace {

ordered_json exchange_json(const Exchange& e) {
  return ordered_json::array(
      {ordered_json::array({e.giver_a, e.good_a}),
       ordered_json::array({e.giver_b, e.good_b})});
}

}  // namespace

std::string trace_to_text(const Instance& inst, const Trace& trace) {
  std::ostringstream os;
  os << "participants:";
  for (AgentId a : trace.participants.members) os << " " << a;
  os << "\n";
  for (std::size_t t = 0; t < trace.rounds.size(); ++t) {
    const RoundRecord& rd = trace.rounds[t];
    os << "round " << t + 1 << " (" << rd.proposals.size() << " proposals)\n";
    for (std::size_t k = 0; k < rd.proposals.size(); ++k) {
      os << "  " << to_string(rd.proposals[k]) << " "
         << (rd.accept_a[k] ? "accept" : "reject") << "/"
         << (rd.accept_b[k] ? "accept" : "reject") << " -> "
         << (rd.executed[k] ? "executed" : "rejected") << "\n";
    }
  }
  os << "final allocation:\n";
  for (AgentId i = 0; i < inst.num_agents; ++i) {
    os << "  agent " << i << ": [";
    for (GoodId r = 0; r < inst.num_goods; ++r) {
      if (r) os << ",";
      os << (trace.final_allocation.holds(i, r) ? 1 : 0);
    }
    os << "]\n";
  }
  os << "pair exchange counts:";
  if (trace.pair_counts.empty()) os << " none";
  for (const auto& [pair, count] : trace.pair_counts)
    os << " (" << pair.first << "," << pair.second << "):" << count;
  os << "\n";
  os << "utilities:";
  for (double u : trace.utilities) os << " " << u;
  os << "\n";
  return os.str();
}

std::string trace_to_json(const Instance& inst, const Trace& trace) {
  ordered_json j;
  j["participants"] = trace.participants.members;
  ordered_json rounds = ordered_json::array();
  for (const RoundRecord& rd : trace.rounds) {
    ordered_json round;
    ordered_json props = ordered_json::array();
    for (const Exchange& e : rd.proposals) props.push_back(exchange_json(e));
    round["proposals"] = props;
    round["accept_a"] = rd.accept_a;
    round["accept_b"] = rd.accept_b;
    round["executed"] = rd.executed;
    rounds.push_back(round);
  }
  j["rounds"] = rounds;
  ordered_json final_rows = ordered_json::array();
  for (AgentId i = 0; i < inst.num_agents; ++i) {
    ordered_json row = ordered_json::array();
    for (GoodId r = 0; r < inst.num_goods; ++r)
      row.push_back(trace.final_allocation.holds(i, r) ? 1 : 0);
    final_rows.push_back(row);
  }
  j["final"] = final_rows;
  ordered_json pc = ordered_json::array();
  for (const auto& [pair, count] : trace.pair_counts)
    pc.push_back(ordered_json::array({pair.first, pair.second, count}));
  j["pair_counts"] = pc;
  j["utilities"] = trace.utilities;
  return j.dump(2);
}

}  // namespace clearx
