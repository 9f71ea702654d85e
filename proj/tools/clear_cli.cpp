// Command-line front end: run traces, drive the verification suites, and
// reproduce the random conjecture sweep.

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "clearx/demos.hpp"
#include "clearx/engine.hpp"
#include "clearx/gen.hpp"
#include "clearx/io.hpp"
#include "clearx/verify.hpp"

namespace {

using namespace clearx;

Instance resolve_instance(const std::vector<std::string>& target) {
  if (target.size() == 2 && target[0] == "demo") {
    const DemoEntry* d = find_demo(target[1]);
    if (!d) throw CLI::ValidationError("unknown demo: " + target[1]);
    return d->instance;
  }
  if (target.size() == 1 && target[0] != "demo")
    return load_instance(target[0]);
  throw CLI::ValidationError("expected an instance file or: demo <name>");
}

ParticipantSet resolve_participants(const Instance& inst,
                                    const std::string& spec) {
  if (spec.empty()) return ParticipantSet::all(inst);
  std::vector<AgentId> ids;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) ids.push_back(std::stoi(tok));
  for (AgentId a : ids)
    if (a < 0 || a >= inst.num_agents)
      throw CLI::ValidationError("participant id out of range");
  return ParticipantSet::of(ids);
}

// Script files hold one decision per line:
//   agent round giver_a good_a giver_b good_b bit
StrategyProfile load_script_profile(const Instance& inst,
                                    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open script file: " + path);
  std::map<AgentId, ScriptMap> per_agent;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int agent, round, ga, ra, gb, rb, bit;
    if (!(ls >> agent >> round >> ga >> ra >> gb >> rb >> bit))
      throw CLI::ValidationError("script parse error at line " +
                                 std::to_string(lineno));
    per_agent[agent][{round, Exchange{ga, ra, gb, rb}.canonical()}] = bit != 0;
  }
  StrategyProfile profile = uniform_profile(inst.num_agents, accepting());
  for (auto& [agent, map] : per_agent) profile[agent] = scripted(map);
  return profile;
}

// Deterministic mostly-accepting strategy for stress runs: hashes
// (seed, agent, round, exchange) and rejects about 30% of proposals.
Strategy hash_random(std::uint64_t seed) {
  return Strategy{"hash_random",
                  [seed](const Exchange& e, const StrategyContext& ctx) {
                    std::uint64_t h = seed;
                    for (std::uint64_t v :
                         {static_cast<std::uint64_t>(ctx.self),
                          static_cast<std::uint64_t>(ctx.round),
                          static_cast<std::uint64_t>(e.giver_a),
                          static_cast<std::uint64_t>(e.good_a),
                          static_cast<std::uint64_t>(e.giver_b),
                          static_cast<std::uint64_t>(e.good_b)}) {
                      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                    }
                    return (h % 10) >= 3;
                  }};
}

struct VerifyOpts {
  ProtocolKind protocol = ProtocolKind::kClear;
  bool dsic4_profile = false;
  int focal = -1;  // -1: every agent
};

int run_suite(const std::string& suite, const std::vector<Instance>& targets,
              const VerifyOpts& opts) {
  int failures = 0;
  auto report = [&](const std::string& what, bool pass,
                    const std::string& detail) {
    std::cout << (pass ? "PASS " : "FAIL ") << what;
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
    if (!pass) ++failures;
  };

  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Instance& inst = targets[t];
    ParticipantSet all = ParticipantSet::all(inst);
    std::string tag = "instance " + std::to_string(t);
    std::vector<AgentId> focals;
    if (opts.focal >= 0)
      focals.push_back(opts.focal);
    else
      for (AgentId a = 0; a < inst.num_agents; ++a) focals.push_back(a);

    if (suite == "stability" || suite == "all") {
      StrategyProfile acc = uniform_profile(inst.num_agents, accepting());
      Trace tr = execute(inst, all, acc, {}, opts.protocol);
      auto r = check_stability(inst, tr, all);
      report(tag + " stability(accepting)", r.pass, r.detail);
      StrategyProfile noisy =
          uniform_profile(inst.num_agents, hash_random(t * 7919 + 11));
      Trace tn = execute(inst, all, noisy, {}, opts.protocol);
      auto rn = check_stability(inst, tn, all);
      report(tag + " stability(scripted)", rn.pass, rn.detail);
    }
    if (suite == "nic" || suite == "all") {
      ExploreOptions eo;
      eo.protocol = opts.protocol;
      StrategyProfile co;
      if (opts.dsic4_profile) {
        co = dsic4_deviation_co_profile(inst);
        eo.co_profile = &co;
      }
      for (AgentId focal : focals) {
        auto r = check_nic(inst, all, focal, {}, eo);
        report(tag + " nic(focal=" + std::to_string(focal) + ")", r.pass,
               r.detail);
      }
    }
    if (suite == "betagood" || suite == "all") {
      ExploreOptions eo;
      eo.protocol = opts.protocol;
      std::set<double> betas{1.0};
      for (AgentId i = 0; i < inst.num_agents; ++i)
        for (AgentId j = i + 1; j < inst.num_agents; ++j)
          betas.insert(inst.beta_at(i, j));
      for (AgentId focal : focals) {
        bool pass = true;
        std::string detail;
        for (double bp : betas) {
          auto r = check_betagood(inst, all, focal, bp, {}, eo);
          if (!r.pass) {
            pass = false;
            detail = r.detail;
            break;
          }
        }
        report(tag + " betagood(focal=" + std::to_string(focal) + ")", pass,
               detail);
      }
    }
    if (suite == "ir" || suite == "all") {
      for (AgentId focal : focals) {
        auto r = check_ir(inst, focal);
        std::ostringstream os;
        os << r.detail << "; full-participation margin " << r.full_margin;
        report(tag + " ir(focal=" + std::to_string(focal) + ")", r.pass,
               os.str());
      }
    }
    if (suite == "tracked" || suite == "all") {
      for (AgentId focal : focals) {
        std::vector<AgentId> others;
        for (AgentId a = 0; a < inst.num_agents; ++a)
          if (a != focal) others.push_back(a);
        auto d = tracked_decomposition(inst, ParticipantSet::of(others), focal);
        std::ostringstream os;
        os << d.paths.size() << " paths, delta sum " << d.delta_sum;
        if (!d.pass()) os << "; " << d.report;
        report(tag + " tracked(focal=" + std::to_string(focal) + ")", d.pass(),
               os.str());
      }
    }
    if (suite == "pe" || suite == "all") {
      auto coalition = classify_coalition(inst, all);
      StrategyProfile acc = uniform_profile(inst.num_agents, accepting());
      Trace tr = run(inst, all, acc);
      auto conj = check_conjecture(tr);
      const char* cls = coalition.cls == CoalitionClass::kLec   ? "LEC"
                        : coalition.cls == CoalitionClass::kHec ? "HEC"
                                                                : "NEITHER";
      if (static_cast<std::size_t>(inst.num_agents) * inst.num_goods <= 16) {
        auto pe = check_pareto(inst, tr.final_allocation);
        bool expect_pe =
            coalition.cls != CoalitionClass::kLec || conj.pass;
        // On an LEC, efficiency of the outcome should match the
        // perfect-agent certificate; elsewhere we only report.
        bool pass = coalition.cls != CoalitionClass::kLec || pe.pass == conj.pass;
        std::ostringstream os;
        os << cls << ", conjecture " << (conj.pass ? "holds" : "fails")
           << ", brute-force " << (pe.pass ? "efficient" : "dominated");
        (void)expect_pe;
        report(tag + " pe", pass, os.str());
      } else {
        report(tag + " pe(conjecture-only)", conj.pass,
               std::string(cls) + ", " + conj.detail);
      }
    }
  }
  std::cout << (failures == 0 ? "ALL PASS" : "FAILURES: ")
            << (failures == 0 ? "" : std::to_string(failures)) << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_simulate(int n, int m, double p, long long trials,
                 std::uint64_t seed, int threads, const std::string& out_path) {
  GenConfig gc;
  gc.num_agents = n;
  gc.num_goods = m;
  gc.density = p;
  gc.master_seed = seed;

  struct Row {
    std::uint64_t seed = 0;
    int rounds = 0;
    int proposals = 0;
    bool perfect = false;
    long long us = 0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(trials));
  std::atomic<long long> next{0};
  auto worker = [&]() {
    for (;;) {
      long long t = next.fetch_add(1);
      if (t >= trials) return;
      Instance inst = random_instance(gc, static_cast<std::uint64_t>(t));
      ParticipantSet all = ParticipantSet::all(inst);
      StrategyProfile acc = uniform_profile(inst.num_agents, accepting());
      auto t0 = std::chrono::steady_clock::now();
      Trace tr = run(inst, all, acc);
      auto t1 = std::chrono::steady_clock::now();
      Row& r = rows[static_cast<std::size_t>(t)];
      r.seed = trial_seed(gc, static_cast<std::uint64_t>(t));
      r.rounds = static_cast<int>(tr.rounds.size());
      r.proposals = tr.total_proposals();
      r.perfect = check_conjecture(tr).pass;
      r.us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
                 .count();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::ostringstream csv;
  csv << "trial,seed,rounds,proposals,perfect_agent,runtime_us\n";
  long long counterexamples = 0, total_us = 0, total_props = 0, total_rounds = 0;
  for (long long t = 0; t < trials; ++t) {
    const Row& r = rows[static_cast<std::size_t>(t)];
    if (!r.perfect) ++counterexamples;
    total_us += r.us;
    total_props += r.proposals;
    total_rounds += r.rounds;
    csv << t << "," << r.seed << "," << r.rounds << "," << r.proposals << ","
        << (r.perfect ? 1 : 0) << "," << r.us << "\n";
  }
  // Summary row: totals, with the counterexample count in the
  // perfect_agent column.
  csv << "summary," << seed << "," << total_rounds << "," << total_props
      << "," << counterexamples << "," << total_us << "\n";
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    out << csv.str();
    std::cout << "wrote " << out_path << " (" << counterexamples
              << " counterexamples)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise exchange protocol engine"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run the protocol and print the trace");
  std::vector<std::string> run_target;
  run_cmd->add_option("target", run_target,
                      "instance file, or: demo <name>")->expected(1, 2);
  std::string run_participants, run_script, run_out, run_protocol = "clear",
                                                     run_opt = "none";
  bool run_no_retrospect = false, run_reject_all = false, run_json = false;
  run_cmd->add_option("--participants", run_participants,
                      "comma-separated agent ids (default: all)");
  run_cmd->add_flag("--no-retrospect", run_no_retrospect,
                    "disable the repair subroutine");
  run_cmd->add_option("--protocol", run_protocol, "clear|sac")
      ->check(CLI::IsMember({"clear", "sac"}));
  run_cmd->add_option("--opt", run_opt, "all|none: behavior-neutral speedups")
      ->check(CLI::IsMember({"all", "none"}));
  run_cmd->add_flag("--reject-all", run_reject_all,
                    "all agents reject every proposal");
  run_cmd->add_option("--script", run_script,
                      "scripted decisions file (agent round exchange bit)");
  run_cmd->add_option("--out", run_out, "write the trace to a file");
  run_cmd->add_flag("--json", run_json, "emit JSON instead of text");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> verify_pos;
  verify_cmd->add_option("target", verify_pos,
                         "[demo <name> | file] suite; suites: stability nic "
                         "ir betagood tracked pe all")
      ->expected(1, 3);
  std::vector<std::string> verify_random;
  verify_cmd->add_option("--random", verify_random,
                         "n m p trials seed: verify random instances")
      ->expected(5);
  std::string verify_protocol = "clear", verify_profile;
  int verify_focal = -1;
  verify_cmd->add_option("--protocol", verify_protocol, "clear|sac")
      ->check(CLI::IsMember({"clear", "sac"}));
  verify_cmd->add_option("--profile", verify_profile,
                         "named co-profile (dsic4dev)");
  verify_cmd->add_option("--focal", verify_focal, "restrict to one focal agent");

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "random sweep: CSV of rounds/proposals/perfect-agent flags");
  int sim_n = 10, sim_m = 10, sim_threads = 1;
  double sim_p = 0.5;
  long long sim_trials = 1000;
  std::uint64_t sim_seed = 0;
  std::string sim_out;
  sim_cmd->add_option("n", sim_n, "agents")->required();
  sim_cmd->add_option("m", sim_m, "goods")->required();
  sim_cmd->add_option("p", sim_p, "cell density")->required();
  sim_cmd->add_option("trials", sim_trials, "number of trials")->required();
  sim_cmd->add_option("seed", sim_seed, "master seed")->required();
  sim_cmd->add_option("--threads", sim_threads, "worker threads");
  sim_cmd->add_option("--out", sim_out, "CSV output path");

  // demos
  auto* demos_cmd = app.add_subcommand("demos", "list the demo catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      Instance inst = resolve_instance(run_target);
      ParticipantSet parts = resolve_participants(inst, run_participants);
      ProtocolConfig cfg;
      cfg.retrospect_enabled = !run_no_retrospect;
      if (run_opt == "all") cfg = ProtocolConfig::all_opts();
      cfg.retrospect_enabled = !run_no_retrospect;
      StrategyProfile profile =
          run_script.empty()
              ? uniform_profile(inst.num_agents,
                                run_reject_all ? reject_all() : accepting())
              : load_script_profile(inst, run_script);
      ProtocolKind kind = run_protocol == "sac" ? ProtocolKind::kSac
                                                : ProtocolKind::kClear;
      Trace tr = execute(inst, parts, profile, cfg, kind);
      std::string text =
          run_json ? trace_to_json(inst, tr) : trace_to_text(inst, tr);
      if (run_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(run_out);
        out << text;
      }
      return 0;
    }
    if (*verify_cmd) {
      std::vector<Instance> targets;
      std::string suite;
      if (!verify_random.empty()) {
        if (verify_pos.size() != 1)
          throw CLI::ValidationError("--random needs exactly one suite name");
        suite = verify_pos[0];
        GenConfig gc;
        gc.num_agents = std::stoi(verify_random[0]);
        gc.num_goods = std::stoi(verify_random[1]);
        gc.density = std::stod(verify_random[2]);
        long long trials = std::stoll(verify_random[3]);
        gc.master_seed = std::stoull(verify_random[4]);
        for (long long t = 0; t < trials; ++t)
          targets.push_back(random_instance(gc, static_cast<std::uint64_t>(t)));
      } else {
        std::vector<std::string> target(verify_pos.begin(),
                                        verify_pos.end() - 1);
        suite = verify_pos.back();
        targets.push_back(resolve_instance(target));
      }
      VerifyOpts opts;
      opts.protocol = verify_protocol == "sac" ? ProtocolKind::kSac
                                               : ProtocolKind::kClear;
      opts.focal = verify_focal;
      if (verify_profile == "dsic4dev")
        opts.dsic4_profile = true;
      else if (!verify_profile.empty())
        throw CLI::ValidationError("unknown profile: " + verify_profile);
      return run_suite(suite, targets, opts);
    }
    if (*sim_cmd) {
      return cmd_simulate(sim_n, sim_m, sim_p, sim_trials, sim_seed,
                          sim_threads, sim_out);
    }
    if (*demos_cmd) {
      for (const DemoEntry& d : demo_catalog())
        std::cout << d.name << ": " << d.description << "\n";
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
