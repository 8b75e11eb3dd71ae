// Command-line front end. Talks to the library exclusively through the C API.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "CLI11.hpp"

#include "dra.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitBudget = 5;

int exit_for(dra_status status) {
  switch (status) {
    case DRA_OK:
      return kExitOk;
    case DRA_INVALID_ARGUMENT:
    case DRA_IO:
    case DRA_PARSE:
    case DRA_VALIDATION:
    case DRA_CONFIG:
      return kExitBadInput;
    case DRA_BUDGET_EXCEEDED:
      return kExitBudget;
    default:
      return kExitError;
  }
}

int complain(dra_status status) {
  std::fprintf(stderr, "error: %s\n", dra_last_error());
  return exit_for(status);
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

struct ScenarioHandle {
  dra_scenario* ptr = nullptr;
  ~ScenarioHandle() { dra_scenario_free(ptr); }
};

struct ResultHandle {
  dra_result* ptr = nullptr;
  ~ResultHandle() { dra_result_free(ptr); }
};

struct TextHandle {
  char* ptr = nullptr;
  ~TextHandle() { dra_string_free(ptr); }
};

struct RunArgs {
  std::string scenario_path;
  std::string policy = "concurrent";
  bool singles_only = false;
  int max_rounds = 0;
  double gamma = 0;
  double alpha = 0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

int do_run(const RunArgs& args) {
  ScenarioHandle scenario;
  if (dra_status s = dra_scenario_from_file(args.scenario_path.c_str(), &scenario.ptr))
    return complain(s);

  dra_run_options options;
  dra_run_options_init(&options);
  options.sequential = args.policy == "sequential" ? 1 : 0;
  options.singles_only = args.singles_only ? 1 : 0;
  options.max_rounds = args.max_rounds;
  options.gamma = args.gamma;
  options.alpha = args.alpha;
  options.seed = args.seed;

  ResultHandle result;
  if (dra_status s = dra_run(scenario.ptr, &options, &result.ptr)) return complain(s);

  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create output directory %s\n", args.out_dir.c_str());
    return kExitBadInput;
  }

  TextHandle trace, costs, assignment;
  if (dra_status s = dra_result_trace(result.ptr, &trace.ptr)) return complain(s);
  if (dra_status s = dra_result_cost_curve(result.ptr, &costs.ptr)) return complain(s);
  if (dra_status s = dra_result_assignment(result.ptr, &assignment.ptr)) return complain(s);

  const std::string base = args.out_dir + "/";
  for (const auto& [name, text] : {std::pair<const char*, const char*>{"trace.jsonl", trace.ptr},
                                   {"costs.csv", costs.ptr},
                                   {"assignment.json", assignment.ptr}}) {
    if (!write_file(base + name, text)) {
      std::fprintf(stderr, "error: cannot write %s%s\n", base.c_str(), name);
      return kExitBadInput;
    }
  }

  const bool converged = dra_result_converged(result.ptr) != 0;
  std::printf("%s after %d rounds, %d migrations, comm %lld -> %lld, outputs in %s\n",
              converged ? "converged" : "stopped at the round limit",
              dra_result_rounds(result.ptr), dra_result_migrations(result.ptr),
              static_cast<long long>(dra_result_initial_comm(result.ptr)),
              static_cast<long long>(dra_result_final_comm(result.ptr)), args.out_dir.c_str());
  return converged ? kExitOk : kExitNotConverged;
}

struct GenArgs {
  dra_gen_options options;
  std::string mode = "tree";
  std::string out_path;
};

int do_gen(GenArgs& args) {
  args.options.hierarchical = args.mode == "hierarchical" ? 1 : 0;
  ScenarioHandle scenario;
  if (dra_status s = dra_scenario_generate(&args.options, &scenario.ptr)) return complain(s);
  TextHandle text;
  if (dra_status s = dra_scenario_to_json(scenario.ptr, &text.ptr)) return complain(s);
  if (args.out_path.empty()) {
    std::fputs(text.ptr, stdout);
    return kExitOk;
  }
  if (!write_file(args.out_path, text.ptr)) {
    std::fprintf(stderr, "error: cannot write %s\n", args.out_path.c_str());
    return kExitBadInput;
  }
  return kExitOk;
}

struct CompareArgs {
  dra_compare_options options;
  std::string mode = "tree";
  std::string policy = "concurrent";
  std::string report_path;
};

int do_compare(CompareArgs& args) {
  args.options.hierarchical = args.mode == "hierarchical" ? 1 : 0;
  args.options.sequential = args.policy == "sequential" ? 1 : 0;
  TextHandle report;
  int mismatches = 0;
  if (dra_status s = dra_compare(&args.options, &report.ptr, &mismatches)) return complain(s);
  if (args.report_path.empty()) {
    std::fputs(report.ptr, stdout);
  } else if (!write_file(args.report_path, report.ptr)) {
    std::fprintf(stderr, "error: cannot write %s\n", args.report_path.c_str());
    return kExitBadInput;
  }
  return mismatches == 0 ? kExitOk : kExitMismatch;
}

int do_oracle(const std::string& scenario_path) {
  ScenarioHandle scenario;
  if (dra_status s = dra_scenario_from_file(scenario_path.c_str(), &scenario.ptr))
    return complain(s);
  int64_t comm = 0;
  if (dra_status s = dra_oracle_optimal(scenario.ptr, &comm)) return complain(s);
  std::printf("{\"optimal_comm\": %lld}\n", static_cast<long long>(comm));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized process reassignment over tree and cluster networks"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run the reassignment on a scenario file");
  run->add_option("scenario", run_args.scenario_path, "Scenario JSON file")->required();
  run->add_option("--policy", run_args.policy, "Round policy")
      ->check(CLI::IsMember({"sequential", "concurrent"}));
  run->add_flag("--singles-only", run_args.singles_only,
                "Keep the single-process mechanism everywhere");
  run->add_option("--max-rounds", run_args.max_rounds, "Round limit (0 keeps the default)");
  run->add_option("--gamma", run_args.gamma, "Inertia factor override (>= 1)");
  run->add_option("--alpha", run_args.alpha, "Smoothing factor override (in (0,1))");
  run->add_option("--seed", run_args.seed, "Seed recorded in the trace header");
  run->add_option("--out", run_args.out_dir, "Output directory for trace, costs, assignment")
      ->envname("DRA_OUT_DIR");

  GenArgs gen_args;
  dra_gen_options_init(&gen_args.options);
  auto* gen = app.add_subcommand("gen", "Generate a random scenario");
  gen->add_option("--seed", gen_args.options.seed, "Generator seed");
  gen->add_option("--mode", gen_args.mode, "Network kind")
      ->check(CLI::IsMember({"tree", "hierarchical"}));
  gen->add_option("--nodes", gen_args.options.node_count, "Tree nodes, or clusters");
  gen->add_option("--servers", gen_args.options.servers_per_cluster, "Servers per cluster");
  gen->add_option("--processes", gen_args.options.process_count, "Process count");
  gen->add_option("--max-volume", gen_args.options.max_volume, "Per-pair traffic ceiling");
  gen->add_option("--traffic-percent", gen_args.options.traffic_percent,
                  "Chance a process pair talks (0..100)");
  gen->add_option("--windows", gen_args.options.schedule_windows,
                  "Later traffic patterns to fold in");
  gen->add_option("--out", gen_args.out_path, "Write here instead of stdout");

  CompareArgs compare_args;
  dra_compare_options_init(&compare_args.options);
  auto* compare = app.add_subcommand("compare", "Check generated instances against references");
  compare->add_option("--first-seed", compare_args.options.first_seed, "Seed of instance 0");
  compare->add_option("--instances", compare_args.options.instances, "Instance count");
  compare->add_option("--mode", compare_args.mode, "Network kind")
      ->check(CLI::IsMember({"tree", "hierarchical"}));
  compare->add_option("--min-nodes", compare_args.options.min_nodes, "Smallest network");
  compare->add_option("--max-nodes", compare_args.options.max_nodes, "Largest network");
  compare->add_option("--servers", compare_args.options.servers_per_cluster,
                      "Servers per cluster");
  compare->add_option("--min-processes", compare_args.options.min_processes,
                      "Fewest processes");
  compare->add_option("--max-processes", compare_args.options.max_processes,
                      "Most processes");
  compare->add_option("--policy", compare_args.policy, "Round policy")
      ->check(CLI::IsMember({"sequential", "concurrent"}));
  compare->add_option("--report", compare_args.report_path, "Write the JSON report here");

  std::string oracle_path;
  auto* oracle = app.add_subcommand("oracle", "Enumerate the best placement of a scenario");
  oracle->add_option("scenario", oracle_path, "Scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return do_run(run_args);
  if (gen->parsed()) return do_gen(gen_args);
  if (compare->parsed()) return do_compare(compare_args);
  return do_oracle(oracle_path);
}
