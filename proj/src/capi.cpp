#include "dra.h"

#include <cstring>
#include <exception>
#include <memory>
#include <string>
#include <utility>

#include "compare.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "scenario.hpp"

struct dra_scenario {
  dra::Scenario value;
};

// Texts are rendered at run time so a result outlives its scenario.
struct dra_result {
  dra::RunResult value;
  std::string trace;
  std::string cost_curve;
  std::string assignment;
};

namespace {

thread_local std::string g_last_error;

dra_status fail(dra_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

template <typename Fn>
dra_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DRA_OK;
  } catch (const dra::IoError& e) {
    return fail(DRA_IO, e.what());
  } catch (const dra::ParseError& e) {
    return fail(DRA_PARSE, e.what());
  } catch (const dra::ValidationError& e) {
    return fail(DRA_VALIDATION, e.what());
  } catch (const dra::ConfigError& e) {
    return fail(DRA_CONFIG, e.what());
  } catch (const dra::BudgetExceeded& e) {
    return fail(DRA_BUDGET_EXCEEDED, e.what());
  } catch (const dra::DomainError& e) {
    return fail(DRA_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(DRA_INTERNAL, e.what());
  }
}

char* copy_text(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

dra_status require(bool ok, const char* what) {
  return ok ? DRA_OK : fail(DRA_INVALID_ARGUMENT, what);
}

dra::RunParams to_run_params(const dra_run_options* options) {
  dra::RunParams params;
  if (!options) return params;
  params.policy = options->sequential ? dra::SchedulePolicy::sequential
                                      : dra::SchedulePolicy::concurrent;
  params.singles_only = options->singles_only != 0;
  if (options->max_rounds > 0) params.max_rounds = options->max_rounds;
  if (options->gamma > 0) params.gamma = dra::Ratio::from_decimal(options->gamma);
  if (options->alpha > 0) params.alpha = dra::Ratio::from_decimal(options->alpha);
  params.seed = options->seed;
  return params;
}

}  // namespace

extern "C" {

const char* dra_last_error(void) { return g_last_error.c_str(); }

void dra_string_free(char* text) { delete[] text; }

const char* dra_version(void) { return "1.0.0"; }

dra_status dra_scenario_from_file(const char* path, dra_scenario** out) {
  if (auto s = require(path && out, "dra_scenario_from_file: null argument")) return s;
  return guarded([&] { *out = new dra_scenario{dra::Scenario::from_file(path)}; });
}

dra_status dra_scenario_from_json(const char* text, dra_scenario** out) {
  if (auto s = require(text && out, "dra_scenario_from_json: null argument")) return s;
  return guarded([&] { *out = new dra_scenario{dra::Scenario::from_json_text(text)}; });
}

void dra_gen_options_init(dra_gen_options* options) {
  if (!options) return;
  const dra::GenParams defaults;
  options->seed = defaults.seed;
  options->hierarchical = defaults.mode == dra::TopologyMode::hierarchical ? 1 : 0;
  options->node_count = defaults.node_count;
  options->servers_per_cluster = defaults.servers_per_cluster;
  options->process_count = defaults.process_count;
  options->max_volume = defaults.max_volume;
  options->traffic_percent = defaults.traffic_percent;
  options->schedule_windows = defaults.schedule_windows;
}

dra_status dra_scenario_generate(const dra_gen_options* options, dra_scenario** out) {
  if (auto s = require(options && out, "dra_scenario_generate: null argument")) return s;
  return guarded([&] {
    dra::GenParams params;
    params.seed = options->seed;
    params.mode = options->hierarchical ? dra::TopologyMode::hierarchical
                                        : dra::TopologyMode::tree;
    params.node_count = options->node_count;
    params.servers_per_cluster = options->servers_per_cluster;
    params.process_count = options->process_count;
    params.max_volume = options->max_volume;
    params.traffic_percent = options->traffic_percent;
    params.schedule_windows = options->schedule_windows;
    *out = new dra_scenario{dra::generate_scenario(params)};
  });
}

dra_status dra_scenario_to_json(const dra_scenario* scenario, char** out_text) {
  if (auto s = require(scenario && out_text, "dra_scenario_to_json: null argument")) return s;
  return guarded([&] { *out_text = copy_text(scenario->value.to_json_text()); });
}

void dra_scenario_free(dra_scenario* scenario) { delete scenario; }

void dra_run_options_init(dra_run_options* options) {
  if (!options) return;
  options->sequential = 0;
  options->singles_only = 0;
  options->max_rounds = 0;
  options->gamma = 0;
  options->alpha = 0;
  options->seed = 0;
}

dra_status dra_run(const dra_scenario* scenario, const dra_run_options* options,
                   dra_result** out) {
  if (auto s = require(scenario && out, "dra_run: null argument")) return s;
  return guarded([&] {
    const dra::RunParams params = to_run_params(options);
    auto result = std::make_unique<dra_result>();
    result->value = dra::run(scenario->value, params);
    result->trace = dra::trace_jsonl(scenario->value, params, result->value);
    result->cost_curve = dra::cost_csv(result->value);
    result->assignment = dra::assignment_json(result->value);
    *out = result.release();
  });
}

int dra_result_converged(const dra_result* result) {
  return result && result->value.converged ? 1 : 0;
}

int dra_result_rounds(const dra_result* result) { return result ? result->value.rounds : 0; }

int dra_result_migrations(const dra_result* result) {
  return result ? result->value.migrations : 0;
}

int64_t dra_result_initial_comm(const dra_result* result) {
  return result ? result->value.initial_comm : 0;
}

int64_t dra_result_final_comm(const dra_result* result) {
  return result ? result->value.final_comm : 0;
}

int64_t dra_result_exec_cost(const dra_result* result) {
  return result ? result->value.exec : 0;
}

dra_status dra_result_trace(const dra_result* result, char** out_text) {
  if (auto s = require(result && out_text, "dra_result_trace: null argument")) return s;
  return guarded([&] { *out_text = copy_text(result->trace); });
}

dra_status dra_result_cost_curve(const dra_result* result, char** out_text) {
  if (auto s = require(result && out_text, "dra_result_cost_curve: null argument")) return s;
  return guarded([&] { *out_text = copy_text(result->cost_curve); });
}

dra_status dra_result_assignment(const dra_result* result, char** out_text) {
  if (auto s = require(result && out_text, "dra_result_assignment: null argument")) return s;
  return guarded([&] { *out_text = copy_text(result->assignment); });
}

void dra_result_free(dra_result* result) { delete result; }

dra_status dra_oracle_optimal(const dra_scenario* scenario, int64_t* out_comm) {
  if (auto s = require(scenario && out_comm, "dra_oracle_optimal: null argument")) return s;
  return guarded([&] {
    const dra::AppGraph app = scenario->value.app();
    const dra::IndependentMetric metric(scenario->value.topology, app);
    *out_comm = dra::optimal_assignment(metric).comm;
  });
}

void dra_compare_options_init(dra_compare_options* options) {
  if (!options) return;
  const dra::CompareParams defaults;
  options->first_seed = defaults.first_seed;
  options->instances = defaults.instances;
  options->hierarchical = defaults.mode == dra::TopologyMode::hierarchical ? 1 : 0;
  options->min_nodes = defaults.min_nodes;
  options->max_nodes = defaults.max_nodes;
  options->servers_per_cluster = defaults.servers_per_cluster;
  options->min_processes = defaults.min_processes;
  options->max_processes = defaults.max_processes;
  options->sequential = defaults.policy == dra::SchedulePolicy::sequential ? 1 : 0;
}

dra_status dra_compare(const dra_compare_options* options, char** out_report,
                       int* out_mismatches) {
  if (auto s = require(options && out_report && out_mismatches, "dra_compare: null argument"))
    return s;
  return guarded([&] {
    dra::CompareParams params;
    params.first_seed = options->first_seed;
    params.instances = options->instances;
    params.mode = options->hierarchical ? dra::TopologyMode::hierarchical
                                        : dra::TopologyMode::tree;
    params.min_nodes = options->min_nodes;
    params.max_nodes = options->max_nodes;
    params.servers_per_cluster = options->servers_per_cluster;
    params.min_processes = options->min_processes;
    params.max_processes = options->max_processes;
    params.policy = options->sequential ? dra::SchedulePolicy::sequential
                                        : dra::SchedulePolicy::concurrent;
    const dra::CompareOutcome outcome = dra::compare_against_reference(params);
    *out_report = copy_text(dra::compare_report_json(outcome));
    *out_mismatches = static_cast<int>(outcome.mismatches.size());
  });
}

}  // extern "C"
