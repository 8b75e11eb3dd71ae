#ifndef DRA_H
#define DRA_H

/* Decentralized reassignment of communicating processes over tree and
 * cluster networks. Scenarios come from JSON or the built-in generator; a
 * run returns the reached assignment with its trace, cost curve, and final
 * costs. Every call reports failure through a status code and
 * dra_last_error(); no call throws across this boundary. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dra_status {
  DRA_OK = 0,
  DRA_INVALID_ARGUMENT = 1, /* null pointer, unknown id, out-of-domain call */
  DRA_IO = 2,               /* file could not be read or written */
  DRA_PARSE = 3,            /* input is not JSON */
  DRA_VALIDATION = 4,       /* scenario shape or consistency check failed */
  DRA_CONFIG = 5,           /* parameter outside its legal range */
  DRA_BUDGET_EXCEEDED = 6,  /* enumeration refused; space too large */
  DRA_INTERNAL = 7          /* consistency check tripped; a bug, not bad input */
} dra_status;

typedef struct dra_scenario dra_scenario;
typedef struct dra_result dra_result;

/* Message of the most recent failing call on this thread; "" when the last
 * call succeeded. The pointer stays valid until the next call on the same
 * thread. */
const char* dra_last_error(void);

/* Releases a string this library handed out. */
void dra_string_free(char* text);

const char* dra_version(void);

dra_status dra_scenario_from_file(const char* path, dra_scenario** out);
dra_status dra_scenario_from_json(const char* text, dra_scenario** out);

typedef struct dra_gen_options {
  uint64_t seed;
  int hierarchical;        /* 0 generates a tree */
  int node_count;          /* tree nodes, or clusters when hierarchical */
  int servers_per_cluster; /* hierarchical only; >= 1 */
  int process_count;
  int64_t max_volume;      /* per-pair traffic ceiling, bytes */
  int traffic_percent;     /* chance a process pair talks, 0..100 */
  int schedule_windows;    /* later traffic patterns to fold in, >= 0 */
} dra_gen_options;

/* Fills *options with the generator defaults. */
void dra_gen_options_init(dra_gen_options* options);

dra_status dra_scenario_generate(const dra_gen_options* options, dra_scenario** out);
dra_status dra_scenario_to_json(const dra_scenario* scenario, char** out_text);
void dra_scenario_free(dra_scenario* scenario);

typedef struct dra_run_options {
  int sequential;   /* 0 runs concurrent rounds */
  int singles_only; /* keep the single-process mechanism everywhere */
  int max_rounds;   /* <= 0 picks the default (10000) */
  double gamma;     /* inertia factor; <= 0 keeps the scenario's value */
  double alpha;     /* smoothing factor; <= 0 keeps the scenario's value */
  uint64_t seed;    /* recorded in the trace header */
} dra_run_options;

/* Fills *options with the run defaults. */
void dra_run_options_init(dra_run_options* options);

dra_status dra_run(const dra_scenario* scenario, const dra_run_options* options,
                   dra_result** out);

int dra_result_converged(const dra_result* result);
int dra_result_rounds(const dra_result* result);
int dra_result_migrations(const dra_result* result);
int64_t dra_result_initial_comm(const dra_result* result);
int64_t dra_result_final_comm(const dra_result* result);
int64_t dra_result_exec_cost(const dra_result* result);

/* JSON lines: header, one line per migration or traffic transition, result. */
dra_status dra_result_trace(const dra_result* result, char** out_text);
/* CSV: round,exec,comm,total,migrations_applied. */
dra_status dra_result_cost_curve(const dra_result* result, char** out_text);
/* JSON object with the final assignment and cost summary. */
dra_status dra_result_assignment(const dra_result* result, char** out_text);
void dra_result_free(dra_result* result);

/* Communication cost of the enumerated best placement. */
dra_status dra_oracle_optimal(const dra_scenario* scenario, int64_t* out_comm);

typedef struct dra_compare_options {
  uint64_t first_seed;
  int instances;
  int hierarchical;
  int min_nodes;
  int max_nodes;
  int servers_per_cluster;
  int min_processes;
  int max_processes;
  int sequential;
} dra_compare_options;

/* Fills *options with the comparison defaults. */
void dra_compare_options_init(dra_compare_options* options);

/* Generates instances and checks each run against its reference: the
 * enumerated optimum on trees, the no-worse-than-start bound between
 * clusters. *out_mismatches receives the number of failed instances and
 * *out_report the JSON report. */
dra_status dra_compare(const dra_compare_options* options, char** out_report,
                       int* out_mismatches);

#ifdef __cplusplus
}
#endif

#endif /* DRA_H */
