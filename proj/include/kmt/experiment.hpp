#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmt/adversaries.hpp"
#include "kmt/verdict.hpp"

namespace kmt {

// One cell of the experiment matrix: a tester, an instance family with
// fixed parameters, and a trial count under a base seed.
struct ExperimentCell {
  std::string tester;       // line1 | line2 | grid2 | cube1 | tol-full | tol-agnostic
  std::string family;       // generator name
  std::string params_json;  // family and tester parameters
  std::uint64_t trials = 1;
  std::uint64_t base_seed = 0;
};

struct ExperimentConfig {
  std::vector<ExperimentCell> cells;
  unsigned jobs = 1;
  bool timings = false;  // wall time makes records nondeterministic
};

struct ExperimentRecord {
  std::string tester, family;
  std::uint64_t n = 0;
  std::uint32_t d = 1;
  unsigned k = 0;
  double eps1 = 0.0, eps2 = 0.0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string verdict;
  std::uint64_t queries = 0;
  std::string cert_distance;  // "p/q", ">=p/q", or empty
  std::uint64_t millis = 0;
};

struct ExperimentSummary {
  std::string tester, family;
  std::uint64_t trials = 0, accepts = 0;
  double accept_rate = 0.0, wilson_lo = 0.0, wilson_hi = 0.0;
  double mean_queries = 0.0;
  std::uint64_t max_queries = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<ExperimentSummary> summaries;
};

// 95% Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials);

// Runs all cells; trials execute in parallel with derived per-trial seeds
// and are merged back in trial order, so the records are reproducible.
ExperimentResult run_experiment(const ExperimentConfig& config);

// CSV persistence; the header carries a schema version and round-trips.
std::string records_to_csv(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> records_from_csv(const std::string& text);
std::string summaries_to_text(const std::vector<ExperimentSummary>& s);

ExperimentConfig config_from_json(const std::string& text);

// Instantiates a named family with the given parameters.
InstanceBundle make_instance(const std::string& family,
                             const std::string& params_json,
                             std::uint64_t seed);

// Runs a named tester on a bundle (tester parameters from params_json).
Verdict run_tester(const std::string& tester, const InstanceBundle& instance,
                   const std::string& params_json, std::uint64_t seed);

}  // namespace kmt
