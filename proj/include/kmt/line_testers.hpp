#pragma once

#include <cstdint>

#include "kmt/coarsen.hpp"
#include "kmt/function.hpp"
#include "kmt/verdict.hpp"

namespace kmt {

// Knobs of both line testers. The one-sided constants are the ones the
// soundness argument needs; the two-sided pipeline constants are calibrated
// (the asymptotic analysis hides them) and recorded here.
struct LineTesterParams {
  // one-sided
  double block_count_mult = 50.0;   // K = 50 k / eps blocks
  double sample_mean_mult = 30.0;   // Poisson mean m = 30 k / eps
  double full_read_factor = 100.0;  // read everything when eps <= 100 k / n

  // two-sided
  double delegate_mult = 1.0;      // delegate when k <= delegate_mult / eps
  double grid_block_mult = 4.0;    // m = 4 k / eps blocks
  double cap_mult = 20.0;          // cap window w = 20 C / eps, C = 4 / eps
  double est_sample_mult = 16.0;   // estimator samples: mult * (10 / eps)^2
  double majority_mult = 15.0;     // per-g-query f-samples: mult / eps * ln(q)
  double delta = 0.1;              // stage failure budget
  VariableBlockParams variable_block{};
};

// One-sided non-adaptive tester, O(k/eps) queries: learns the endpoint
// coarsening exactly, rejects a non-k-monotone repair outright, then rejects
// when giveaway points show up in k+1 distinct blocks. Every REJECT carries
// a violating chain assembled from queried points.
Verdict test_line_one_sided(FunctionOracle& f, unsigned k, double eps,
                            std::uint64_t seed,
                            const LineTesterParams& params = {});

// Two-sided tester with query count independent of k for fixed eps:
// variable-block screening, majority-simulated access to the block function
// g on [m], and support-size estimation of the interval distribution of g.
// Reads the function outright when the sampling plan exceeds the domain.
Verdict test_line_two_sided(FunctionOracle& f, unsigned k, double eps,
                            std::uint64_t seed,
                            const LineTesterParams& params = {});

}  // namespace kmt
