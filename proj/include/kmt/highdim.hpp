#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kmt/coarsen.hpp"
#include "kmt/distance.hpp"
#include "kmt/function.hpp"
#include "kmt/rng.hpp"
#include "kmt/verdict.hpp"

namespace kmt {

struct HighDimParams {
  std::uint64_t max_total_queries = 1ULL << 26;
  std::uint64_t enumeration_points = 22;    // filter enumeration cap, m^d
  std::uint64_t learner_max_blocks = 4096;  // regression aggregation cap
  double learner_sample_mult = 2.0;         // samples: mult * |S| / tau^2
  bool least_squares_path = false;          // fast, non-conforming fit
  std::uint32_t m_override = 0;             // 0 = derive m from the formula
};

// Visits every k-monotone table on the domain exactly once. Lines are
// generated directly from their run structure; other domains are filtered
// enumerations capped by `budget` points.
void enumerate_k_monotone(const DomainSpec& dom, unsigned k,
                          const std::function<void(const BitTable&)>& visit,
                          std::uint64_t filter_budget = 22);
std::uint64_t count_k_monotone(const DomainSpec& dom, unsigned k,
                               std::uint64_t filter_budget = 22);

// Cheapest k-monotone table under per-point integer assignment costs.
// Lines use the run DP, k = 1 uses the cut, small domains enumerate.
struct BlockFit {
  std::int64_t cost;
  BitTable values;
};
BlockFit fit_k_monotone_table(const DomainSpec& dom,
                              std::span<const std::int64_t> cost0,
                              std::span<const std::int64_t> cost1, unsigned k,
                              std::uint64_t enumeration_points = 22);

// Fully tolerant tester: estimates the label distribution on every block
// and accepts iff some k-monotone block function fits it within
// eps1 + alpha/2. Queries exactly (number of blocks) * t.
Verdict tolerant_test_full(FunctionOracle& f, unsigned k, double eps1,
                           double eps2, std::uint64_t seed,
                           const HighDimParams& params = {});

// Degree-t polynomial-regression hypothesis over the block domain.
struct RegressionHypothesis {
  DomainSpec block_domain;
  unsigned degree = 0;
  std::vector<std::uint64_t> feature_alphas;
  std::vector<double> coeffs;
  std::vector<double> p;  // fitted polynomial per block
  BitTable h;             // 1{p >= 1/2}
};

// Agnostic learner: draws labelled block samples, fits a degree-t
// polynomial over the indicator features by weighted l1 regression (LP),
// thresholds at 1/2.
RegressionHypothesis agnostic_learn(
    const DomainSpec& block_domain, unsigned degree,
    const std::function<std::pair<std::uint64_t, bool>(Rng&)>& sampler,
    std::uint64_t samples, Rng& rng, bool least_squares_path = false);

// Tolerant tester via agnostic learning; requires eps2 > 3 eps1.
Verdict tolerant_test_agnostic(FunctionOracle& f, unsigned k, double eps1,
                               double eps2, std::uint64_t seed,
                               const HighDimParams& params = {});

}  // namespace kmt
