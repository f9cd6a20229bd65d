#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kmt/domain.hpp"
#include "kmt/function.hpp"
#include "kmt/rational.hpp"

namespace kmt {

// Exact normalized distance to the k-monotone class, or a certified lower
// bound backed by a matching of pairwise disjoint violating chains.
struct DistanceValue {
  Rational value;
  bool is_lower_bound = false;
  std::vector<std::vector<std::uint64_t>> matching;
};

// Cheapest sequence on [n] whose alternating-from-1 run count is at most k,
// under per-position assignment costs. State l in {0..k} is the number of
// runs counted from the first 1-run (l = 0 while the prefix is all zeros),
// which determines the current value: runs alternate 1,0,1,... from l = 1.
template <typename Cost>
struct LineFitResult {
  Cost cost;
  std::vector<std::uint8_t> values;
};

LineFitResult<std::int64_t> fit_k_alternating_line(
    std::span<const std::int64_t> cost0, std::span<const std::int64_t> cost1,
    unsigned k);

// Exact distance on the line via the run-count DP; O(n k) time.
DistanceValue exact_distance_line_dp(const Function& f, unsigned k);

// Exact distance by flip-set enumeration in increasing cardinality.
DistanceValue exact_distance_bruteforce(const Function& f, unsigned k,
                                        const ReadBudget& budget = {});

// Exact distance to the monotone class (k = 1) on any hypergrid, via a
// minimum s-t cut over the Hasse diagram. Also returns a closest function.
struct MonotoneFit {
  std::int64_t cost;
  BitTable values;
};
MonotoneFit fit_monotone_mincut(const DomainSpec& dom,
                                std::span<const std::int64_t> cost0,
                                std::span<const std::int64_t> cost1);
DistanceValue exact_distance_monotone_mincut(const Function& f,
                                             const ReadBudget& budget = {});

// Dispatch: lines use the DP, k = 1 uses the cut, anything else enumerates.
DistanceValue exact_distance(const Function& f, unsigned k,
                             const ReadBudget& budget = {});

}  // namespace kmt
