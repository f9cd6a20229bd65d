#pragma once

#include <cstdint>
#include <vector>

#include "kmt/function.hpp"
#include "kmt/verdict.hpp"

namespace kmt {

struct CubeParams {
  double sample_mult = 8.0;  // superquery centers: mult / eps
};

// Narrowest symmetric weight window around d/2 whose complement carries at
// most eps * 2^(d-1) points, by exact binomial sums.
struct MiddleWindow {
  unsigned lo = 0, hi = 0;
  std::uint64_t outside_mass = 0;

  bool contains(unsigned w) const { return lo <= w && w <= hi; }
  unsigned width() const { return hi - lo + 1; }
};
MiddleWindow middle_window(unsigned d, double eps);

// All points comparable to x with Hamming weight inside the window
// (including x itself).
std::vector<std::uint64_t> superquery_points(unsigned d, std::uint64_t x,
                                             const MiddleWindow& window);

// One-sided non-adaptive hypercube tester: samples centers from the middle
// levels, issues a superquery around each, and rejects only on a verified
// violating chain among the queried points. Points outside the window take
// the truncation values of the analysis (0 below and, for odd k, 1 above)
// during the search; they can never complete the forbidden pattern, so
// every REJECT carries a chain of genuinely queried points.
Verdict test_cube_one_sided(FunctionOracle& f, unsigned k, double eps,
                            std::uint64_t seed, const CubeParams& params = {});

}  // namespace kmt
