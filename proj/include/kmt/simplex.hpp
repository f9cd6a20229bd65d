#pragma once

#include <vector>

namespace kmt {

// Dense two-phase simplex for min c.x s.t. Ax = b, x >= 0, with Bland's
// rule (terminates, deterministic). Sizes here are tiny: the l1 fits it
// backs aggregate samples into at most a few hundred distinct points.
struct LpResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

LpResult solve_lp_standard(const std::vector<std::vector<double>>& A,
                           const std::vector<double>& b,
                           const std::vector<double>& c);

// Weighted l1 linear fit: minimize sum_i w_i |(F x)_i - y_i| over x.
// Rows of F are feature vectors; w_i >= 0.
std::vector<double> l1_regression(const std::vector<std::vector<double>>& F,
                                  const std::vector<double>& y,
                                  const std::vector<double>& w);

// Ordinary least squares on the same data (weighted); the fast,
// non-conforming fallback path.
std::vector<double> least_squares(const std::vector<std::vector<double>>& F,
                                  const std::vector<double>& y,
                                  const std::vector<double>& w);

}  // namespace kmt
