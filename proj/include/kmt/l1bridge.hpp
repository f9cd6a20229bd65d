#pragma once

#include <cstdint>
#include <vector>

#include "kmt/function.hpp"
#include "kmt/highdim.hpp"
#include "kmt/rational.hpp"
#include "kmt/verdict.hpp"

namespace kmt {

// A [0,1]-valued function with exact rational values.
struct RealFunction {
  DomainSpec domain;
  std::vector<Rational> values;
};

// T(f)(x, t) = 1{f(x) >= 1 - t}.
bool threshold_lift(const Rational& fx, const Rational& t);

// Slice j in [1, m] of the lift onto the extra axis, with the half-open
// convention 1{f(x) >= 1 - (j-1)/m} that makes the discrete sum and
// distance identities exact on grid-valued functions.
bool lifted_slice_bit(const Rational& fx, unsigned j, unsigned m);

// Per-point ceiling rounding onto {0, 1/m, ..., 1}.
RealFunction round_m(const RealFunction& f, unsigned m);

// Boolean view of T(round_m(f)) on the product domain dims x [m].
// Each query costs one lookup of f.
Function lifted_boolean(const RealFunction& f, unsigned m);

// Exact normalized L1 distance to the monotone (non-decreasing) class with
// values in {0, 1/m, ..., 1}, by enumeration (small domains only).
Rational l1_to_graded_monotone_exact(const RealFunction& f, unsigned m,
                                     std::uint64_t state_budget = 2'000'000);

// Exact L1 distance of a line function to the real monotone class via
// isotonic median regression (values stay on f's own grid).
Rational l1_to_monotone_line_exact(const RealFunction& f);

// Prop-style equality: L1(f, graded monotone) equals the Hamming distance
// of the lifted Boolean function to monotone, both exact.
bool l1_equals_hamming_check(const RealFunction& f, unsigned m,
                             std::uint64_t point_budget = 24);

// Tolerant L1 monotonicity tester: rounds with m = ceil(4/(eps2-eps1)),
// lifts the range into one extra dimension and runs the chosen tolerant
// Boolean tester with k = 1 at thresholds (eps1 + 1/m, eps2 - 1/m).
enum class L1Engine { full, agnostic };
Verdict tolerant_l1_test_monotone(const RealFunction& f, double eps1,
                                  double eps2, std::uint64_t seed,
                                  L1Engine engine,
                                  const HighDimParams& params = {});

}  // namespace kmt
