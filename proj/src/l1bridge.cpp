#include "kmt/l1bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kmt/distance.hpp"
#include "kmt/errors.hpp"
#include "kmt/isotonic.hpp"

namespace kmt {

bool threshold_lift(const Rational& fx, const Rational& t) {
  return fx >= Rational(1, 1) - t;
}

bool lifted_slice_bit(const Rational& fx, unsigned j, unsigned m) {
  // 1{f >= (m - j + 1)/m}
  return fx >= Rational(static_cast<std::int64_t>(m) - j + 1, m);
}

RealFunction round_m(const RealFunction& f, unsigned m) {
  if (m < 1) throw PreconditionViolated("round_m: m >= 1");
  RealFunction out{f.domain, {}};
  out.values.reserve(f.values.size());
  for (const Rational& v : f.values) {
    // ceil(m v) / m
    const std::int64_t num = v.num * static_cast<std::int64_t>(m);
    const std::int64_t c = (num + v.den - 1) / v.den;
    out.values.push_back(Rational(c, m));
  }
  return out;
}

Function lifted_boolean(const RealFunction& f, unsigned m) {
  std::vector<std::uint32_t> dims = f.domain.sides();
  dims.push_back(m);
  const DomainSpec lifted = DomainSpec::product(dims);
  const DomainSpec base = f.domain;
  const std::uint64_t base_size = base.size();
  // Slice values of the rounded function: ceil(m f(x)) >= m - j0.
  std::vector<std::int64_t> level(base_size);
  for (std::uint64_t i = 0; i < base_size; ++i) {
    const Rational& v = f.values[i];
    level[i] = (v.num * static_cast<std::int64_t>(m) + v.den - 1) / v.den;
  }
  return Function(lifted, [level = std::move(level), base_size,
                           m](std::uint64_t idx) {
    const std::uint64_t x = idx % base_size;
    const std::uint64_t j0 = idx / base_size;
    return level[x] >= static_cast<std::int64_t>(m) -
                           static_cast<std::int64_t>(j0);
  });
}

namespace {

// DFS over monotone assignments with values in {0, 1/m, ..., 1}: each point
// in index order must be >= all its covering predecessors.
void graded_monotone_dfs(const DomainSpec& dom, unsigned m,
                         std::vector<std::uint32_t>& assign, std::uint64_t pos,
                         const std::vector<std::int64_t>& fnum,
                         std::int64_t partial, std::int64_t& best,
                         std::uint64_t& states, std::uint64_t budget) {
  if (partial >= best) return;  // cannot improve
  if (pos == dom.size()) {
    best = partial;
    return;
  }
  if (++states > budget)
    throw BudgetExceeded("l1_to_graded_monotone_exact: state budget");
  std::uint32_t lo = 0;
  for (std::uint32_t a = 0; a < dom.dim(); ++a)
    if (dom.coord(pos, a) > 0)
      lo = std::max(lo, assign[pos - dom.stride(a)]);
  for (std::uint32_t v = lo; v <= m; ++v) {
    assign[pos] = v;
    const std::int64_t cost =
        std::abs(fnum[pos] - static_cast<std::int64_t>(v));
    graded_monotone_dfs(dom, m, assign, pos + 1, fnum, partial + cost, best,
                        states, budget);
  }
  assign[pos] = lo;
}

}  // namespace

Rational l1_to_graded_monotone_exact(const RealFunction& f, unsigned m,
                                     std::uint64_t state_budget) {
  const DomainSpec& dom = f.domain;
  // Work in units of 1/m: values must lie on the grid.
  std::vector<std::int64_t> fnum(dom.size());
  for (std::uint64_t i = 0; i < dom.size(); ++i) {
    const Rational& v = f.values[i];
    if ((v.num * static_cast<std::int64_t>(m)) % v.den != 0)
      throw PreconditionViolated("l1_to_graded_monotone_exact: off-grid value");
    fnum[i] = v.num * static_cast<std::int64_t>(m) / v.den;
  }
  std::vector<std::uint32_t> assign(dom.size(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::uint64_t states = 0;
  graded_monotone_dfs(dom, m, assign, 0, fnum, 0, best, states, state_budget);
  return Rational(best, static_cast<std::int64_t>(dom.size()) * m);
}

Rational l1_to_monotone_line_exact(const RealFunction& f) {
  if (f.domain.kind() != DomainKind::line)
    throw PreconditionViolated("l1_to_monotone_line_exact: line only");
  const auto res = isotonic_l1_fit(f.values, /*non_increasing=*/false);
  return res.total_deviation * Rational(1, static_cast<std::int64_t>(
                                               f.domain.size()));
}

bool l1_equals_hamming_check(const RealFunction& f, unsigned m,
                             std::uint64_t point_budget) {
  const std::uint64_t lifted_points = f.domain.size() * m;
  if (lifted_points > point_budget)
    throw BudgetExceeded("l1_equals_hamming_check: point budget");
  const Rational left = l1_to_graded_monotone_exact(f, m);

  const Function lifted = lifted_boolean(f, m);
  // Same mass scale on both sides: per (point, slice) pair.
  const Rational right = exact_distance_bruteforce(lifted, 1).value;
  return left == right;
}

Verdict tolerant_l1_test_monotone(const RealFunction& f, double eps1,
                                  double eps2, std::uint64_t seed,
                                  L1Engine engine,
                                  const HighDimParams& params) {
  if (!(0.0 <= eps1 && eps1 < eps2 && eps2 <= 1.0))
    throw PreconditionViolated("tolerant_l1_test_monotone: bad thresholds");
  if (engine == L1Engine::agnostic && !(eps2 > 3.0 * eps1))
    throw PreconditionViolated(
        "tolerant_l1_test_monotone: agnostic engine needs eps2 > 3 eps1");
  // The rounding slack 1/m tightens both thresholds. The agnostic engine
  // consumes eps2' - 3 eps1' = eps2 - 3 eps1 - 4/m, so it needs a finer
  // rounding than the full engine's 4/(eps2 - eps1) to keep half its gap.
  const unsigned m = static_cast<unsigned>(
      engine == L1Engine::agnostic
          ? std::ceil(8.0 / (eps2 - 3.0 * eps1))
          : std::ceil(4.0 / (eps2 - eps1)));
  const double lo = eps1 + 1.0 / m;
  const double hi = eps2 - 1.0 / m;

  FunctionOracle oracle(lifted_boolean(f, m));
  Verdict v = engine == L1Engine::full
                  ? tolerant_test_full(oracle, 1, lo, hi, seed, params)
                  : tolerant_test_agnostic(oracle, 1, lo, hi, seed, params);
  v.note = "lifted-m=" + std::to_string(m) +
           (v.note.empty() ? "" : "," + v.note);
  return v;
}

}  // namespace kmt
