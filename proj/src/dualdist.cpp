#include "kmt/dualdist.hpp"

#include <cmath>

namespace kmt {

DualDistribution::CappedMass DualDistribution::eval_capped(const Handle& h,
                                                           std::uint64_t w) {
  const std::uint64_t budget = 2 * w + 1;
  std::uint64_t spent = 0;
  const bool v = h.value;

  // Left boundary a: first position of the interval.
  std::uint64_t a = h.position;
  bool left_done = a == 0;
  while (!left_done && spent < budget) {
    ++spent;
    if (eval_(a - 1) != v)
      left_done = true;
    else
      left_done = (--a == 0);
  }
  if (!left_done) return {true, Rational(0, 1), spent};

  // Right boundary b: last position of the interval.
  std::uint64_t b = h.position;
  bool right_done = b == n_ - 1;
  while (!right_done && spent < budget) {
    ++spent;
    if (eval_(b + 1) != v)
      right_done = true;
    else
      right_done = (++b == n_ - 1);
  }
  if (!right_done) return {true, Rational(0, 1), spent};

  return {false,
          Rational(static_cast<std::int64_t>(b - a + 1),
                   static_cast<std::int64_t>(n_)),
          spent};
}

double support_size_estimate(DualDistribution& dual, double eps_prime,
                             std::uint64_t cap_w, Rng& rng,
                             std::uint64_t sample_override) {
  const std::uint64_t s =
      sample_override > 0
          ? sample_override
          : static_cast<std::uint64_t>(
                std::ceil(1.5 / (eps_prime * eps_prime)));
  double sum = 0.0;
  for (std::uint64_t i = 0; i < s; ++i) {
    const auto h = dual.sample(rng);
    const auto m = dual.eval_capped(h, cap_w);
    if (!m.exceeds_cap) sum += static_cast<double>(m.mass.den) / m.mass.num;
  }
  return sum / static_cast<double>(s);
}

}  // namespace kmt
