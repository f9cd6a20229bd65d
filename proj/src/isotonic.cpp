#include "kmt/isotonic.hpp"

namespace kmt {

double l1_isotonic_exact(const std::vector<double>& xs, bool non_increasing) {
  if (xs.empty()) return 0.0;
  const auto res = isotonic_l1_fit(xs, non_increasing);
  return res.total_deviation / static_cast<double>(xs.size());
}

}  // namespace kmt
