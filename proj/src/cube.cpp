#include "kmt/cube.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "kmt/errors.hpp"
#include "kmt/kmono.hpp"
#include "kmt/rng.hpp"

namespace kmt {

namespace {

std::vector<std::uint64_t> binomials(unsigned d) {
  std::vector<std::uint64_t> c(d + 1);
  c[0] = 1;
  for (unsigned w = 1; w <= d; ++w) c[w] = c[w - 1] * (d - w + 1) / w;
  return c;
}

}  // namespace

MiddleWindow middle_window(unsigned d, double eps) {
  if (d < 1 || d > 62 || eps <= 0.0 || eps > 1.0)
    throw PreconditionViolated("middle_window: need 1 <= d <= 62, eps in (0,1]");
  const auto binom = binomials(d);
  const std::uint64_t total = 1ULL << d;
  const double budget = eps * std::pow(2.0, static_cast<double>(d) - 1.0);

  for (unsigned r = d % 2 ? 1 : 0;; ++r) {
    const unsigned lo = (d + 1) / 2 >= r ? (d + 1) / 2 - r : 0;
    const unsigned hi = std::min(d, d / 2 + r);
    std::uint64_t inside = 0;
    for (unsigned w = lo; w <= hi; ++w) inside += binom[w];
    const std::uint64_t outside = total - inside;
    if (static_cast<double>(outside) <= budget)
      return MiddleWindow{lo, hi, outside};
    if (lo == 0 && hi == d)
      return MiddleWindow{0, d, 0};
  }
}

std::vector<std::uint64_t> superquery_points(unsigned d, std::uint64_t x,
                                             const MiddleWindow& window) {
  std::vector<std::uint64_t> out;
  const unsigned wx = static_cast<unsigned>(__builtin_popcountll(x));

  // Below: submasks of x. The standard submask walk visits each once.
  for (std::uint64_t s = x;; s = (s - 1) & x) {
    const unsigned w = static_cast<unsigned>(__builtin_popcountll(s));
    if (window.contains(w)) out.push_back(s);
    if (s == 0) break;
  }
  // Above: x plus a submask of the complement (excluding the empty one,
  // which is x itself and already collected).
  const std::uint64_t comp = ((d == 64 ? ~0ULL : (1ULL << d) - 1)) & ~x;
  for (std::uint64_t s = comp; s != 0; s = (s - 1) & comp) {
    const unsigned w = wx + static_cast<unsigned>(__builtin_popcountll(s));
    if (window.contains(w)) out.push_back(x | s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Verdict test_cube_one_sided(FunctionOracle& f, unsigned k, double eps,
                            std::uint64_t seed, const CubeParams& params) {
  const DomainSpec& dom = f.domain();
  if (dom.kind() != DomainKind::cube)
    throw PreconditionViolated("test_cube_one_sided: cube domains only");
  const unsigned d = dom.dim();
  if (d > 24) throw BudgetExceeded("test_cube_one_sided: dimension budget");
  const std::uint64_t q0 = f.queries();

  const MiddleWindow window = middle_window(d, eps);
  const auto binom = binomials(d);
  std::uint64_t window_mass = 0;
  for (unsigned w = window.lo; w <= window.hi; ++w) window_mass += binom[w];

  Rng rng(seed);
  const std::uint64_t samples =
      static_cast<std::uint64_t>(std::ceil(params.sample_mult / eps));

  // Uniform point of the middle levels: weight proportional to the level
  // size, then a uniform point of that weight.
  auto sample_center = [&]() {
    std::uint64_t r = rng.below(window_mass);
    unsigned w = window.lo;
    while (r >= binom[w]) {
      r -= binom[w];
      ++w;
    }
    std::uint64_t mask = 0;
    unsigned picked = 0;
    for (unsigned pos = 0; pos < d && picked < w; ++pos) {
      // choose each position with probability (w - picked)/(d - pos)
      if (rng.below(d - pos) < w - picked) {
        mask |= 1ULL << pos;
        ++picked;
      }
    }
    return mask;
  };

  std::unordered_map<std::uint64_t, bool> queried;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::uint64_t center = sample_center();
    for (std::uint64_t p : superquery_points(d, center, window))
      if (!queried.count(p)) queried.emplace(p, f.query(p));
  }

  // Violation search over queried points, with the truncation values filled
  // in outside the window (0 below; above: 1 for odd k, 0 for even k).
  const int above_value = k % 2 ? 1 : 0;
  const auto value = [&](std::uint64_t x) -> int {
    const unsigned w = static_cast<unsigned>(__builtin_popcountll(x));
    if (w < window.lo) return 0;
    if (w > window.hi) return above_value;
    const auto it = queried.find(x);
    return it == queried.end() ? kAbsent : (it->second ? 1 : 0);
  };

  Verdict v;
  v.seed = seed;
  if (auto chain = find_violation_marked(dom, value, k)) {
    // The truncation can never supply a chain point (see header), so the
    // witness is made of genuinely queried points.
    for (std::uint64_t p : *chain)
      if (!queried.count(p))
        throw std::logic_error("cube tester: virtual point in witness");
    v.decision = Decision::REJECT;
    v.witness = std::move(*chain);
    v.note = "superquery-violation";
  }
  v.queries = f.queries() - q0;
  return v;
}

}  // namespace kmt
