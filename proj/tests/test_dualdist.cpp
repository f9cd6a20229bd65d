#include <doctest.h>

#include <cmath>

#include "kmt/dualdist.hpp"
#include "kmt/rng.hpp"

using namespace kmt;

namespace {

DualDistribution line_dual(const std::vector<int>& bits) {
  const auto vals = std::make_shared<std::vector<int>>(bits);
  return DualDistribution(bits.size(), [vals](std::uint64_t i) {
    return (*vals)[i] == 1;
  });
}

}  // namespace

TEST_CASE("sampling lands in intervals with their exact masses") {
  // f = (1,1,1,0,0,0,0,1,1,1,1,1) on [12]: interval masses 1/4, 1/3, 5/12
  const std::vector<int> f{1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  auto dual = line_dual(f);
  Rng rng(3);
  std::uint64_t c0 = 0, c1 = 0, c2 = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto h = dual.sample(rng);
    if (h.position < 3)
      ++c0;
    else if (h.position < 7)
      ++c1;
    else
      ++c2;
  }
  CHECK(std::fabs(c0 / double(draws) - 1.0 / 4) < 0.01);
  CHECK(std::fabs(c1 / double(draws) - 1.0 / 3) < 0.01);
  CHECK(std::fabs(c2 / double(draws) - 5.0 / 12) < 0.01);
}

TEST_CASE("constant function has a single full-mass interval") {
  auto dual = line_dual(std::vector<int>(8, 1));
  Rng rng(5);
  const auto h = dual.sample(rng);
  const auto m = dual.eval_capped(h, 8);
  CHECK(!m.exceeds_cap);
  CHECK(m.mass == Rational(1, 1));
}

TEST_CASE("capped evaluation worked examples") {
  // interval of length 3 with w=10 -> 3/N exactly
  std::vector<int> f(20, 0);
  f[5] = f[6] = f[7] = 1;
  auto dual = line_dual(f);
  const auto m = dual.eval_capped({6, true}, 10);
  CHECK(!m.exceeds_cap);
  CHECK(m.mass == Rational(3, 20));

  // interval of length 2w+5 in the middle -> EXCEEDS_CAP
  const std::uint64_t w = 4;
  std::vector<int> g(40, 0);
  for (int i = 10; i < 10 + 2 * 4 + 5; ++i) g[i] = 1;
  auto dual2 = line_dual(g);
  const auto m2 = dual2.eval_capped({16, true}, w);
  CHECK(m2.exceeds_cap);
  CHECK(m2.queries <= 2 * w + 1);
}

TEST_CASE("estimator concentrates on explicit distributions over [64]") {
  // support sizes from 1 to ~16, min mass 1/64
  Rng mk(7);
  int good = 0;
  const int runs = 100;
  for (int run = 0; run < runs; ++run) {
    // pick interval lengths summing to 64
    std::vector<int> f;
    int value = 1, support = 0;
    while (f.size() < 64) {
      const int len =
          static_cast<int>(1 + mk.below(std::min<std::uint64_t>(16, 64 - f.size())));
      for (int i = 0; i < len; ++i) f.push_back(value);
      value = 1 - value;
      ++support;
    }
    auto dual = line_dual(f);
    Rng rng(derive_seed(99, run));
    const double est = support_size_estimate(dual, 0.25, 64, rng);
    if (std::fabs(est - support) <= 16.0) ++good;
  }
  CHECK(good >= 90);
}

TEST_CASE("point mass estimates near one") {
  auto dual = line_dual(std::vector<int>(32, 0));
  Rng rng(11);
  const double est = support_size_estimate(dual, 0.25, 32, rng);
  CHECK(std::fabs(est - 1.0) <= 0.25 * 32);
  CHECK(est > 0.5);
}

TEST_CASE("cap bias is downward only") {
  // one long interval above the cap: the capped estimator can only shrink
  std::vector<int> f(64, 0);
  for (int i = 0; i < 40; ++i) f[i] = 1;  // intervals: 40, 24
  auto dual_capped = line_dual(f);
  auto dual_free = line_dual(f);
  Rng r1(13), r2(13);
  const double capped = support_size_estimate(dual_capped, 0.2, 10, r1, 4000);
  const double uncapped = support_size_estimate(dual_free, 0.2, 64, r2, 4000);
  CHECK(capped <= uncapped + 1e-9);
  CHECK(uncapped == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("uniform support over [8] estimates within 2") {
  // all interval masses 1/8: estimate within 0.25*8 = 2 of the support 8
  const std::vector<int> alt{1, 0, 1, 0, 1, 0, 1, 0};
  int good = 0;
  for (int run = 0; run < 100; ++run) {
    auto dual = line_dual(alt);
    Rng rng(derive_seed(55, run));
    const double est = support_size_estimate(dual, 0.25, 8, rng);
    if (est >= 6.0 && est <= 10.0) ++good;
  }
  CHECK(good >= 90);
}
