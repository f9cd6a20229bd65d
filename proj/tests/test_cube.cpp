#include <doctest.h>

#include <cmath>

#include "kmt/adversaries.hpp"
#include "kmt/cube.hpp"
#include "kmt/kmono.hpp"
#include "kmt/matching.hpp"
#include "kmt/rng.hpp"

using namespace kmt;

namespace {

std::uint64_t binom(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (unsigned i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

TEST_CASE("middle window masses are exact") {
  const auto w12 = middle_window(12, 0.3);
  // complement mass by direct binomial sums
  std::uint64_t outside = 0;
  for (unsigned w = 0; w <= 12; ++w)
    if (!w12.contains(w)) outside += binom(12, w);
  CHECK(outside == w12.outside_mass);
  CHECK(static_cast<double>(outside) <= 0.3 * 2048.0);
  // window is minimal: shrinking by one level on each side breaks the bound
  if (w12.lo + 1 <= w12.hi - 1) {
    std::uint64_t tighter = 0;
    for (unsigned w = 0; w <= 12; ++w)
      if (w < w12.lo + 1 || w > w12.hi - 1) tighter += binom(12, w);
    CHECK(static_cast<double>(tighter) > 0.3 * 2048.0);
  }

  // eps = 1: half the cube always suffices
  const auto w1 = middle_window(9, 1.0);
  CHECK(static_cast<double>(w1.outside_mass) <= std::pow(2.0, 8.0));
}

TEST_CASE("superquery worked examples") {
  // all-ones corner with the top-level window: just the corner
  const auto top = superquery_points(5, (1u << 5) - 1, MiddleWindow{5, 5, 0});
  CHECK(top == std::vector<std::uint64_t>{(1u << 5) - 1});

  // d=4, window {2}, |x| = 2: comparable weight-2 points equal x
  const auto only = superquery_points(4, 0b0011, MiddleWindow{2, 2, 0});
  CHECK(only == std::vector<std::uint64_t>{0b0011});

  // d=6, window [2,4], |x| = 3: 3 below + x + 3 above... sizes by binomials:
  // below weight 2: C(3,2) = 3; above weight 4: C(3,1) = 3; plus x itself
  const auto mid = superquery_points(6, 0b000111, MiddleWindow{2, 4, 0});
  CHECK(mid.size() == 7);
}

TEST_CASE("superquery size matches the binomial formula") {
  Rng rng(3);
  for (unsigned d : {8u, 10u, 14u}) {
    const auto window = middle_window(d, 0.3);
    for (int rep = 0; rep < 20; ++rep) {
      const std::uint64_t x = rng.below(1ULL << d) &
                              ((1ULL << d) - 1);
      const unsigned wx = __builtin_popcountll(x);
      if (!window.contains(wx)) continue;
      std::uint64_t expect = 0;
      for (unsigned w = window.lo; w <= window.hi; ++w) {
        if (w < wx)
          expect += binom(wx, w);
        else if (w == wx)
          expect += 1;
        else
          expect += binom(d - wx, w - wx);
      }
      CHECK(superquery_points(d, x, window).size() == expect);
    }
  }
}

TEST_CASE("cube tester accepts constants and k-monotone instances") {
  {
    BitTable t(1 << 10, true);
    FunctionOracle o{Function(DomainSpec::cube(10), std::move(t))};
    CHECK(test_cube_one_sided(o, 3, 0.3, 5).accepted());
  }
  Rng rng(7);
  for (int rep = 0; rep < 150; ++rep) {
    const auto b =
        gen_random_k_monotone(DomainSpec::cube(10), 3, rng.next_u64());
    FunctionOracle o(b.fn);
    const Verdict v = test_cube_one_sided(o, 3, 0.3, rng.next_u64());
    CHECK(v.accepted());
  }
}

TEST_CASE("composed instances: structure checks") {
  // monotone g: the composition is k-monotone (full read at d = 8)
  const auto good = gen_compose_gh(make_majority_cube(4), 2, 1);
  CHECK(is_k_monotone(good.fn, 2));
  CHECK(good.k_monotone.value());

  // far g: certified positive matching bound
  const auto far = gen_compose_gh(make_anti_majority_cube(4), 2, 2);
  REQUIRE(far.matching_bound.has_value());
  CHECK(far.matching_bound->value.num > 0);

  // h alone alternates at most k-1 times: rebuild it from the xor structure
  // h(y) = f(0, y) since g(majority)(0) = 0
  const DomainSpec half = DomainSpec::cube(4);
  BitTable ht(16);
  for (std::uint64_t y = 0; y < 16; ++y)
    ht.set(y, good.fn.eval(y << 4));
  CHECK(longest_alternating_chain(Function(half, std::move(ht))) <= 2);
}

TEST_CASE("cube tester rejects certified-far compositions with witnesses") {
  const unsigned d = 12, k = 2;
  const auto far = gen_compose_gh(make_anti_majority_cube(d / 2), k, 3);
  REQUIRE(far.matching_bound.has_value());
  const double lb = far.matching_bound->value.to_double();
  CHECK(lb >= 0.05);
  int rejects = 0;
  const int trials = 60;
  for (int t = 0; t < trials; ++t) {
    FunctionOracle o(far.fn);
    const Verdict v = test_cube_one_sided(o, k, 0.3, derive_seed(91, t));
    if (v.rejected()) {
      ++rejects;
      CHECK(chain_is_violation(far.fn, k, v.witness));
    }
  }
  CHECK(rejects * 3 >= trials * 2);
}

TEST_CASE("truncation never manufactures violations for k-monotone f") {
  Rng rng(11);
  for (unsigned k = 1; k <= 3; ++k)
    for (int rep = 0; rep < 60; ++rep) {
      const auto b =
          gen_random_k_monotone(DomainSpec::cube(6), k, rng.next_u64());
      FunctionOracle o(b.fn);
      CHECK(test_cube_one_sided(o, k, 0.25, rng.next_u64()).accepted());
    }
}
