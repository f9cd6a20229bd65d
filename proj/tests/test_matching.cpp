#include <doctest.h>

#include "kmt/adversaries.hpp"
#include "kmt/distance.hpp"
#include "kmt/kmono.hpp"
#include "kmt/matching.hpp"
#include "kmt/rng.hpp"

using namespace kmt;

namespace {

Function table_fn(const DomainSpec& dom, std::uint64_t mask) {
  BitTable t(dom.size());
  for (std::uint64_t i = 0; i < dom.size(); ++i) t.set(i, (mask >> i) & 1);
  return Function(dom, std::move(t));
}

bool disjoint(const std::vector<std::vector<std::uint64_t>>& chains) {
  std::vector<std::uint64_t> all;
  for (const auto& c : chains) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

}  // namespace

TEST_CASE("greedy matching worked examples") {
  // monotone f -> empty matching, bound 0
  const auto m1 =
      greedy_violation_matching(table_fn(DomainSpec::line(6), 0b110000), 1);
  CHECK(m1.matching.empty());
  CHECK(m1.value == Rational(0, 1));

  // (1,0) with k=1: the only chain is a violation
  const auto m2 = greedy_violation_matching(table_fn(DomainSpec::line(2), 0b01), 1);
  CHECK(m2.matching.size() == 1);
  CHECK(m2.value == Rational(1, 2));

  // (1,0,1,0,1,0), k=2: one disjoint 3-chain; 1/6 <= exact 1/3 <= 1/2
  const Function f6 = table_fn(DomainSpec::line(6), 0b010101);
  const auto m3 = greedy_violation_matching(f6, 2);
  CHECK(m3.matching.size() == 1);
  CHECK(m3.value == Rational(1, 6));
  const auto exact = exact_distance_line_dp(f6, 2).value;
  CHECK(exact == Rational(1, 3));
  CHECK(m3.value <= exact);
  CHECK(exact <= Rational(3 * 1, 6));
}

TEST_CASE("exact matching worked examples") {
  CHECK(max_violation_matching_exact(
            table_fn(DomainSpec::line(4), 0b1111), 1) == 0);
  CHECK(max_violation_matching_exact(
            table_fn(DomainSpec::line(4), 0b0101), 1) == 2);
}

TEST_CASE("greedy chains are genuine pairwise-disjoint violations") {
  Rng rng(3);
  for (const auto& dom : {DomainSpec::line(12), DomainSpec::grid(3, 2),
                          DomainSpec::cube(3)}) {
    for (int rep = 0; rep < 100; ++rep) {
      const Function f = table_fn(dom, rng.below(1ULL << dom.size()));
      for (unsigned k = 1; k <= 2; ++k) {
        const auto m = greedy_violation_matching(f, k);
        CHECK(disjoint(m.matching));
        for (const auto& c : m.matching) CHECK(chain_is_violation(f, k, c));
        // maximal matching <-> no violation among unused points: certified
        // k-monotone iff empty
        if (m.matching.empty()) CHECK(is_k_monotone(f, k));
      }
    }
  }
}

TEST_CASE("matching bound on random grid instances") {
  Rng rng(7);
  const DomainSpec dom = DomainSpec::grid(3, 2);
  for (int rep = 0; rep < 150; ++rep) {
    const Function f = table_fn(dom, rng.below(512));
    for (unsigned k = 1; k <= 2; ++k) {
      const auto eps = exact_distance_bruteforce(f, k).value;
      const auto mm = max_violation_matching_exact(f, k);
      CHECK(Rational(mm, 1) >= eps * Rational(9, k + 1));
    }
  }
}

TEST_CASE("greedy matching scales to dense far instances") {
  const auto stripes = gen_stripes2(64, 2, 0);
  REQUIRE(stripes.matching_bound.has_value());
  const auto& m = *stripes.matching_bound;
  CHECK(disjoint(m.matching));
  for (const auto& c : m.matching) CHECK(chain_is_violation(stripes.fn, 2, c));
  // distance >= |M|/n^2 should certify real farness here
  CHECK(m.value.to_double() > 0.1);
}

TEST_CASE("extension worked examples") {
  // X = domain: a k-monotone function extends to itself
  const DomainSpec dom = DomainSpec::line(4);
  std::vector<int> full{0, 1, 1, 0};
  const BitTable same = extend_partial(dom, full, 2);
  for (int i = 0; i < 4; ++i) CHECK(same.get(i) == (full[i] == 1));

  // X = {1,3} in [3] with f(1)=1, f(3)=0
  const DomainSpec line3 = DomainSpec::line(3);
  std::vector<int> part{1, kAbsent, 0};
  const BitTable ext = extend_partial(line3, part, 2);
  CHECK(ext.get(0));
  CHECK(!ext.get(2));
  CHECK(is_k_monotone(Function(line3, ext), 2));

  // same X with k=1 is already a violation
  CHECK_THROWS_AS(extend_partial(line3, part, 1), PreconditionViolated);
}

TEST_CASE("extension is exhaustively correct on the square grid") {
  const DomainSpec dom = DomainSpec::grid(3, 2);
  Rng rng(11);
  for (int rep = 0; rep < 400; ++rep) {
    std::vector<int> partial(9);
    for (auto& v : partial) {
      const auto r = rng.below(3);
      v = r == 2 ? kAbsent : static_cast<int>(r);
    }
    for (unsigned k = 1; k <= 2; ++k) {
      const auto pv = [&partial](std::uint64_t i) { return partial[i]; };
      const bool ok = longest_alternating_chain_marked(dom, pv) <= k;
      if (!ok) {
        CHECK_THROWS_AS(extend_partial(dom, partial, k), PreconditionViolated);
        continue;
      }
      const BitTable ext = extend_partial(dom, partial, k);
      for (std::uint64_t i = 0; i < 9; ++i)
        if (partial[i] >= 0) CHECK(ext.get(i) == (partial[i] == 1));
      CHECK(is_k_monotone(Function(dom, ext), k));
    }
  }
}

TEST_CASE("violation hypergraph is empty exactly for members") {
  Rng rng(13);
  const DomainSpec dom = DomainSpec::grid(3, 2);
  for (int rep = 0; rep < 100; ++rep) {
    const Function f = table_fn(dom, rng.below(512));
    for (unsigned k = 1; k <= 2; ++k) {
      const bool member = is_k_monotone(f, k);
      CHECK(enumerate_violating_chains(f, k).empty() == member);
      CHECK((exact_distance_bruteforce(f, k).value.num == 0) == member);
    }
  }
}

TEST_CASE("greedy matchings are maximal: nothing survives removal") {
  Rng rng(17);
  for (int rep = 0; rep < 40; ++rep) {
    const auto stripes = gen_stripes2(24, 1 + rng.below(3), rng.next_u64());
    for (unsigned k = 1; k <= 2; ++k) {
      const auto m = greedy_violation_matching(stripes.fn, k);
      std::vector<std::uint8_t> used(stripes.fn.size(), 0);
      for (const auto& c : m.matching)
        for (std::uint64_t p : c) used[p] = 1;
      const auto value = [&](std::uint64_t i) {
        return used[i] ? kAbsent : (stripes.fn.eval(i) ? 1 : 0);
      };
      CHECK(longest_alternating_chain_marked(stripes.fn.domain(), value) <= k);
    }
  }
}
