#include <doctest.h>

#include "kmt/adversaries.hpp"
#include "kmt/coarsen.hpp"
#include "kmt/kmono.hpp"
#include "kmt/rng.hpp"

using namespace kmt;

namespace {

Function table_fn(const DomainSpec& dom, std::uint64_t mask) {
  BitTable t(dom.size());
  for (std::uint64_t i = 0; i < dom.size(); ++i) t.set(i, (mask >> i) & 1);
  return Function(dom, std::move(t));
}

}  // namespace

TEST_CASE("block map partitions the domain") {
  for (const auto& [dom, m] :
       std::vector<std::pair<DomainSpec, std::uint32_t>>{
           {DomainSpec::line(240), 25},
           {DomainSpec::grid(16, 2), 4},
           {DomainSpec::line(10), 3},
           {DomainSpec::product({240, 10}), 50}}) {
    BlockMap map(dom, m);
    std::uint64_t total = 0;
    for (std::uint64_t b = 0; b < map.blocks().size(); ++b) {
      total += map.block_size(b);
      map.for_each_point(b, [&](std::uint64_t p) {
        CHECK(map.block_of(p) == b);
      });
    }
    CHECK(total == dom.size());
    // exactly min(m, n) blocks per axis
    for (std::uint32_t a = 0; a < dom.dim(); ++a)
      CHECK(map.blocks().side(a) == std::min(m, dom.side(a)));
  }
}

TEST_CASE("divisible block maps are exact cosets") {
  BlockMap map(DomainSpec::grid(16, 2), 4);
  for (std::uint64_t b = 0; b < 16; ++b) CHECK(map.block_size(b) == 16);
}

TEST_CASE("majority coarsening worked examples") {
  // constant function stays constant
  const auto c = coarsen_majority(table_fn(DomainSpec::line(8), 0xff), 2);
  CHECK(c.values == std::vector<BlockValue>{BlockValue::one, BlockValue::one});
  CHECK(c.dist_to_source == Rational(0, 1));

  // (1,1,1,0,0,0,0,1) with m=2 -> majorities (1, 0), both 3-1
  const auto c2 =
      coarsen_majority(table_fn(DomainSpec::line(8), 0b10000111), 2);
  CHECK(c2.values ==
        std::vector<BlockValue>{BlockValue::one, BlockValue::zero});
  CHECK(c2.dist_to_source == Rational(2, 8));
}

TEST_CASE("majority minimizes the distance over all block functions") {
  Rng rng(3);
  const DomainSpec dom = DomainSpec::grid(4, 2);
  for (int rep = 0; rep < 100; ++rep) {
    const Function f = table_fn(dom, rng.below(1ULL << 16));
    const auto c = coarsen_majority(f, 2);  // 4 blocks
    BlockMap map(dom, 2);
    for (std::uint64_t hmask = 0; hmask < 16; ++hmask) {
      std::uint64_t diff = 0;
      for (std::uint64_t p = 0; p < 16; ++p)
        diff += f.eval(p) != ((hmask >> map.block_of(p)) & 1);
      CHECK(c.dist_to_source <= Rational(diff, 16));
    }
  }
}

TEST_CASE("endpoint coarsening worked examples") {
  // (1,1,0,0) with K=2: blocks (1, 0), no star, 2 queries per block
  {
    FunctionOracle o(table_fn(DomainSpec::line(4), 0b0011));
    const auto c = coarsen_endpoint_line(o, 2);
    CHECK(c.values ==
          std::vector<BlockValue>{BlockValue::one, BlockValue::zero});
    CHECK(o.queries() == 4);
  }
  // (1,0,1,1) with K=2: first block is a star, second is 1
  {
    FunctionOracle o(table_fn(DomainSpec::line(4), 0b1101));
    const auto c = coarsen_endpoint_line(o, 2);
    CHECK(c.values ==
          std::vector<BlockValue>{BlockValue::star, BlockValue::one});
  }
}

TEST_CASE("k-monotone functions have at most k star blocks") {
  Rng rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    for (unsigned k = 1; k <= 3; ++k) {
      const auto b =
          gen_random_k_monotone(DomainSpec::line(64), k, rng.next_u64());
      FunctionOracle o(b.fn);
      const auto c = coarsen_endpoint_line(o, 8);
      std::uint32_t stars = 0;
      for (auto v : c.values) stars += v == BlockValue::star;
      CHECK(stars <= k);
    }
  }
}

TEST_CASE("variable-block fraction bound") {
  // dist(f, f_m) <= s/m + eps/100 with s the exact variable-block count
  Rng rng(7);
  const double eps = 0.2;
  for (int rep = 0; rep < 100; ++rep) {
    BitTable t(64);
    for (int i = 0; i < 64; ++i) t.set(i, rng.bernoulli(0.4));
    const Function f(DomainSpec::line(64), std::move(t));
    const auto c = coarsen_majority(f, 8);
    const std::uint32_t s = count_variable_blocks(f, 8, eps);
    CHECK(c.dist_to_source.to_double() <= s / 8.0 + eps / 100.0 + 1e-12);
  }
}

TEST_CASE("variable-block promise test, both sides") {
  // planted: 2k variable blocks with minority fraction 1/2
  const double eps = 0.2;
  const unsigned k = 4;
  const std::uint32_t m = 80;
  const std::uint32_t n = 80 * 40;
  int far_verdicts = 0, mono_verdicts = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(derive_seed(1000, s));
    // far side: blocks 0..2k-1 split half-half, the rest constant
    BitTable t(n);
    for (std::uint32_t b = 0; b < 2 * k; ++b)
      for (std::uint32_t i = 0; i < 40; ++i)
        t.set(b * 40 + i, i % 2 == 0);
    const Function far(DomainSpec::line(n), std::move(t));
    FunctionOracle fo(far);
    if (!variable_block_fraction_test(fo, m, k, eps, 0.1, rng))
      ++far_verdicts;

    // promise side: a verified k-monotone function
    const auto mono =
        gen_random_k_monotone(DomainSpec::line(n), k, derive_seed(2000, s));
    FunctionOracle mo(mono.fn);
    Rng rng2(derive_seed(3000, s));
    if (variable_block_fraction_test(mo, m, k, eps, 0.1, rng2))
      ++mono_verdicts;
  }
  CHECK(far_verdicts >= 180);   // frequency >= 0.9
  CHECK(mono_verdicts >= 180);
}

TEST_CASE("coarsening distance bound needs k-monotonicity") {
  const Function f = table_fn(DomainSpec::line(8), 0b01010101);
  CHECK_THROWS_AS(check_coarsening_lemma(f, 2, 1), PreconditionViolated);
}

TEST_CASE("coarsening distance bound on staircases") {
  // monotone staircase on [16], m=4, k=1, d=1 -> dist < 1/4
  const Function f = table_fn(DomainSpec::line(16), 0xfff0);
  CHECK(check_coarsening_lemma(f, 4, 1));
}
