#include <doctest.h>

#include "kmt/domain.hpp"
#include "kmt/function.hpp"
#include "kmt/rational.hpp"
#include "kmt/rng.hpp"

using namespace kmt;

TEST_CASE("domain encode/decode round-trips") {
  for (const auto& dom :
       {DomainSpec::line(7), DomainSpec::grid(5, 3), DomainSpec::cube(6),
        DomainSpec::product({4, 9, 2})}) {
    CHECK(dom.size() >= 1);
    for (std::uint64_t i = 0; i < dom.size(); ++i) {
      const auto c = dom.decode(i);
      CHECK(dom.encode(c) == i);
      for (std::uint32_t a = 0; a < dom.dim(); ++a)
        CHECK(dom.coord(i, a) == c[a]);
    }
  }
}

TEST_CASE("line and cube are special grids") {
  CHECK(DomainSpec::line(9).kind() == DomainKind::line);
  CHECK(DomainSpec::cube(3).kind() == DomainKind::cube);
  CHECK(DomainSpec::grid(2, 4) == DomainSpec::cube(4));
  CHECK(DomainSpec::grid(6, 1).kind() == DomainKind::line);
}

TEST_CASE("coordinatewise order") {
  const DomainSpec dom = DomainSpec::grid(3, 2);
  const auto at = [&](std::uint32_t x, std::uint32_t y) {
    return dom.encode(std::vector<std::uint32_t>{x, y});
  };
  CHECK(dom.leq(at(0, 0), at(2, 2)));
  CHECK(dom.leq(at(1, 1), at(1, 2)));
  CHECK(!dom.leq(at(2, 0), at(1, 2)));
  CHECK(!dom.less(at(1, 1), at(1, 1)));
  // index order is a linear extension
  for (std::uint64_t a = 0; a < dom.size(); ++a)
    for (std::uint64_t b = 0; b < dom.size(); ++b)
      if (dom.less(a, b)) CHECK(a < b);
}

TEST_CASE("bit table") {
  BitTable t(130);
  t.set(0, true);
  t.set(64, true);
  t.set(129, true);
  CHECK(t.get(0));
  CHECK(t.get(64));
  CHECK(t.get(129));
  CHECK(!t.get(1));
  CHECK(t.popcount() == 3);
  t.flip(64);
  CHECK(t.popcount() == 2);
}

TEST_CASE("rational arithmetic and parsing") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(-1, 2) < Rational(0, 5));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational::parse("7/21") == Rational(1, 3));
  CHECK(Rational::parse("4") == Rational(4, 1));
  CHECK(Rational(5, 7).to_string() == "5/7");
}

TEST_CASE("oracle counts each query exactly once") {
  const DomainSpec dom = DomainSpec::line(10);
  BitTable t(10);
  FunctionOracle oracle{Function(dom, std::move(t))};
  CHECK(oracle.queries() == 0);
  oracle.query(3);
  oracle.query(3);
  oracle.query(7);
  CHECK(oracle.queries() == 3);
}

TEST_CASE("rng determinism and seed derivation") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 100; ++i) differs |= a2.next_u64() != c.next_u64();
  CHECK(differs);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("poisson draws have the right mean") {
  Rng rng(7);
  const double mean = 4800.0;
  double sum = 0.0;
  const int reps = 200;
  for (int i = 0; i < reps; ++i) sum += static_cast<double>(rng.poisson(mean));
  const double avg = sum / reps;
  CHECK(avg > mean - 5.0 * std::sqrt(mean / reps) - 1.0);
  CHECK(avg < mean + 5.0 * std::sqrt(mean / reps) + 1.0);
}

TEST_CASE("uniform below is unbiased at the edges") {
  Rng rng(11);
  std::uint64_t lo = 0, hi = 0;
  for (int i = 0; i < 30000; ++i) {
    const std::uint64_t v = rng.below(3);
    lo += v == 0;
    hi += v == 2;
  }
  CHECK(lo > 9000);
  CHECK(lo < 11000);
  CHECK(hi > 9000);
  CHECK(hi < 11000);
}
