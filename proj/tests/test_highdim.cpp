#include <doctest.h>

#include <cmath>

#include "kmt/adversaries.hpp"
#include "kmt/highdim.hpp"
#include "kmt/kmono.hpp"
#include "kmt/rng.hpp"
#include "kmt/simplex.hpp"

using namespace kmt;

TEST_CASE("enumeration counts match the brute-force filter") {
  // m=3, d=1, k=1: the monotone tables 000, 001, 011, 111
  CHECK(count_k_monotone(DomainSpec::line(3), 1) == 4);
  // m=2, d=2, k=1 against filtering all 16 tables
  CHECK(count_k_monotone(DomainSpec::grid(2, 2), 1) == 6);
  // any m with k >= m on a line: all tables
  CHECK(count_k_monotone(DomainSpec::line(4), 4) == 16);
  CHECK(count_k_monotone(DomainSpec::line(4), 7) == 16);

  // cross-check the line path against the filter path on small cases
  for (unsigned n = 1; n <= 5; ++n)
    for (unsigned k = 1; k <= 4; ++k) {
      const DomainSpec dom = DomainSpec::line(n);
      std::uint64_t filtered = 0;
      for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        BitTable t(n);
        for (unsigned i = 0; i < n; ++i) t.set(i, (mask >> i) & 1);
        filtered += is_k_monotone(Function(dom, std::move(t)), k);
      }
      CHECK(count_k_monotone(dom, k) == filtered);
    }
}

TEST_CASE("enumeration yields each table once and only k-monotone ones") {
  const DomainSpec dom = DomainSpec::line(6);
  std::vector<std::vector<std::uint64_t>> seen;
  enumerate_k_monotone(dom, 2, [&](const BitTable& t) {
    CHECK(is_k_monotone(Function(dom, t), 2));
    seen.push_back(t.words());
  });
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("fully tolerant tester derives the stated parameters") {
  // (eps1, eps2, k, d) = (0, 0.5, 1, 1): alpha = 0.5, m = 10, t = 205,
  // so 2050 queries on a divisible line
  BitTable t(200);
  FunctionOracle o{Function(DomainSpec::line(200), std::move(t))};
  const Verdict v = tolerant_test_full(o, 1, 0.0, 0.5, 3);
  CHECK(v.queries == 2050);
  CHECK(v.accepted());
}

TEST_CASE("fully tolerant tester separates close from far on the line") {
  const std::uint64_t n = 120;
  const unsigned k = 1;
  int acc = 0, rej = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const auto close =
        gen_random_k_monotone(DomainSpec::line(n), k, derive_seed(5, trial));
    FunctionOracle o1(close.fn);
    acc += tolerant_test_full(o1, k, 0.05, 0.45, derive_seed(6, trial))
               .accepted();

    const auto far =
        gen_alternating_line(n, 36, 0.05, k, derive_seed(7, trial));
    REQUIRE(far.exact_distance->to_double() >= 0.45);
    FunctionOracle o2(far.fn);
    rej += tolerant_test_full(o2, k, 0.05, 0.45, derive_seed(8, trial))
               .rejected();
  }
  CHECK(acc >= 17);
  CHECK(rej >= 17);
}

TEST_CASE("l1 regression solves the realizable case exactly") {
  // labels from a degree-1 threshold over [2]^2: p spans it, err(h) = 0
  const DomainSpec dom = DomainSpec::cube(2);
  // target h*(x) = x0 (dictator): labels by block
  auto sampler = [&dom](Rng& r) {
    const std::uint64_t x = r.below(4);
    return std::make_pair(x, (x & 1) == 1);
  };
  Rng rng(3);
  const auto hyp = agnostic_learn(dom, 1, sampler, 400, rng);
  for (std::uint64_t x = 0; x < 4; ++x) CHECK(hyp.h.get(x) == ((x & 1) == 1));
}

TEST_CASE("learner tolerates label noise with known opt") {
  // g monotone on [4]^2 plus 10% flips: err(h) <= 0.1 + tau + 0.05
  const DomainSpec dom = DomainSpec::grid(4, 2);
  const auto base = gen_random_k_monotone(dom, 1, 21);
  int good = 0;
  const int reps = 20;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(derive_seed(31, rep));
    auto sampler = [&](Rng& r) {
      const std::uint64_t x = r.below(16);
      bool y = base.fn.eval(x);
      if (r.bernoulli(0.1)) y = !y;
      return std::make_pair(x, y);
    };
    const double tau = 0.05;
    const auto hyp = agnostic_learn(dom, 2, sampler, 4000, rng);
    // population error of h against the noisy labels
    double err = 0.0;
    for (std::uint64_t x = 0; x < 16; ++x) {
      const bool clean = base.fn.eval(x);
      err += hyp.h.get(x) == clean ? 0.1 : 0.9;
    }
    err /= 16.0;
    if (err <= 0.1 + tau + 0.05) ++good;
  }
  CHECK(good >= 18);
}

TEST_CASE("least-squares fast path also solves the realizable case") {
  const DomainSpec dom = DomainSpec::cube(2);
  auto sampler = [](Rng& r) {
    const std::uint64_t x = r.below(4);
    return std::make_pair(x, x >= 2);
  };
  Rng rng(7);
  const auto hyp = agnostic_learn(dom, 1, sampler, 400, rng, true);
  for (std::uint64_t x = 0; x < 4; ++x) CHECK(hyp.h.get(x) == (x >= 2));
}

TEST_CASE("agnostic tester requires eps2 > 3 eps1") {
  BitTable t(16);
  FunctionOracle o{Function(DomainSpec::grid(4, 2), std::move(t))};
  CHECK_THROWS_AS(tolerant_test_agnostic(o, 1, 0.2, 0.5, 1),
                  PreconditionViolated);
}

TEST_CASE("agnostic tester on planted block instances") {
  // [32]^2 inflated from [4]^2 block tables, k = 1, m overridden to the
  // planted block structure
  const DomainSpec blocks = DomainSpec::grid(4, 2);
  const DomainSpec dom = DomainSpec::grid(32, 2);
  HighDimParams hp;
  hp.m_override = 4;

  auto inflate = [&](const Function& q) {
    BitTable t(dom.size());
    for (std::uint64_t p = 0; p < dom.size(); ++p)
      t.set(p, q.eval(dom.coord(p, 0) / 8 + 4 * (dom.coord(p, 1) / 8)));
    return Function(dom, std::move(t));
  };

  int acc = 0, rej = 0;
  const int trials = 12;
  for (int trial = 0; trial < trials; ++trial) {
    // close side: a k-monotone block table
    const auto good = gen_random_k_monotone(blocks, 1, derive_seed(51, trial));
    FunctionOracle o1(inflate(good.fn));
    acc += tolerant_test_agnostic(o1, 1, 0.02, 0.30, derive_seed(52, trial), hp)
               .accepted();

    // far side: a block table with brute-force certified distance >= eps2
    Rng pick(derive_seed(53, trial));
    Function far;
    for (;;) {
      BitTable t(16);
      for (int i = 0; i < 16; ++i) t.set(i, pick.bernoulli(0.5));
      Function cand(blocks, std::move(t));
      if (exact_distance_bruteforce(cand, 1).value.to_double() >= 0.30) {
        far = cand;
        break;
      }
    }
    FunctionOracle o2(inflate(far));
    rej += tolerant_test_agnostic(o2, 1, 0.02, 0.30, derive_seed(54, trial), hp)
               .rejected();
  }
  CHECK(acc >= 9);
  CHECK(rej >= 9);
}

TEST_CASE("inflation preserves the exact distance (phase argument)") {
  Rng rng(61);
  const DomainSpec blocks = DomainSpec::grid(3, 2);
  const DomainSpec dom = DomainSpec::grid(6, 2);
  for (int rep = 0; rep < 60; ++rep) {
    BitTable t(9);
    for (int i = 0; i < 9; ++i) t.set(i, rng.bernoulli(0.5));
    const Function q(blocks, std::move(t));
    BitTable big(36);
    for (std::uint64_t p = 0; p < 36; ++p)
      big.set(p, q.eval(dom.coord(p, 0) / 2 + 3 * (dom.coord(p, 1) / 2)));
    const Function f(dom, std::move(big));
    CHECK(exact_distance_monotone_mincut(f).value ==
          exact_distance_bruteforce(q, 1).value);
  }
}

TEST_CASE("simplex solves a reference LP") {
  // min x + y st x + 2y = 4, 3x + y = 7, x,y >= 0 -> x = 2, y = 1
  const auto res = solve_lp_standard({{1, 2}, {3, 1}}, {4, 7}, {1, 1});
  REQUIRE(res.feasible);
  CHECK(res.x[0] == doctest::Approx(2.0));
  CHECK(res.x[1] == doctest::Approx(1.0));
  CHECK(res.objective == doctest::Approx(3.0));
}

TEST_CASE("l1 regression finds the weighted median structure") {
  // fitting a constant to weighted points: the optimum is a weighted median
  const std::vector<std::vector<double>> F{{1.0}, {1.0}, {1.0}};
  const std::vector<double> y{0.0, 1.0, 1.0};
  const std::vector<double> w{1.0, 1.0, 1.0};
  const auto c = l1_regression(F, y, w);
  CHECK(c[0] == doctest::Approx(1.0));
}

TEST_CASE("per-block estimates meet the union-bound accuracy") {
  // with t = ceil(25 ln(6 B)/(2 alpha^2)) samples, a block estimate lands
  // within alpha/5 except with probability 1/(3B); checked on synthetic
  // blocks away from the Chernoff worst case
  const double alpha = 0.4;
  const std::uint64_t B = 25;
  const std::uint64_t t = static_cast<std::uint64_t>(
      std::ceil(25.0 * std::log(6.0 * B) / (2.0 * alpha * alpha)));
  for (double p : {0.0, 0.3, 0.5}) {
    int bad = 0;
    const int reps = 3000;
    Rng rng(derive_seed(81, static_cast<std::uint64_t>(p * 10)));
    for (int rep = 0; rep < reps; ++rep) {
      std::uint64_t ones = 0;
      for (std::uint64_t j = 0; j < t; ++j) ones += rng.bernoulli(p);
      const double est = static_cast<double>(ones) / t;
      if (std::fabs(est - p) > alpha / 5.0) ++bad;
    }
    CHECK(static_cast<double>(bad) / reps <= 1.0 / (3.0 * B));
  }
}

TEST_CASE("zero lower threshold reduces to a plain tester") {
  // eps1 = 0: both tolerant routes accept verified members
  const DomainSpec blocks = DomainSpec::grid(4, 2);
  const DomainSpec dom = DomainSpec::grid(32, 2);
  HighDimParams hp;
  hp.m_override = 4;
  for (int trial = 0; trial < 8; ++trial) {
    const auto good = gen_random_k_monotone(blocks, 1, derive_seed(91, trial));
    BitTable t(dom.size());
    for (std::uint64_t p = 0; p < dom.size(); ++p)
      t.set(p, good.fn.eval(dom.coord(p, 0) / 8 + 4 * (dom.coord(p, 1) / 8)));
    const Function f(dom, std::move(t));
    FunctionOracle o1(f), o2(f);
    CHECK(tolerant_test_full(o1, 1, 0.0, 0.4, derive_seed(92, trial), hp)
              .accepted());
    CHECK(tolerant_test_agnostic(o2, 1, 0.0, 0.4, derive_seed(93, trial), hp)
              .accepted());
  }
}

TEST_CASE("least-squares path is labeled non-conforming") {
  const DomainSpec dom = DomainSpec::grid(16, 1);
  BitTable t(16, true);
  FunctionOracle o{Function(dom, std::move(t))};
  HighDimParams hp;
  hp.least_squares_path = true;
  const Verdict v = tolerant_test_agnostic(o, 1, 0.0, 0.5, 1, hp);
  CHECK(v.note.find("least-squares-path") != std::string::npos);
}
