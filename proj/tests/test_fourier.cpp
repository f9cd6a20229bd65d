#include <doctest.h>

#include <cmath>

#include "kmt/adversaries.hpp"
#include "kmt/fourier.hpp"
#include "kmt/rng.hpp"

using namespace kmt;

TEST_CASE("per-coordinate bases are orthonormal to 1e-12") {
  for (unsigned r = 2; r <= 8; ++r) {
    const auto basis = orthonormal_basis(r);
    for (unsigned a = 0; a < r; ++a)
      for (unsigned b = 0; b < r; ++b) {
        double dot = 0.0;
        for (unsigned x = 0; x < r; ++x) dot += basis[a][x] * basis[b][x];
        dot /= r;
        CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) <= 1e-12);
      }
    // phi_0 is the constant 1
    for (unsigned x = 0; x < r; ++x) CHECK(basis[0][x] == doctest::Approx(1.0));
  }
}

TEST_CASE("r = 2 basis is the usual character") {
  const auto basis = orthonormal_basis(2);
  CHECK(std::fabs(std::fabs(basis[1][0]) - 1.0) <= 1e-12);
  CHECK(basis[1][0] == doctest::Approx(-basis[1][1]));
}

TEST_CASE("transform worked examples") {
  // constant one: single coefficient at alpha = 0
  const DomainSpec sq = DomainSpec::cube(2);
  const auto t1 = fourier_transform({1, 1, 1, 1}, sq);
  CHECK(t1.coeffs[0] == doctest::Approx(1.0));
  for (int a = 1; a < 4; ++a) CHECK(std::fabs(t1.coeffs[a]) <= 1e-12);

  // parity as +-1 on {0,1}^2 concentrates on alpha = (1,1)
  std::vector<double> parity{1, -1, -1, 1};
  const auto t2 = fourier_transform(parity, sq);
  CHECK(std::fabs(std::fabs(t2.coeffs[3]) - 1.0) <= 1e-12);
  for (int a = 0; a < 3; ++a) CHECK(std::fabs(t2.coeffs[a]) <= 1e-12);
}

TEST_CASE("transform inverts exactly") {
  Rng rng(3);
  const DomainSpec dom = DomainSpec::product({3, 4});
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> f(12);
    for (auto& v : f) v = rng.unit() * 2.0 - 1.0;
    const auto back = inverse_transform(fourier_transform(f, dom));
    for (int i = 0; i < 12; ++i) CHECK(back[i] == doctest::Approx(f[i]));
  }
}

TEST_CASE("influence worked examples") {
  // dictator on coordinate 1 of {0,1}^2
  const DomainSpec sq = DomainSpec::cube(2);
  std::vector<double> dict{-1, 1, -1, 1};
  const auto inf = influences(dict, sq);
  CHECK(inf[0] == doctest::Approx(1.0));
  CHECK(inf[1] == doctest::Approx(0.0));
  CHECK(total_influence(dict, sq) == doctest::Approx(1.0));

  // threshold at r/2 on [4]: influence 1; verified against the direct
  // expectation over all (x, resample) pairs
  const DomainSpec line4 = DomainSpec::line(4);
  std::vector<double> thr{-1, -1, 1, 1};
  double direct = 0.0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) direct += thr[x] != thr[y];
  direct = 2.0 * direct / 16.0;
  CHECK(direct == doctest::Approx(1.0));
  CHECK(influences(thr, line4)[0] == doctest::Approx(direct));
}

TEST_CASE("Parseval and the influence identity on random functions") {
  Rng rng(5);
  for (const auto& dom : {DomainSpec::grid(3, 2), DomainSpec::cube(3)}) {
    for (int rep = 0; rep < 300; ++rep) {
      std::vector<double> f(dom.size());
      for (auto& v : f) v = rng.bernoulli(0.5) ? 1.0 : -1.0;
      const auto table = fourier_transform(f, dom);
      CHECK(std::fabs(table.total_weight() - 1.0) <= 1e-9);
      double ident = 0.0;
      for (std::uint64_t a = 0; a < dom.size(); ++a) {
        unsigned deg = 0;
        for (std::uint32_t ax = 0; ax < dom.dim(); ++ax)
          if (dom.coord(a, ax) != 0) ++deg;
        ident += deg * table.coeffs[a] * table.coeffs[a];
      }
      CHECK(std::fabs(ident - total_influence(f, dom)) <= 1e-9);
    }
  }
}

TEST_CASE("influence of k-monotone functions is at most k sqrt(d)") {
  Rng rng(7);
  const DomainSpec dom = DomainSpec::grid(3, 3);
  for (int rep = 0; rep < 500; ++rep)
    for (unsigned k = 1; k <= 2; ++k) {
      const auto b = gen_random_k_monotone(dom, k, rng.next_u64());
      std::vector<double> pm(27);
      for (int i = 0; i < 27; ++i) pm[i] = b.fn.eval(i) ? 1.0 : -1.0;
      CHECK(total_influence(pm, dom) <= k * std::sqrt(3.0) + 1e-9);
    }
}

TEST_CASE("truncation error equals the spectral tail exactly") {
  Rng rng(9);
  const DomainSpec dom = DomainSpec::grid(3, 2);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> f(9);
    for (auto& v : f) v = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const auto table = fourier_transform(f, dom);
    for (unsigned t = 0; t <= 2; ++t) {
      const auto p = inverse_transform(table, t);
      double mse = 0.0;
      for (int i = 0; i < 9; ++i) mse += (p[i] - f[i]) * (p[i] - f[i]);
      mse /= 9.0;
      CHECK(mse == doctest::Approx(table.weight_above_degree(t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("spectral tail bound from bounded influence") {
  Rng rng(11);
  const DomainSpec dom = DomainSpec::cube(3);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> f(8);
    for (auto& v : f) v = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const double inf = total_influence(f, dom);
    const auto table = fourier_transform(f, dom);
    for (double eps : {0.1, 0.25}) {
      const unsigned cutoff = static_cast<unsigned>(std::floor(inf / eps));
      CHECK(table.weight_above_degree(cutoff) <= eps + 1e-9);
    }
  }
}
