#include "kmt/highdim.hpp"

#include <algorithm>
#include <cmath>

#include "kmt/errors.hpp"
#include "kmt/fourier.hpp"
#include "kmt/kmono.hpp"
#include "kmt/simplex.hpp"

namespace kmt {

namespace {

// Run-structure generation for lines: value sequences whose run count from
// the first 1-run is at most k.
void enumerate_line(std::uint64_t n, unsigned k,
                    const std::function<void(const BitTable&)>& visit) {
  BitTable t(n);
  // state: position, current value, runs counted from the first 1-run
  auto rec = [&](auto&& self, std::uint64_t pos, int value,
                 unsigned runs) -> void {
    if (pos == n) {
      visit(t);
      return;
    }
    // continue the current run
    t.set(pos, value == 1);
    self(self, pos + 1, value, runs);
    // switch value
    const unsigned next_runs = (runs == 0 && value == 0) ? 1 : runs + 1;
    if (next_runs <= k) {
      t.set(pos, value != 1);
      self(self, pos + 1, 1 - value, next_runs);
      t.set(pos, value == 1);
    }
  };
  // first position picks the initial value
  t.set(0, false);
  rec(rec, 1, 0, 0);
  if (k >= 1) {
    t.set(0, true);
    rec(rec, 1, 1, 1);
  }
}

}  // namespace

void enumerate_k_monotone(const DomainSpec& dom, unsigned k,
                          const std::function<void(const BitTable&)>& visit,
                          std::uint64_t filter_budget) {
  if (dom.kind() == DomainKind::line) {
    enumerate_line(dom.size(), k, visit);
    return;
  }
  require_full_read(dom, std::min<std::uint64_t>(filter_budget, 24),
                    "enumerate_k_monotone");
  const std::uint64_t n = dom.size();
  BitTable t(n);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    for (std::uint64_t i = 0; i < n; ++i) t.set(i, (mask >> i) & 1);
    const auto val = [&t](std::uint64_t i) {
      return t.get(i) ? 1 : 0;
    };
    if (longest_alternating_chain_marked(dom, val) <= k) visit(t);
  }
}

std::uint64_t count_k_monotone(const DomainSpec& dom, unsigned k,
                               std::uint64_t filter_budget) {
  std::uint64_t c = 0;
  enumerate_k_monotone(dom, k, [&c](const BitTable&) { ++c; }, filter_budget);
  return c;
}

BlockFit fit_k_monotone_table(const DomainSpec& dom,
                              std::span<const std::int64_t> cost0,
                              std::span<const std::int64_t> cost1, unsigned k,
                              std::uint64_t enumeration_points) {
  if (dom.kind() == DomainKind::line) {
    const auto fit = fit_k_alternating_line(cost0, cost1, k);
    BitTable t(dom.size());
    for (std::uint64_t i = 0; i < dom.size(); ++i) t.set(i, fit.values[i]);
    return {fit.cost, std::move(t)};
  }
  if (k == 1) {
    const auto fit = fit_monotone_mincut(dom, cost0, cost1);
    return {fit.cost, fit.values};
  }
  if (dom.size() > enumeration_points)
    throw BudgetExceeded("fit_k_monotone_table: enumeration budget");
  std::int64_t best = -1;
  BitTable best_t;
  enumerate_k_monotone(dom, k, [&](const BitTable& t) {
    std::int64_t c = 0;
    for (std::uint64_t i = 0; i < dom.size(); ++i)
      c += t.get(i) ? cost1[i] : cost0[i];
    if (best < 0 || c < best) {
      best = c;
      best_t = t;
    }
  }, enumeration_points);
  return {best, std::move(best_t)};
}

Verdict tolerant_test_full(FunctionOracle& f, unsigned k, double eps1,
                           double eps2, std::uint64_t seed,
                           const HighDimParams& params) {
  if (!(0.0 <= eps1 && eps1 < eps2 && eps2 <= 1.0))
    throw PreconditionViolated("tolerant_test_full: need 0 <= eps1 < eps2 <= 1");
  const DomainSpec& dom = f.domain();
  const unsigned d = dom.dim();
  const double alpha = eps2 - eps1;
  const std::uint32_t m =
      params.m_override
          ? params.m_override
          : static_cast<std::uint32_t>(
                std::ceil(5.0 * k * d / alpha));
  BlockMap map(dom, m);
  const std::uint64_t blocks = map.blocks().size();
  const std::uint64_t t = static_cast<std::uint64_t>(std::ceil(
      25.0 * std::log(6.0 * static_cast<double>(blocks)) /
      (2.0 * alpha * alpha)));
  if (blocks * t > params.max_total_queries)
    throw BudgetExceeded("tolerant_test_full: query budget");

  const std::uint64_t q0 = f.queries();
  Rng rng(seed);
  // Label counts per block; the distribution D(x, b) is count/(t * blocks).
  std::vector<std::int64_t> cnt1(blocks, 0);
  for (std::uint64_t b = 0; b < blocks; ++b)
    for (std::uint64_t j = 0; j < t; ++j)
      cnt1[b] += f.query(map.uniform_point_in(b, rng)) ? 1 : 0;

  // err(h) * (t * blocks) = sum over blocks of the count of labels != h.
  std::vector<std::int64_t> cost0(blocks), cost1(blocks);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    cost0[b] = cnt1[b];
    cost1[b] = static_cast<std::int64_t>(t) - cnt1[b];
  }
  const auto fit = fit_k_monotone_table(map.blocks(), cost0, cost1, k,
                                        params.enumeration_points);
  const long double threshold =
      (static_cast<long double>(eps1) + alpha / 2.0L) *
      static_cast<long double>(t) * static_cast<long double>(blocks);

  Verdict v;
  v.seed = seed;
  v.decision = static_cast<long double>(fit.cost) <= threshold
                   ? Decision::ACCEPT
                   : Decision::REJECT;
  v.queries = f.queries() - q0;
  v.note = "block-fit";
  return v;
}

RegressionHypothesis agnostic_learn(
    const DomainSpec& block_domain, unsigned degree,
    const std::function<std::pair<std::uint64_t, bool>(Rng&)>& sampler,
    std::uint64_t samples, Rng& rng, bool least_squares_path) {
  const std::uint64_t B = block_domain.size();
  // Aggregate the sample stream per block; the l1 objective only depends on
  // the per-block label counts.
  std::vector<double> n0(B, 0.0), n1(B, 0.0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto [x, y] = sampler(rng);
    (y ? n1 : n0)[x] += 1.0;
  }

  RegressionHypothesis hyp;
  hyp.block_domain = block_domain;
  hyp.degree = degree;

  // Product features phi_alpha with |alpha| <= degree (orthonormal, spans
  // exactly the degree-t polynomials over the coordinate indicators).
  std::vector<std::vector<std::vector<double>>> bases(block_domain.dim());
  for (std::uint32_t a = 0; a < block_domain.dim(); ++a)
    bases[a] = orthonormal_basis(block_domain.side(a));
  for (std::uint64_t alpha = 0; alpha < B; ++alpha) {
    unsigned deg = 0;
    for (std::uint32_t a = 0; a < block_domain.dim(); ++a)
      if (block_domain.coord(alpha, a) != 0) ++deg;
    if (deg <= degree) hyp.feature_alphas.push_back(alpha);
  }

  // Rows: one per (block, label) pair seen, weight = count.
  std::vector<std::vector<double>> F;
  std::vector<double> y, w;
  auto feature_row = [&](std::uint64_t x) {
    std::vector<double> row(hyp.feature_alphas.size());
    for (std::size_t j = 0; j < hyp.feature_alphas.size(); ++j) {
      const std::uint64_t alpha = hyp.feature_alphas[j];
      double v = 1.0;
      for (std::uint32_t a = 0; a < block_domain.dim(); ++a)
        v *= bases[a][block_domain.coord(alpha, a)][block_domain.coord(x, a)];
      row[j] = v;
    }
    return row;
  };
  for (std::uint64_t x = 0; x < B; ++x) {
    if (n0[x] > 0.0) {
      F.push_back(feature_row(x));
      y.push_back(0.0);
      w.push_back(n0[x]);
    }
    if (n1[x] > 0.0) {
      F.push_back(feature_row(x));
      y.push_back(1.0);
      w.push_back(n1[x]);
    }
  }

  hyp.coeffs = least_squares_path ? least_squares(F, y, w)
                                  : l1_regression(F, y, w);

  hyp.p.assign(B, 0.0);
  hyp.h = BitTable(B);
  for (std::uint64_t x = 0; x < B; ++x) {
    const auto row = feature_row(x);
    double px = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j)
      px += hyp.coeffs[j] * row[j];
    hyp.p[x] = px;
    hyp.h.set(x, px >= 0.5);
  }
  return hyp;
}

Verdict tolerant_test_agnostic(FunctionOracle& f, unsigned k, double eps1,
                               double eps2, std::uint64_t seed,
                               const HighDimParams& params) {
  if (!(eps2 > 3.0 * eps1))
    throw PreconditionViolated("tolerant_test_agnostic: need eps2 > 3 eps1");
  const DomainSpec& dom = f.domain();
  const unsigned d = dom.dim();
  const double alpha = eps2 - 3.0 * eps1;
  const std::uint32_t m =
      params.m_override
          ? params.m_override
          : static_cast<std::uint32_t>(std::ceil(6.0 * k * d / alpha));
  BlockMap map(dom, m);
  const std::uint64_t B = map.blocks().size();
  if (B > params.learner_max_blocks)
    throw BudgetExceeded("tolerant_test_agnostic: block budget");

  // Degree from the spectral tail bound: influence <= k sqrt(d) pushes all
  // but tau^2 of the weight below k sqrt(d) / tau^2; the dimension caps it.
  const double tau = alpha / 12.0;
  const unsigned t_deg = static_cast<unsigned>(std::min<double>(
      d, std::ceil(static_cast<double>(k) * std::sqrt(d) / (tau * tau))));

  std::uint64_t feature_count = 0;
  for (std::uint64_t a = 0; a < B; ++a) {
    unsigned deg = 0;
    for (std::uint32_t ax = 0; ax < map.blocks().dim(); ++ax)
      if (map.blocks().coord(a, ax) != 0) ++deg;
    if (deg <= t_deg) ++feature_count;
  }
  const std::uint64_t s_learn = static_cast<std::uint64_t>(std::ceil(
      params.learner_sample_mult * static_cast<double>(feature_count) /
      (tau * tau)));
  const std::uint64_t s_est = static_cast<std::uint64_t>(
      std::ceil(1.5 * (7.0 / alpha) * (7.0 / alpha)));
  if (s_learn + s_est > params.max_total_queries)
    throw BudgetExceeded("tolerant_test_agnostic: query budget");

  const std::uint64_t q0 = f.queries();
  Rng rng(seed);
  // D samples: uniform block, label from a uniform point inside it.
  auto sampler = [&](Rng& r) {
    const std::uint64_t x = r.below(B);
    return std::make_pair(x, f.query(map.uniform_point_in(x, r)));
  };

  const auto hyp = agnostic_learn(map.blocks(), t_deg, sampler, s_learn,
                                       rng, params.least_squares_path);

  // Estimate err_D(h) to within alpha/7.
  std::uint64_t err = 0;
  for (std::uint64_t i = 0; i < s_est; ++i) {
    const auto [x, yv] = sampler(rng);
    if (hyp.h.get(x) != yv) ++err;
  }
  const double est = static_cast<double>(err) / static_cast<double>(s_est);

  Verdict v;
  v.seed = seed;
  v.queries = f.queries() - q0;
  if (est > eps1 + 5.0 * alpha / 12.0) {
    v.decision = Decision::REJECT;
    v.note = "hypothesis-far-from-f";
    if (params.least_squares_path) v.note += ",least-squares-path";
    return v;
  }

  // Exact distance from the explicit hypothesis table to the class.
  std::vector<std::int64_t> cost0(B), cost1(B);
  for (std::uint64_t x = 0; x < B; ++x) {
    cost0[x] = hyp.h.get(x) ? 1 : 0;
    cost1[x] = hyp.h.get(x) ? 0 : 1;
  }
  std::uint64_t enum_budget = params.enumeration_points;
  const auto fit =
      fit_k_monotone_table(map.blocks(), cost0, cost1, k, enum_budget);
  const double dist_h =
      static_cast<double>(fit.cost) / static_cast<double>(B);
  v.decision = dist_h <= 2.0 * eps1 + 5.0 * alpha / 12.0 ? Decision::ACCEPT
                                                         : Decision::REJECT;
  v.note = "hypothesis-distance";
  if (params.least_squares_path) v.note += ",least-squares-path";
  v.queries = f.queries() - q0;
  return v;
}

}  // namespace kmt
