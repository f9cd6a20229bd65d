#include "kmt/line_testers.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>

#include "kmt/dualdist.hpp"
#include "kmt/errors.hpp"
#include "kmt/kmono.hpp"

namespace kmt {

namespace {

Verdict full_read_exact(FunctionOracle& f, unsigned k, std::uint64_t seed,
                        const char* note) {
  const std::uint64_t q0 = f.queries();
  const std::uint64_t n = f.domain().size();
  BitTable t(n);
  for (std::uint64_t i = 0; i < n; ++i) t.set(i, f.query(i));
  Function read(f.domain(), std::move(t));
  Verdict v;
  v.seed = seed;
  v.note = note;
  if (auto w = find_violation(read, k)) {
    v.decision = Decision::REJECT;
    v.witness = std::move(*w);
  }
  v.queries = f.queries() - q0;
  return v;
}

}  // namespace

Verdict test_line_one_sided(FunctionOracle& f, unsigned k, double eps,
                            std::uint64_t seed,
                            const LineTesterParams& params) {
  if (f.domain().kind() != DomainKind::line)
    throw PreconditionViolated("test_line_one_sided: line domains only");
  if (k < 1 || eps <= 0.0 || eps > 1.0)
    throw PreconditionViolated("test_line_one_sided: need k >= 1, eps in (0,1]");
  const std::uint64_t n = f.domain().size();
  const double dk = static_cast<double>(k);

  if (eps <= params.full_read_factor * dk / static_cast<double>(n))
    return full_read_exact(f, k, seed, "full-read");

  const std::uint64_t q0 = f.queries();
  Rng rng(seed);
  Verdict v;
  v.seed = seed;

  // Endpoint coarsening: K blocks of floor(eps n / 50k) points (>= 2 here),
  // the last one ragged. Two queries per block learn g exactly.
  const std::uint64_t bsize = static_cast<std::uint64_t>(
      eps * static_cast<double>(n) / (params.block_count_mult * dk));
  const std::uint64_t K = (n + bsize - 1) / bsize;
  struct BlockInfo {
    std::uint64_t lo, hi;  // endpoint positions (inclusive)
    bool vlo, vhi;
  };
  std::vector<BlockInfo> info(K);
  std::vector<int> gtilde(K);  // endpoint value, stars already at 0
  for (std::uint64_t i = 0; i < K; ++i) {
    const std::uint64_t lo = i * bsize;
    const std::uint64_t hi = std::min(n, (i + 1) * bsize) - 1;
    const bool vlo = f.query(lo);
    const bool vhi = lo == hi ? vlo : f.query(hi);
    info[i] = {lo, hi, vlo, vhi};
    gtilde[i] = vlo == vhi ? (vlo ? 1 : 0) : 0;
  }

  // A queried point with the wanted value inside a block; blocks that are
  // stars or hold a giveaway point contain both values among queried points.
  auto point_with_value = [&](std::uint64_t block, bool want,
                              const std::vector<std::int64_t>& giveaway)
      -> std::uint64_t {
    const BlockInfo& b = info[block];
    if (b.vlo == want) return b.lo;
    if (b.vhi == want) return b.hi;
    assert(giveaway[block] >= 0);
    return static_cast<std::uint64_t>(giveaway[block]);
  };

  const auto gval = [&gtilde](std::uint64_t b) { return gtilde[b]; };
  if (auto bad = find_violation_marked(DomainSpec::line(K), gval, k)) {
    v.decision = Decision::REJECT;
    std::vector<std::int64_t> none(K, -1);
    for (std::size_t j = 0; j < bad->size(); ++j)
      v.witness.push_back(point_with_value((*bad)[j], j % 2 == 0, none));
    v.note = "coarsening-violation";
    v.queries = f.queries() - q0;
    return v;
  }

  // Poisson(m) uniform samples; an oversized draw accepts outright, which
  // keeps one-sidedness intact.
  const double mean = params.sample_mean_mult * dk / eps;
  const std::uint64_t draws = rng.poisson(mean);
  if (draws > static_cast<std::uint64_t>(2.0 * mean)) {
    v.note = "poisson-oversize";
    v.queries = f.queries() - q0;
    return v;
  }

  std::vector<std::int64_t> giveaway(K, -1);
  std::uint64_t giveaway_blocks = 0;
  for (std::uint64_t s = 0; s < draws; ++s) {
    const std::uint64_t pos = rng.below(n);
    const bool fv = f.query(pos);
    const std::uint64_t block = std::min(pos / bsize, K - 1);
    if (static_cast<int>(fv) != gtilde[block] && giveaway[block] < 0) {
      giveaway[block] = static_cast<std::int64_t>(pos);
      ++giveaway_blocks;
    }
  }

  if (giveaway_blocks >= k + 1) {
    // Each flagged block contains queried points with both values, so any
    // k+1 of them support the forbidden pattern in increasing order.
    v.decision = Decision::REJECT;
    v.note = "giveaway-blocks";
    std::uint64_t taken = 0;
    for (std::uint64_t b = 0; b < K && taken < k + 1; ++b)
      if (giveaway[b] >= 0)
        v.witness.push_back(point_with_value(b, taken++ % 2 == 0, giveaway));
  }
  v.queries = f.queries() - q0;
  return v;
}

Verdict test_line_two_sided(FunctionOracle& f, unsigned k, double eps,
                            std::uint64_t seed,
                            const LineTesterParams& params) {
  if (f.domain().kind() != DomainKind::line)
    throw PreconditionViolated("test_line_two_sided: line domains only");
  if (k < 1 || eps <= 0.0 || eps > 1.0)
    throw PreconditionViolated("test_line_two_sided: need k >= 1, eps in (0,1]");
  const std::uint64_t n = f.domain().size();
  const double dk = static_cast<double>(k);

  if (dk <= params.delegate_mult / eps) {
    Verdict v = test_line_one_sided(f, k, eps, seed, params);
    v.note = v.note.empty() ? "delegated" : "delegated," + v.note;
    return v;
  }

  // Block structure: m = 4k/eps blocks of size eps*n/(4k) (single points
  // when the domain is small).
  const std::uint64_t bsize = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(eps * static_cast<double>(n) /
                                    (params.grid_block_mult * dk)));
  const std::uint64_t m = (n + bsize - 1) / bsize;

  const double C = params.grid_block_mult / eps;
  const std::uint64_t cap_w =
      static_cast<std::uint64_t>(params.cap_mult * C / eps);
  const std::uint64_t s_est = static_cast<std::uint64_t>(
      std::ceil(params.est_sample_mult * (10.0 / eps) * (10.0 / eps)));
  const std::uint64_t maj_q = static_cast<std::uint64_t>(std::ceil(
      params.majority_mult / eps *
      std::log(std::max<double>(2.0, static_cast<double>(s_est)))));
  const std::uint64_t vb_q = static_cast<std::uint64_t>(
      std::ceil(params.variable_block.blocks_sampled_mult / eps));
  const std::uint64_t vb_per_block = static_cast<std::uint64_t>(
      std::ceil(params.variable_block.minority_threshold_div / eps *
                std::log(1.0 / params.variable_block.per_block_delta)));

  // The sampling plan caps its own worst case; past the domain size the
  // exact answer is cheaper.
  const std::uint64_t planned =
      std::min(vb_q, m) * vb_per_block + m * maj_q + s_est;
  if (planned >= n) return full_read_exact(f, k, seed, "full-read");

  const std::uint64_t q0 = f.queries();
  Rng rng(seed);
  if (!variable_block_fraction_test(f, static_cast<std::uint32_t>(m), k, eps,
                                    params.delta, rng,
                                    params.variable_block)) {
    Verdict v;
    v.decision = Decision::REJECT;
    v.seed = seed;
    v.note = "variable-blocks";
    v.queries = f.queries() - q0;
    return v;
  }

  // Majority-simulated access to the block function g on [m], one batch of
  // f-queries per distinct block.
  std::vector<std::int8_t> gcache(m, -1);
  auto g_eval = [&](std::uint64_t b) -> bool {
    if (gcache[b] < 0) {
      const std::uint64_t lo = b * bsize;
      const std::uint64_t width = std::min(n, (b + 1) * bsize) - lo;
      std::uint64_t ones = 0;
      for (std::uint64_t j = 0; j < maj_q; ++j)
        ones += f.query(lo + rng.below(width)) ? 1 : 0;
      gcache[b] = 2 * ones > maj_q ? 1 : 0;
    }
    return gcache[b] == 1;
  };

  DualDistribution dual(m, g_eval);
  const double est = support_size_estimate(dual, /*eps_prime=*/0.0, cap_w,
                                           rng, s_est);

  Verdict v;
  v.seed = seed;
  // Interval count of a k-monotone function is at most k+1; eps-far
  // functions exceed (1+eps/4)k + 1. Accept at the midpoint margin.
  v.decision = est <= dk + 1.0 + eps * dk / 8.0 ? Decision::ACCEPT
                                                : Decision::REJECT;
  v.note = "support-estimate";
  v.queries = f.queries() - q0;
  return v;
}

}  // namespace kmt
