#include "kmt/coarsen.hpp"

#include <algorithm>
#include <cmath>

#include "kmt/errors.hpp"
#include "kmt/kmono.hpp"

namespace kmt {

BlockMap::BlockMap(DomainSpec points, std::uint32_t m)
    : points_(std::move(points)), m_(m) {
  if (m == 0) throw PreconditionViolated("BlockMap: m must be >= 1");
  std::vector<std::uint32_t> bdims(points_.dim());
  meff_.resize(points_.dim());
  for (std::uint32_t a = 0; a < points_.dim(); ++a) {
    meff_[a] = std::min(m, points_.side(a));
    bdims[a] = meff_[a];
  }
  blocks_ = DomainSpec::product(bdims);
}

std::uint64_t BlockMap::block_of(std::uint64_t point) const {
  std::uint64_t idx = 0;
  for (std::uint32_t a = 0; a < points_.dim(); ++a) {
    const std::uint64_t c = points_.coord(point, a);
    idx += (c * meff_[a] / points_.side(a)) * blocks_.stride(a);
  }
  return idx;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> BlockMap::extents(
    std::uint64_t block) const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ext(points_.dim());
  for (std::uint32_t a = 0; a < points_.dim(); ++a) {
    const std::uint64_t i = blocks_.coord(block, a);
    const std::uint64_t n = points_.side(a);
    const std::uint64_t me = meff_[a];
    ext[a] = {static_cast<std::uint32_t>((i * n + me - 1) / me),
              static_cast<std::uint32_t>(((i + 1) * n + me - 1) / me)};
  }
  return ext;
}

std::uint64_t BlockMap::block_size(std::uint64_t block) const {
  std::uint64_t s = 1;
  for (const auto& [lo, hi] : extents(block)) s *= hi - lo;
  return s;
}

std::uint64_t BlockMap::uniform_point_in(std::uint64_t block, Rng& rng) const {
  const auto ext = extents(block);
  std::vector<std::uint32_t> c(ext.size());
  for (std::size_t a = 0; a < ext.size(); ++a)
    c[a] = ext[a].first +
           static_cast<std::uint32_t>(rng.below(ext[a].second - ext[a].first));
  return points_.encode(c);
}

Function CoarsenedFunction::as_function() const {
  const BlockMap m = map;
  auto vals = values;
  return Function(m.points(), [m, vals](std::uint64_t p) {
    return vals[m.block_of(p)] == BlockValue::one;
  });
}

Function CoarsenedFunction::block_function() const {
  BitTable t(map.blocks().size());
  for (std::uint64_t b = 0; b < map.blocks().size(); ++b)
    t.set(b, values[b] == BlockValue::one);
  return Function(map.blocks(), std::move(t));
}

CoarsenedFunction coarsen_majority(const Function& f, std::uint32_t m,
                                   const ReadBudget& budget) {
  require_full_read(f.domain(), budget.full_read_limit, "coarsen_majority");
  BlockMap map(f.domain(), m);
  std::vector<BlockValue> vals(map.blocks().size());
  std::uint64_t minority_total = 0;
  for (std::uint64_t b = 0; b < map.blocks().size(); ++b) {
    std::uint64_t ones = 0, total = 0;
    map.for_each_point(b, [&](std::uint64_t p) {
      ones += f.eval(p) ? 1 : 0;
      ++total;
    });
    const bool maj = 2 * ones > total;  // ties to zero
    vals[b] = maj ? BlockValue::one : BlockValue::zero;
    minority_total += maj ? total - ones : ones;
  }
  CoarsenedFunction out{std::move(map), std::move(vals),
                        CoarseningRule::majority};
  out.dist_to_source =
      Rational(static_cast<std::int64_t>(minority_total),
               static_cast<std::int64_t>(f.size()));
  return out;
}

CoarsenedFunction coarsen_endpoint_line(FunctionOracle& f, std::uint32_t K) {
  if (f.domain().kind() != DomainKind::line)
    throw PreconditionViolated("coarsen_endpoint_line: line domains only");
  BlockMap map(f.domain(), K);
  std::vector<BlockValue> vals(map.blocks().size());
  for (std::uint64_t b = 0; b < map.blocks().size(); ++b) {
    const auto ext = map.extents(b);
    const bool lo = f.query(ext[0].first);
    const bool hi = ext[0].second - 1 == ext[0].first
                        ? lo
                        : f.query(ext[0].second - 1);
    vals[b] = lo == hi ? (lo ? BlockValue::one : BlockValue::zero)
                       : BlockValue::star;
  }
  return CoarsenedFunction{std::move(map), std::move(vals),
                           CoarseningRule::endpoint};
}

namespace {

bool block_is_variable(const Function& f, const BlockMap& map,
                       std::uint64_t block, double eps,
                       const VariableBlockParams& params) {
  std::uint64_t ones = 0, total = 0;
  map.for_each_point(block, [&](std::uint64_t p) {
    ones += f.eval(p) ? 1 : 0;
    ++total;
  });
  const std::uint64_t minority = std::min(ones, total - ones);
  return static_cast<double>(minority) >=
         (eps / params.minority_threshold_div) * static_cast<double>(total);
}

}  // namespace

std::uint32_t count_variable_blocks(const Function& f, std::uint32_t m,
                                    double eps,
                                    const VariableBlockParams& params) {
  BlockMap map(f.domain(), m);
  std::uint32_t s = 0;
  for (std::uint64_t b = 0; b < map.blocks().size(); ++b)
    if (block_is_variable(f, map, b, eps, params)) ++s;
  return s;
}

bool variable_block_fraction_test(FunctionOracle& f, std::uint32_t m,
                                  unsigned k, double eps, double delta,
                                  Rng& rng, const VariableBlockParams& params) {
  BlockMap map(f.domain(), m);
  const std::uint64_t blocks = map.blocks().size();
  const std::uint64_t q = static_cast<std::uint64_t>(
      std::ceil(params.blocks_sampled_mult / eps *
                std::max(1.0, std::log(2.0 / delta) / std::log(20.0))));
  // Catching a minority of eps/100 of a block with miss probability delta'
  // takes (100/eps) ln(1/delta') uniform in-block queries.
  const std::uint64_t per_block = static_cast<std::uint64_t>(
      std::ceil(params.minority_threshold_div / eps *
                std::log(1.0 / params.per_block_delta)));

  // A block drawn more than once keeps its first flag; the estimate's
  // expectation is unchanged and the query count stays bounded by the
  // number of distinct blocks.
  std::vector<std::int8_t> flag(blocks, -1);
  std::uint64_t flagged = 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    const std::uint64_t b = rng.below(blocks);
    if (flag[b] < 0) {
      bool seen0 = false, seen1 = false;
      for (std::uint64_t j = 0; j < per_block && !(seen0 && seen1); ++j) {
        if (f.query(map.uniform_point_in(b, rng)))
          seen1 = true;
        else
          seen0 = true;
      }
      flag[b] = seen0 && seen1 ? 1 : 0;
    }
    flagged += flag[b];
  }
  // Estimated variable-block count against the midpoint of the promise gap
  // [k, 5k/4]. Constant blocks are never flagged, so a k-monotone function
  // (at most k nonconstant blocks) passes whenever the estimate concentrates.
  const double est =
      static_cast<double>(flagged) / static_cast<double>(q) *
      static_cast<double>(blocks);
  return est <= 9.0 * static_cast<double>(k) / 8.0;
}

bool check_coarsening_lemma(const Function& f, std::uint32_t m, unsigned k,
                            const ReadBudget& budget) {
  if (!is_k_monotone(f, k, budget))
    throw PreconditionViolated("check_coarsening_lemma: f is not k-monotone");
  const auto coarse = coarsen_majority(f, m, budget);
  return coarse.dist_to_source <
         Rational(static_cast<std::int64_t>(k) * f.domain().dim(), m);
}

std::vector<std::uint32_t> diagonal_nonconstant_counts(const Function& f,
                                                       std::uint32_t m) {
  BlockMap map(f.domain(), m);
  const DomainSpec& bd = map.blocks();
  std::vector<std::uint32_t> counts;
  std::vector<std::uint32_t> c(bd.dim());
  for (std::uint64_t start = 0; start < bd.size(); ++start) {
    bd.decode(start, c);
    if (std::find(c.begin(), c.end(), 0u) == c.end()) continue;
    std::uint32_t nonconstant = 0;
    for (std::vector<std::uint32_t> cur = c;;) {
      const std::uint64_t b = bd.encode(cur);
      bool first = true, value = false, constant = true;
      map.for_each_point(b, [&](std::uint64_t p) {
        const bool v = f.eval(p);
        if (first) {
          value = v;
          first = false;
        } else if (v != value) {
          constant = false;
        }
      });
      if (!constant) ++nonconstant;
      bool done = false;
      for (std::uint32_t a = 0; a < bd.dim(); ++a)
        if (++cur[a] >= bd.side(a)) done = true;
      if (done) break;
    }
    counts.push_back(nonconstant);
  }
  return counts;
}

}  // namespace kmt
