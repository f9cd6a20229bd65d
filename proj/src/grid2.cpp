#include "kmt/grid2.hpp"

#include <algorithm>
#include <cmath>

#include "kmt/errors.hpp"
#include "kmt/isotonic.hpp"
#include "kmt/kmono.hpp"

namespace kmt {

std::pair<std::uint32_t, std::uint32_t> extract_changepoints(
    std::span<const std::uint8_t> column) {
  const std::size_t n = column.size();
  bool constant = true;
  for (std::size_t i = 1; i < n && constant; ++i)
    constant = column[i] == column[0];
  if (constant) return {1, 1};

  std::uint32_t lseq = 0, hseq = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (column[i] != column[0]) {
      lseq = static_cast<std::uint32_t>(i + 1) - 1;  // 1-indexed min, minus 1
      break;
    }
  for (std::size_t i = n; i-- > 0;)
    if (column[i] != column[n - 1]) {
      hseq = static_cast<std::uint32_t>(i + 1) + 1;  // 1-indexed max, plus 1
      break;
    }
  return {lseq, hseq};
}

namespace {

std::vector<std::uint8_t> read_column(const Function& f, std::uint64_t col) {
  const std::uint64_t n = f.domain().side(0);
  std::vector<std::uint8_t> c(n);
  for (std::uint64_t i = 0; i < n; ++i)
    c[i] = f.eval(i + col * f.domain().stride(1)) ? 1 : 0;
  return c;
}

}  // namespace

bool is_2_columnwise_monotone(const Function& f) {
  const std::uint64_t cols = f.domain().side(1);
  for (std::uint64_t j = 0; j < cols; ++j) {
    const auto c = read_column(f, j);
    const auto val = [&c](std::uint64_t i) { return static_cast<int>(c[i]); };
    if (longest_alternating_chain_marked(DomainSpec::line(c.size()), val) > 2)
      return false;
  }
  return true;
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
column_changepoint_seqs(const Function& f) {
  const std::uint64_t cols = f.domain().side(1);
  std::vector<std::uint32_t> lseq(cols), hseq(cols);
  for (std::uint64_t j = 0; j < cols; ++j) {
    const auto c = read_column(f, j);
    std::tie(lseq[j], hseq[j]) = extract_changepoints(c);
  }
  return {lseq, hseq};
}

namespace grid2_detail {

PaddedBlocks::PaddedBlocks(std::uint64_t n_, double eps,
                           double block_count_mult)
    : n(n_), H(n_ + 2) {
  bs = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(static_cast<double>(H) * eps /
                                    block_count_mult));
  K = (H + bs - 1) / bs;
}

bool PaddedBlocks::gb(FunctionOracle& f, std::uint64_t b,
                      std::uint64_t col) const {
  const std::uint64_t lo = b * bs;
  const std::uint64_t hi = std::min(H, (b + 1) * bs) - 1;
  const std::uint64_t stride = f.domain().stride(1);
  // padded rows 0 and H-1 are identically zero
  auto at = [&](std::uint64_t r) -> bool {
    if (r == 0 || r == H - 1) return false;
    return f.query((r - 1) + col * stride);
  };
  const bool vlo = at(lo);
  if (!vlo) return false;  // star or zero both read as zero
  return lo == hi ? vlo : at(hi);
}

}  // namespace grid2_detail

using grid2_detail::PaddedBlocks;

TildeG::TildeG(FunctionOracle& f, double eps, const Grid2Params& params)
    : f_(f), blocks_(f.domain().side(0), eps, params.block_count_mult) {}

std::pair<std::int64_t, std::int64_t> TildeG::column_region(
    std::uint64_t col) {
  if (auto it = regions_.find(col); it != regions_.end()) return it->second;
  std::int64_t first = 0, last = -1;
  for (std::uint64_t b = 0; b < blocks_.K; ++b)
    if (blocks_.gb(f_, b, col)) {
      if (last < 0) first = static_cast<std::int64_t>(b);
      last = static_cast<std::int64_t>(b);
    }
  const auto region = std::make_pair(first, last);
  regions_.emplace(col, region);
  return region;
}

bool TildeG::value(std::uint64_t padded_row, std::uint64_t col) {
  const auto [first, last] = column_region(col);
  const std::int64_t b =
      static_cast<std::int64_t>(blocks_.block_of_row(padded_row));
  return first <= b && b <= last;
}

double TildeG::lseq_norm(std::uint64_t col) {
  const auto [first, last] = column_region(col);
  if (last < 0) return 0.0;
  return static_cast<double>(first * static_cast<std::int64_t>(blocks_.bs)) /
         static_cast<double>(blocks_.H);
}

double TildeG::hseq_norm(std::uint64_t col) {
  const auto [first, last] = column_region(col);
  if (last < 0) return 0.0;
  return std::min(1.0, static_cast<double>((last + 1) *
                                           static_cast<std::int64_t>(blocks_.bs)) /
                           static_cast<double>(blocks_.H));
}

Function TildeG::as_padded_function() {
  const DomainSpec dom =
      DomainSpec::product({static_cast<std::uint32_t>(blocks_.H),
                           static_cast<std::uint32_t>(blocks_.n)});
  BitTable t(dom.size());
  for (std::uint64_t col = 0; col < blocks_.n; ++col)
    for (std::uint64_t r = 0; r < blocks_.H; ++r)
      t.set(r + col * blocks_.H, value(r, col));
  return Function(dom, std::move(t));
}

RingG::RingG(FunctionOracle& f, double eps, std::uint64_t query_budget,
             const Grid2Params& params)
    : f_(f),
      blocks_(f.domain().side(0), eps, params.block_count_mult),
      budget_(query_budget),
      start_queries_(f.queries()) {
  const std::uint64_t cols = blocks_.n;
  // anchor columns (l-1)*eps*n, plus the final column
  const std::uint64_t step = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(eps * static_cast<double>(cols)));
  for (std::uint64_t j = 0; j < cols; j += step) anchors_.push_back(j);
  if (anchors_.back() != cols - 1) anchors_.push_back(cols - 1);

  // First anchor: full scan. Later anchors: bracketed downward scans from
  // the previous anchor's changepoints.
  anchor_region_.resize(anchors_.size());
  {
    std::int64_t first = 0, last = -1;
    for (std::uint64_t b = 0; b < blocks_.K; ++b)
      if (gb(b, anchors_[0])) {
        if (last < 0) first = static_cast<std::int64_t>(b);
        last = static_cast<std::int64_t>(b);
      }
    anchor_region_[0] = {first, last};
    regions_.emplace(anchors_[0], anchor_region_[0]);
  }
  for (std::size_t a = 1; a < anchors_.size(); ++a) {
    const auto [pf, pl] = anchor_region_[a - 1];
    anchor_region_[a] = scan_region(anchors_[a], pl, 0, pf, 0);
    regions_.emplace(anchors_[a], anchor_region_[a]);
  }
  init_queries_ = f_.queries() - start_queries_;
}

bool RingG::gb(std::uint64_t b, std::uint64_t col) {
  auto& cache = gb_cache_[col];
  if (cache.empty()) cache.assign(blocks_.K, -1);
  if (cache[b] < 0) {
    if (f_.queries() - start_queries_ >= budget_)
      throw BudgetExceeded("ring construction exceeded its query budget");
    cache[b] = blocks_.gb(f_, b, col) ? 1 : 0;
  }
  return cache[b] == 1;
}

// Downward scans within [hi_to, hi_from] for the top of the 1-region and
// [lo_to, lo_from] for its bottom. Exact for 2-monotone f (both bracket
// sequences are then non-increasing); merely deterministic otherwise.
std::pair<std::int64_t, std::int64_t> RingG::scan_region(
    std::uint64_t col, std::int64_t hi_from, std::int64_t hi_to,
    std::int64_t lo_from, std::int64_t lo_to) {
  std::int64_t last = -1;
  for (std::int64_t b = hi_from; b >= std::max<std::int64_t>(hi_to, 0); --b)
    if (gb(static_cast<std::uint64_t>(b), col)) {
      last = b;
      break;
    }
  if (last < 0) return {0, -1};

  std::int64_t first = std::max<std::int64_t>(lo_to, 0);
  for (std::int64_t b = std::min(lo_from, last);
       b >= std::max<std::int64_t>(lo_to, 0); --b) {
    if (!gb(static_cast<std::uint64_t>(b), col)) {
      first = b + 1;
      break;
    }
    first = b;
  }
  return {first, last};
}

std::pair<std::int64_t, std::int64_t> RingG::column_region(std::uint64_t col) {
  if (auto it = regions_.find(col); it != regions_.end()) return it->second;
  // bracketing anchors
  std::size_t a = 0;
  while (a + 1 < anchors_.size() && anchors_[a + 1] <= col) ++a;
  const std::size_t b = std::min(a + 1, anchors_.size() - 1);
  const auto [lf, ll] = anchor_region_[a];
  const auto [rf, rl] = anchor_region_[b];
  auto region = scan_region(col, ll, rl, lf, rf);
  // an empty bracket means the ring column inherits the right anchor
  regions_.emplace(col, region);
  return region;
}

bool RingG::value(std::uint64_t padded_row, std::uint64_t col) {
  const auto [first, last] = column_region(col);
  const std::int64_t b =
      static_cast<std::int64_t>(blocks_.block_of_row(padded_row));
  return first <= b && b <= last;
}

double RingG::lseq_norm(std::uint64_t col) {
  const auto [first, last] = column_region(col);
  if (last < 0) return 0.0;
  return static_cast<double>(first * static_cast<std::int64_t>(blocks_.bs)) /
         static_cast<double>(blocks_.H);
}

double RingG::hseq_norm(std::uint64_t col) {
  const auto [first, last] = column_region(col);
  if (last < 0) return 0.0;
  return std::min(1.0, static_cast<double>((last + 1) *
                                           static_cast<std::int64_t>(blocks_.bs)) /
                           static_cast<double>(blocks_.H));
}

bool l1_monotone_subtester(const std::function<double(std::uint64_t)>& seq,
                           std::uint64_t n, double eps_prime, double delta,
                           Rng& rng, double sample_mult) {
  const std::uint64_t s = static_cast<std::uint64_t>(std::ceil(
      sample_mult / eps_prime *
      std::max(1.0, std::log(1.0 / delta) / std::log(6.0))));
  std::vector<std::uint64_t> pos(s);
  for (auto& p : pos) p = rng.below(n);
  std::sort(pos.begin(), pos.end());
  std::vector<double> vals(s);
  for (std::uint64_t i = 0; i < s; ++i) vals[i] = seq(pos[i]);
  // A subsequence of a monotone sequence is monotone, so exactly monotone
  // inputs always pass.
  return l1_isotonic_exact(vals, /*non_increasing=*/true) <= eps_prime / 2.0;
}

Verdict test_grid2_2monotone(FunctionOracle& f, double eps, std::uint64_t seed,
                             const Grid2Params& params) {
  const DomainSpec& dom = f.domain();
  if (dom.dim() != 2 || dom.side(0) != dom.side(1))
    throw PreconditionViolated("test_grid2_2monotone: square grids only");
  if (eps <= 0.0 || eps > 1.0)
    throw PreconditionViolated("test_grid2_2monotone: eps in (0,1]");
  const std::uint64_t n = dom.side(0);
  const std::uint64_t q0 = f.queries();

  Verdict v;
  v.seed = seed;

  if (static_cast<double>(n) < params.min_side_mult / eps) {
    BitTable t(dom.size());
    for (std::uint64_t i = 0; i < dom.size(); ++i) t.set(i, f.query(i));
    v.decision = is_k_monotone(Function(dom, std::move(t)), 2)
                     ? Decision::ACCEPT
                     : Decision::REJECT;
    v.note = "full-read";
    v.queries = f.queries() - q0;
    return v;
  }

  Rng rng(seed);
  const std::uint64_t budget =
      static_cast<std::uint64_t>(params.query_cap_mult / eps);
  try {
    RingG ring(f, eps, budget, params);
    const std::uint64_t H = ring.blocks().H;

    // Stage 1: both changepoint sequences must be close to non-increasing.
    const double eps_sub = eps / 64.0;
    const auto lseq = [&ring](std::uint64_t j) { return ring.lseq_norm(j); };
    const auto hseq = [&ring](std::uint64_t j) { return ring.hseq_norm(j); };
    if (!l1_monotone_subtester(hseq, n, eps_sub, params.delta, rng,
                               params.l1_sample_mult) ||
        !l1_monotone_subtester(lseq, n, eps_sub, params.delta, rng,
                               params.l1_sample_mult)) {
      v.decision = Decision::REJECT;
      v.note = "changepoints-not-sorted";
      v.queries = f.queries() - q0;
      return v;
    }

    // Stage 2: dist(f, ring) <= eps/8 vs > eps/4, on the padded grid.
    const std::uint64_t sc = static_cast<std::uint64_t>(
        std::ceil(params.dist_sample_mult / eps));
    std::uint64_t mismatch = 0;
    for (std::uint64_t i = 0; i < sc; ++i) {
      const std::uint64_t r = rng.below(H);
      const std::uint64_t c = rng.below(n);
      const bool fv = (r == 0 || r == H - 1) ? false : f.query((r - 1) + c * dom.stride(1));
      if (fv != ring.value(r, c)) ++mismatch;
    }
    if (static_cast<double>(mismatch) >
        3.0 * eps / 16.0 * static_cast<double>(sc)) {
      v.decision = Decision::REJECT;
      v.note = "far-from-ring";
      v.queries = f.queries() - q0;
      return v;
    }
  } catch (const BudgetExceeded&) {
    v.decision = Decision::REJECT;
    v.note = "query-budget";
    v.queries = f.queries() - q0;
    return v;
  }

  v.queries = f.queries() - q0;
  return v;
}

}  // namespace kmt
