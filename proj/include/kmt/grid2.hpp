#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kmt/function.hpp"
#include "kmt/rng.hpp"
#include "kmt/verdict.hpp"

namespace kmt {

struct Grid2Params {
  double min_side_mult = 2.0;      // full read below n = 2/eps
  double block_count_mult = 16.0;  // K = 16/eps row blocks per column
  double l1_sample_mult = 2.0;     // subtester samples: mult / eps'
  double dist_sample_mult = 400.0; // distance stage samples: mult / eps
  double query_cap_mult = 4096.0;  // REJECT past cap_mult / eps queries
  double delta = 1.0 / 6.0;        // per-stage failure budget
};

// Low/high changepoints of one column, 1-indexed as in the column-wise
// definition; (1,1) for constant columns.
std::pair<std::uint32_t, std::uint32_t> extract_changepoints(
    std::span<const std::uint8_t> column);

// Every column restriction is 2-monotone.
bool is_2_columnwise_monotone(const Function& f);

// Per-column (lseq, hseq) of a function on [n]^2 (full read).
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>
column_changepoint_seqs(const Function& f);

namespace grid2_detail {

// Shared block geometry over the row-padded grid: H = n+2 rows per column
// (virtual zero rows top and bottom), split into K blocks of bs rows.
// Block values follow the endpoint rule with stars read as zero; the
// padded endpoints are free, real ones cost one query each.
struct PaddedBlocks {
  std::uint64_t n = 0, H = 0, K = 0, bs = 0;

  PaddedBlocks() = default;
  PaddedBlocks(std::uint64_t n_, double eps, double block_count_mult);

  std::uint64_t block_of_row(std::uint64_t r) const {
    return std::min(r / bs, K - 1);
  }

  // Endpoint-rule block value of block `b` in column `col`.
  bool gb(FunctionOracle& f, std::uint64_t b, std::uint64_t col) const;
};

}  // namespace grid2_detail

// The column-wise-monotone repair of the endpoint coarsening: each column
// reads as 0...0 1...1 0...0 at block granularity. Learns one column with a
// full K-block scan, memoized.
class TildeG {
 public:
  TildeG(FunctionOracle& f, double eps, const Grid2Params& params = {});

  // 1-region [first, last] of a column in block units; empty when
  // first > last.
  std::pair<std::int64_t, std::int64_t> column_region(std::uint64_t col);
  bool value(std::uint64_t padded_row, std::uint64_t col);

  double lseq_norm(std::uint64_t col);
  double hseq_norm(std::uint64_t col);

  const grid2_detail::PaddedBlocks& blocks() const { return blocks_; }

  // Full materialization on the padded grid (test support).
  Function as_padded_function();

 private:
  FunctionOracle& f_;
  grid2_detail::PaddedBlocks blocks_;
  std::unordered_map<std::uint64_t, std::pair<std::int64_t, std::int64_t>>
      regions_;
};

// Lazily materialized ring construction: anchor columns are scanned
// downward at initialization; other columns search only between the
// bracketing anchors' changepoints. Coincides with the repair above when f
// is 2-monotone, and is uniquely determined by f regardless.
class RingG {
 public:
  RingG(FunctionOracle& f, double eps, std::uint64_t query_budget,
        const Grid2Params& params = {});

  std::pair<std::int64_t, std::int64_t> column_region(std::uint64_t col);
  bool value(std::uint64_t padded_row, std::uint64_t col);
  double lseq_norm(std::uint64_t col);
  double hseq_norm(std::uint64_t col);

  std::uint64_t anchor_count() const { return anchors_.size(); }
  std::uint64_t init_queries() const { return init_queries_; }
  const grid2_detail::PaddedBlocks& blocks() const { return blocks_; }

 private:
  bool gb(std::uint64_t b, std::uint64_t col);
  std::pair<std::int64_t, std::int64_t> scan_region(
      std::uint64_t col, std::int64_t hi_from, std::int64_t hi_to,
      std::int64_t lo_from, std::int64_t lo_to);

  FunctionOracle& f_;
  grid2_detail::PaddedBlocks blocks_;
  std::uint64_t budget_;
  std::uint64_t start_queries_;
  std::uint64_t init_queries_ = 0;
  std::vector<std::uint64_t> anchors_;
  std::vector<std::pair<std::int64_t, std::int64_t>> anchor_region_;
  std::unordered_map<std::uint64_t, std::pair<std::int64_t, std::int64_t>>
      regions_;
  std::unordered_map<std::uint64_t, std::vector<std::int8_t>> gb_cache_;
};

// Sample-based monotonicity subtester in L1: reads the sequence at uniform
// positions and compares the exact L1 distance of the sampled subsequence
// (in position order) against eps'/2. Always accepts exactly monotone
// sequences.
bool l1_monotone_subtester(const std::function<double(std::uint64_t)>& seq,
                           std::uint64_t n, double eps_prime, double delta,
                           Rng& rng, double sample_mult = 2.0);

// Adaptive two-sided tester for 2-monotonicity on [n]^2.
Verdict test_grid2_2monotone(FunctionOracle& f, double eps, std::uint64_t seed,
                             const Grid2Params& params = {});

}  // namespace kmt
