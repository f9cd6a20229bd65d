#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kmt/domain.hpp"
#include "kmt/function.hpp"
#include "kmt/rational.hpp"
#include "kmt/rng.hpp"

namespace kmt {

// Partition of a hypergrid into exactly min(m, n) blocks per axis, block
// index floor(y * m / n). Sizes per axis differ by at most one; when m
// divides n every block is an exact coset of side n/m.
class BlockMap {
 public:
  BlockMap(DomainSpec points, std::uint32_t m);

  const DomainSpec& points() const { return points_; }
  const DomainSpec& blocks() const { return blocks_; }
  std::uint32_t requested_m() const { return m_; }

  std::uint64_t block_of(std::uint64_t point) const;
  // Per-axis [lo, hi) point ranges of a block.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> extents(
      std::uint64_t block) const;
  std::uint64_t block_size(std::uint64_t block) const;
  std::uint64_t uniform_point_in(std::uint64_t block, Rng& rng) const;

  // Visits every point of a block in index order.
  template <typename Fn>
  void for_each_point(std::uint64_t block, Fn&& fn) const {
    const auto ext = extents(block);
    std::vector<std::uint32_t> c(ext.size());
    for (std::size_t a = 0; a < ext.size(); ++a) c[a] = ext[a].first;
    for (;;) {
      fn(points_.encode(c));
      std::size_t a = 0;
      for (; a < ext.size(); ++a) {
        if (++c[a] < ext[a].second) break;
        c[a] = ext[a].first;
      }
      if (a == ext.size()) return;
    }
  }

 private:
  DomainSpec points_;
  DomainSpec blocks_;
  std::uint32_t m_;
  std::vector<std::uint32_t> meff_;  // per-axis block count, min(m, n_a)
};

enum class BlockValue : std::uint8_t { zero = 0, one = 1, star = 2 };
enum class CoarseningRule : std::uint8_t { majority, endpoint };

struct CoarsenedFunction {
  BlockMap map;
  std::vector<BlockValue> values;  // by block index
  CoarseningRule rule;
  Rational dist_to_source{0, 1};  // exact, majority rule only

  // Block-constant view on the point domain; stars read as zero.
  Function as_function() const;
  // The same values as a function on the block domain.
  Function block_function() const;
};

// Blockwise majority, ties to zero. Reads the whole function; also records
// the exact distance to the source (majority minimizes it blockwise).
CoarsenedFunction coarsen_majority(const Function& f, std::uint32_t m,
                                   const ReadBudget& budget = {});

// Line-only endpoint rule: two queries per block; star when the block's
// endpoint values disagree.
CoarsenedFunction coarsen_endpoint_line(FunctionOracle& f, std::uint32_t K);

struct VariableBlockParams {
  double minority_threshold_div = 100.0;  // variable = minority >= eps/100
  double blocks_sampled_mult = 576.0;     // samples: mult / eps
  double per_block_delta = 0.01;
};

// Promise test: with f k-monotone it reports true ("at most k variable
// blocks"); with more than 5k/4 variable blocks it reports false. Samples
// blocks with replacement so the query count does not depend on k.
bool variable_block_fraction_test(FunctionOracle& f, std::uint32_t m,
                                  unsigned k, double eps, double delta,
                                  Rng& rng,
                                  const VariableBlockParams& params = {});

// Exact number of variable blocks (full read).
std::uint32_t count_variable_blocks(const Function& f, std::uint32_t m,
                                    double eps,
                                    const VariableBlockParams& params = {});

// For k-monotone f: dist(f, majority coarsening) < k d / m.
bool check_coarsening_lemma(const Function& f, std::uint32_t m, unsigned k,
                            const ReadBudget& budget = {});

// Nonconstant-block counts along the diagonal block chains {x + l*(1,..,1)}
// anchored at blocks with some zero coordinate.
std::vector<std::uint32_t> diagonal_nonconstant_counts(const Function& f,
                                                       std::uint32_t m);

}  // namespace kmt
