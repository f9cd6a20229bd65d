#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace kmt {

// Exact L1 isotonic regression by pool-adjacent-violators with block
// medians (valid for any separable convex loss; the lower median is used so
// the fit is deterministic). Returns the fitted sequence; the distance is
// sum |x_i - fit_i| divided by n.
//
// Works for any totally ordered value type with subtraction (double,
// Rational).
template <typename T>
struct IsotonicResult {
  std::vector<T> fit;
  T total_deviation;  // un-normalized L1 cost
};

template <typename T>
IsotonicResult<T> isotonic_l1_fit(const std::vector<T>& xs,
                                  bool non_increasing) {
  const std::size_t n = xs.size();
  std::vector<T> v(xs);
  if (non_increasing) std::reverse(v.begin(), v.end());  // reduce to non-decreasing

  struct Block {
    std::size_t begin, end;      // [begin, end) of v
    std::vector<T> sorted;       // block values, sorted
    T median() const { return sorted[(sorted.size() - 1) / 2]; }
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    blocks.push_back(Block{i, i + 1, {v[i]}});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 1].median() <
               blocks[blocks.size() - 2].median()) {
      Block b = std::move(blocks.back());
      blocks.pop_back();
      Block& a = blocks.back();
      std::vector<T> merged(a.sorted.size() + b.sorted.size());
      std::merge(a.sorted.begin(), a.sorted.end(), b.sorted.begin(),
                 b.sorted.end(), merged.begin());
      a.sorted = std::move(merged);
      a.end = b.end;
    }
  }

  IsotonicResult<T> out;
  out.fit.resize(n);
  for (const Block& b : blocks) {
    const T m = b.median();
    for (std::size_t i = b.begin; i < b.end; ++i) out.fit[i] = m;
  }
  if (non_increasing) std::reverse(out.fit.begin(), out.fit.end());

  out.total_deviation = T{};
  for (std::size_t i = 0; i < n; ++i) {
    const T d = xs[i] < out.fit[i] ? out.fit[i] - xs[i] : xs[i] - out.fit[i];
    out.total_deviation = out.total_deviation + d;
  }
  return out;
}

// Normalized exact L1 distance of a [0,1]-valued sequence to the monotone
// (non-increasing or non-decreasing) cone.
double l1_isotonic_exact(const std::vector<double>& xs, bool non_increasing);

}  // namespace kmt
