#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kmt/domain.hpp"
#include "kmt/function.hpp"

namespace kmt {

// A point value as seen by the chain DP: 0, 1, or absent (points outside a
// queried/assigned subset are transparent to chains).
constexpr int kAbsent = -1;

namespace detail {

// Downward sweep. For every point x computes, over marked y <= x,
//   reach[b][x] = max length of an alternating chain that starts at value 1
//                 and ends at a marked y <= x with value(y) = b,
// and len[x] = that quantity for chains ending exactly at x (0 if none).
// Index order is a linear extension of the coordinatewise order and the
// maxima propagate along covering edges, so one pass suffices.
template <typename ValueFn>
struct DownSweep {
  std::vector<std::uint32_t> len, reach0, reach1;
  std::uint32_t longest = 0;

  DownSweep(const DomainSpec& dom, const ValueFn& value, bool keep_len) {
    const std::uint64_t n = dom.size();
    const std::uint32_t d = dom.dim();
    reach0.assign(n, 0);
    reach1.assign(n, 0);
    if (keep_len) len.assign(n, 0);
    for (std::uint64_t x = 0; x < n; ++x) {
      std::uint32_t s0 = 0, s1 = 0;
      std::uint64_t rem = x;
      for (std::uint32_t a = 0; a < d; ++a) {
        const std::uint32_t c = static_cast<std::uint32_t>(rem % dom.side(a));
        rem /= dom.side(a);
        if (c > 0) {
          const std::uint64_t p = x - dom.stride(a);
          if (reach0[p] > s0) s0 = reach0[p];
          if (reach1[p] > s1) s1 = reach1[p];
        }
      }
      const int v = value(x);
      std::uint32_t l = 0;
      if (v == 1)
        l = s0 >= 1 ? s0 + 1 : 1;
      else if (v == 0)
        l = s1 >= 1 ? s1 + 1 : 0;
      if (l > longest) longest = l;
      if (keep_len) len[x] = l;
      reach0[x] = (v == 0 && l > s0) ? l : s0;
      reach1[x] = (v == 1 && l > s1) ? l : s1;
    }
  }
};

}  // namespace detail

// Longest chain whose values alternate and start with 1, over the marked
// points of `value`. L = 0 when no marked point has value 1; a function is
// k-monotone exactly when L <= k (a violating chain has k+1 points).
template <typename ValueFn>
std::uint32_t longest_alternating_chain_marked(const DomainSpec& dom,
                                               const ValueFn& value) {
  detail::DownSweep<ValueFn> sweep(dom, value, false);
  return sweep.longest;
}

std::uint32_t longest_alternating_chain(const Function& f,
                                        const ReadBudget& budget = {});

bool is_k_monotone(const Function& f, unsigned k, const ReadBudget& budget = {});

// Extracts a violating (k+1)-chain if one exists among the marked points.
// Reconstructs a full maximal alternating chain (which starts at value 1 by
// the DP's definition) by walking the reach tables downward, then keeps its
// first k+1 points.
template <typename ValueFn>
std::optional<std::vector<std::uint64_t>> find_violation_marked(
    const DomainSpec& dom, const ValueFn& value, unsigned k) {
  detail::DownSweep<ValueFn> sweep(dom, value, true);
  if (sweep.longest < k + 1) return std::nullopt;

  const std::uint64_t n = dom.size();
  std::uint64_t top = 0;
  std::uint32_t top_len = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    const std::uint32_t l = sweep.len[x];
    if (l >= k + 1 && (top_len == 0 || l < top_len)) {
      top_len = l;
      top = x;
    }
  }

  std::vector<std::uint64_t> rchain{top};  // top-down
  std::uint64_t cur = top;
  int v = value(top);
  for (std::uint32_t need = top_len - 1; need >= 1; --need) {
    const int want = 1 - v;
    const auto& reach = want == 0 ? sweep.reach0 : sweep.reach1;
    // Descend along covering edges toward a marked point with value `want`
    // and len >= need. The reach tables are exact, so the walk cannot
    // dead-end: while cur does not qualify, some predecessor carries the
    // needed reach.
    for (;;) {
      std::uint64_t next = cur;
      std::uint32_t best = 0;
      for (std::uint32_t a = 0; a < dom.dim(); ++a) {
        if (dom.coord(cur, a) == 0) continue;
        const std::uint64_t p = cur - dom.stride(a);
        if (reach[p] > best) {
          best = reach[p];
          next = p;
        }
      }
      cur = next;
      if (value(cur) == want && sweep.len[cur] >= need) break;
    }
    rchain.push_back(cur);
    v = want;
  }
  std::vector<std::uint64_t> chain(rchain.rbegin(), rchain.rend());
  chain.resize(k + 1);  // a prefix of a violating chain is a violation
  return chain;
}

std::optional<std::vector<std::uint64_t>> find_violation(
    const Function& f, unsigned k, const ReadBudget& budget = {});

// Checks that a claimed witness is a strict chain carrying the forbidden
// alternating pattern (first value 1, k alternations).
bool chain_is_violation(const Function& f, unsigned k,
                        const std::vector<std::uint64_t>& chain);

}  // namespace kmt
