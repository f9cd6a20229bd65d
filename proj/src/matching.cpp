#include "kmt/matching.hpp"

#include <algorithm>

#include "kmt/errors.hpp"
#include "kmt/kmono.hpp"

namespace kmt {

namespace {

// Upward counterpart of the chain DP: for every point x,
//   run[x]     = max length of an alternating chain starting at x that uses
//                only unused points (any starting value),
//   upreach[b][x] = max run over unused y >= x with value(y) = b.
struct UpSweep {
  std::vector<std::uint32_t> run, up0, up1;

  UpSweep(const DomainSpec& dom, const BitTable& f,
          const std::vector<std::uint8_t>& used) {
    const std::uint64_t n = dom.size();
    run.assign(n, 0);
    up0.assign(n, 0);
    up1.assign(n, 0);
    for (std::uint64_t x = n; x-- > 0;) {
      std::uint32_t s0 = 0, s1 = 0;
      for (std::uint32_t a = 0; a < dom.dim(); ++a)
        if (dom.coord(x, a) + 1 < dom.side(a)) {
          const std::uint64_t s = x + dom.stride(a);
          s0 = std::max(s0, up0[s]);
          s1 = std::max(s1, up1[s]);
        }
      if (!used[x]) {
        const bool v = f.get(x);
        const std::uint32_t opp = v ? s0 : s1;
        run[x] = 1 + (opp >= 1 ? opp : 0);
        up0[x] = v ? s0 : std::max(s0, run[x]);
        up1[x] = v ? std::max(s1, run[x]) : s1;
      } else {
        up0[x] = s0;
        up1[x] = s1;
      }
    }
  }
};

}  // namespace

DistanceValue greedy_violation_matching(const Function& f, unsigned k,
                                        const ReadBudget& budget) {
  require_full_read(f.domain(), budget.full_read_limit,
                    "greedy_violation_matching");
  const DomainSpec& dom = f.domain();
  const std::uint64_t n = dom.size();
  const BitTable table = f.to_table();
  std::vector<std::uint8_t> used(n, 0);
  std::vector<std::vector<std::uint64_t>> matching;

  // Round-based: each round recomputes the reach tables over the unused
  // points and harvests chains in one index-order sweep. Within a round the
  // tables go stale as chains are removed, so an extraction may fail and be
  // rolled back; a fresh round's first attempt always succeeds, hence the
  // loop terminates, and it terminates only when no violating chain is left
  // among the unused points (the matching is then maximal).
  for (;;) {
    UpSweep sweep(dom, table, used);
    bool took_any = false;
    for (std::uint64_t x = 0; x < n; ++x) {
      if (used[x] || !table.get(x) || sweep.run[x] < k + 1) continue;
      std::vector<std::uint64_t> chain{x};
      used[x] = 1;
      bool ok = true;
      int v = 1;
      for (std::uint32_t need = k; need >= 1 && ok; --need) {
        const int want = 1 - v;
        const auto& up = want == 0 ? sweep.up0 : sweep.up1;
        std::uint64_t cur = chain.back();
        for (;;) {
          std::uint64_t next = cur;
          std::uint32_t best = 0;
          for (std::uint32_t a = 0; a < dom.dim(); ++a) {
            if (dom.coord(cur, a) + 1 >= dom.side(a)) continue;
            const std::uint64_t s = cur + dom.stride(a);
            if (up[s] > best) {
              best = up[s];
              next = s;
            }
          }
          if (best < need) {
            ok = false;
            break;
          }
          cur = next;
          if (!used[cur] && static_cast<int>(table.get(cur)) == want &&
              sweep.run[cur] >= need) {
            chain.push_back(cur);
            used[cur] = 1;
            v = want;
            break;
          }
        }
      }
      if (ok) {
        matching.push_back(std::move(chain));
        took_any = true;
      } else {
        for (std::uint64_t p : chain) used[p] = 0;
      }
    }
    if (!took_any) break;
  }

  DistanceValue out;
  out.value = Rational(static_cast<std::int64_t>(matching.size()),
                       static_cast<std::int64_t>(n));
  out.is_lower_bound = true;
  out.matching = std::move(matching);
  return out;
}

std::vector<std::vector<std::uint64_t>> enumerate_violating_chains(
    const Function& f, unsigned k, const ReadBudget& budget) {
  require_full_read(f.domain(),
                    std::min<std::uint64_t>(budget.full_read_limit, 1ULL << 16),
                    "enumerate_violating_chains");
  const DomainSpec& dom = f.domain();
  const std::uint64_t n = dom.size();
  std::vector<std::vector<std::uint64_t>> chains;
  std::vector<std::uint64_t> stack;

  // DFS over strict extensions with the alternating value pattern.
  auto extend = [&](auto&& self, std::uint64_t last) -> void {
    if (stack.size() == k + 1) {
      chains.push_back(stack);
      return;
    }
    const bool want = stack.size() % 2 == 0;  // 1,0,1,... along the chain
    for (std::uint64_t y = last + 1; y < n; ++y)
      if (f.eval(y) == want && dom.less(last, y)) {
        stack.push_back(y);
        self(self, y);
        stack.pop_back();
      }
  };

  for (std::uint64_t x = 0; x < n; ++x)
    if (f.eval(x)) {
      stack.assign(1, x);
      extend(extend, x);
    }
  return chains;
}

std::uint32_t max_violation_matching_exact(const Function& f, unsigned k,
                                           const ReadBudget& budget) {
  require_full_read(f.domain(), budget.exact_matching_limit,
                    "max_violation_matching_exact");
  const std::uint32_t n = static_cast<std::uint32_t>(f.size());
  const auto chains = enumerate_violating_chains(f, k, budget);

  // Chain vertex sets as bitmasks, grouped by lowest vertex.
  std::vector<std::vector<std::uint32_t>> by_low(n);
  for (const auto& c : chains) {
    std::uint32_t mask = 0;
    for (std::uint64_t p : c) mask |= 1u << p;
    by_low[static_cast<std::uint32_t>(c.front())].push_back(mask);
  }

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<std::int8_t> memo(static_cast<std::size_t>(full) + 1, -1);
  auto solve = [&](auto&& self, std::uint32_t avail) -> std::int8_t {
    if (avail == 0) return 0;
    std::int8_t& m = memo[avail];
    if (m >= 0) return m;
    const std::uint32_t low = __builtin_ctz(avail);
    std::int8_t best = self(self, avail & (avail - 1));  // leave `low` unmatched
    for (std::uint32_t mask : by_low[low])
      if ((mask & avail) == mask)
        best = std::max<std::int8_t>(
            best, static_cast<std::int8_t>(1 + self(self, avail & ~mask)));
    m = best;
    return m;
  };
  return static_cast<std::uint32_t>(solve(solve, full));
}

BitTable extend_partial(const DomainSpec& dom, std::span<const int> partial,
                        unsigned k) {
  const std::uint64_t n = dom.size();
  if (partial.size() != n)
    throw PreconditionViolated("extend_partial: assignment size mismatch");

  std::vector<int> values(partial.begin(), partial.end());
  auto value_at = [&values](std::uint64_t i) { return values[i]; };
  if (longest_alternating_chain_marked(dom, value_at) > k)
    throw PreconditionViolated(
        "extend_partial: partial assignment is not k-monotone");

  std::uint64_t remaining = 0;
  for (std::uint64_t i = 0; i < n; ++i)
    if (values[i] < 0) ++remaining;

  while (remaining > 0) {
    // Minimal unassigned point: no unassigned point strictly below it.
    std::vector<std::uint8_t> blocked(n, 0);  // has an unassigned point below
    std::uint64_t v = n;
    for (std::uint64_t x = 0; x < n; ++x) {
      bool below = false;
      for (std::uint32_t a = 0; a < dom.dim(); ++a)
        if (dom.coord(x, a) > 0) {
          const std::uint64_t p = x - dom.stride(a);
          if (blocked[p] || values[p] < 0) below = true;
        }
      blocked[x] = below;
      if (v == n && values[x] < 0 && !below) v = x;
    }

    // One of the two values never creates the forbidden pattern.
    values[v] = 0;
    if (longest_alternating_chain_marked(dom, value_at) > k) {
      values[v] = 1;
      if (longest_alternating_chain_marked(dom, value_at) > k)
        throw PreconditionViolated(
            "extend_partial: no consistent value at a minimal point");
    }
    --remaining;
  }

  BitTable out(n);
  for (std::uint64_t i = 0; i < n; ++i) out.set(i, values[i] == 1);
  return out;
}

}  // namespace kmt
