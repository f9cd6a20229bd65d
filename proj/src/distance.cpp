#include "kmt/distance.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "kmt/errors.hpp"
#include "kmt/kmono.hpp"

namespace kmt {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

inline std::uint8_t run_value(unsigned l) { return l == 0 ? 0 : (l % 2); }

}  // namespace

LineFitResult<std::int64_t> fit_k_alternating_line(
    std::span<const std::int64_t> cost0, std::span<const std::int64_t> cost1,
    unsigned k) {
  const std::size_t n = cost0.size();
  const unsigned states = k + 1;
  std::vector<std::int64_t> dp(states, kInf);
  // choice[i][l]: 1 when state l at position i was entered by advancing a run
  std::vector<std::uint8_t> choice(n * states, 0);

  dp[0] = cost0[0];
  if (k >= 1) {
    dp[1] = cost1[0];
    choice[1] = 1;
  }
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::int64_t> next(states, kInf);
    for (unsigned l = 0; l < states; ++l) {
      std::int64_t best = dp[l];
      std::uint8_t adv = 0;
      if (l >= 1 && dp[l - 1] < best) {
        best = dp[l - 1];
        adv = 1;
      }
      if (best >= kInf) continue;
      const std::int64_t c = run_value(l) ? cost1[i] : cost0[i];
      next[l] = best + c;
      choice[i * states + l] = adv;
    }
    dp.swap(next);
  }

  unsigned best_l = 0;
  for (unsigned l = 1; l < states; ++l)
    if (dp[l] < dp[best_l]) best_l = l;

  LineFitResult<std::int64_t> out;
  out.cost = dp[best_l];
  out.values.assign(n, 0);
  unsigned l = best_l;
  for (std::size_t i = n; i-- > 0;) {
    out.values[i] = run_value(l);
    if (i > 0 && choice[i * states + l]) --l;
  }
  return out;
}

DistanceValue exact_distance_line_dp(const Function& f, unsigned k) {
  if (f.domain().kind() != DomainKind::line)
    throw PreconditionViolated("exact_distance_line_dp: line domains only");
  const std::uint64_t n = f.size();
  std::vector<std::int64_t> cost0(n), cost1(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const bool v = f.eval(i);
    cost0[i] = v ? 1 : 0;  // assigning 0 flips a 1
    cost1[i] = v ? 0 : 1;
  }
  const auto fit = fit_k_alternating_line(cost0, cost1, k);
  return DistanceValue{Rational(fit.cost, static_cast<std::int64_t>(n)), false, {}};
}

namespace {

// Chain DP specialized to <= 32-point domains held in a bitmask, with Hasse
// predecessor lists precomputed once. Used inside the flip-set enumeration.
struct SmallPoset {
  explicit SmallPoset(const DomainSpec& dom) : n(dom.size()) {
    preds.resize(n);
    for (std::uint64_t x = 0; x < n; ++x)
      for (std::uint32_t a = 0; a < dom.dim(); ++a)
        if (dom.coord(x, a) > 0)
          preds[x].push_back(static_cast<std::uint32_t>(x - dom.stride(a)));
  }

  bool k_monotone(std::uint32_t mask, unsigned k) const {
    std::uint8_t reach0[32] = {0}, reach1[32] = {0};
    for (std::uint32_t x = 0; x < n; ++x) {
      std::uint8_t s0 = 0, s1 = 0;
      for (std::uint32_t p : preds[x]) {
        s0 = std::max(s0, reach0[p]);
        s1 = std::max(s1, reach1[p]);
      }
      const bool v = (mask >> x) & 1u;
      std::uint8_t l;
      if (v) {
        l = s0 >= 1 ? static_cast<std::uint8_t>(s0 + 1) : std::uint8_t{1};
        if (l > k) return false;
        reach1[x] = std::max(s1, l);
        reach0[x] = s0;
      } else {
        l = s1 >= 1 ? static_cast<std::uint8_t>(s1 + 1) : std::uint8_t{0};
        if (l > k) return false;
        reach0[x] = std::max(s0, l);
        reach1[x] = s1;
      }
    }
    return true;
  }

  std::uint64_t n;
  std::vector<std::vector<std::uint32_t>> preds;
};

}  // namespace

DistanceValue exact_distance_bruteforce(const Function& f, unsigned k,
                                        const ReadBudget& budget) {
  require_full_read(f.domain(),
                    std::min<std::uint64_t>(budget.bruteforce_limit, 31),
                    "exact_distance_bruteforce");
  const std::uint32_t n = static_cast<std::uint32_t>(f.size());
  std::uint32_t base = 0;
  for (std::uint32_t i = 0; i < n; ++i)
    if (f.eval(i)) base |= 1u << i;

  const SmallPoset poset(f.domain());
  if (poset.k_monotone(base, k))
    return DistanceValue{Rational(0, n), false, {}};

  const std::uint32_t end = 1u << n;
  for (std::uint32_t c = 1; c <= n; ++c) {
    // Gosper's hack over all c-subsets of n bits.
    std::uint32_t x = (1u << c) - 1;
    while (x < end) {
      if (poset.k_monotone(base ^ x, k))
        return DistanceValue{Rational(c, n), false, {}};
      const std::uint32_t u = x & (~x + 1);
      const std::uint32_t v = x + u;
      if (v == 0) break;
      x = v + (((v ^ x) / u) >> 2);
    }
  }
  return DistanceValue{Rational(1, 1), false, {}};  // unreachable: flipping all works
}

namespace {

// Dinic max-flow on a small graph.
struct Dinic {
  struct Edge {
    std::uint32_t to;
    std::int64_t cap;
    std::uint32_t rev;
  };

  explicit Dinic(std::uint32_t n) : graph(n), level(n), iter(n) {}

  void add_edge(std::uint32_t from, std::uint32_t to, std::int64_t cap) {
    graph[from].push_back({to, cap, static_cast<std::uint32_t>(graph[to].size())});
    graph[to].push_back({from, 0, static_cast<std::uint32_t>(graph[from].size() - 1)});
  }

  bool bfs(std::uint32_t s, std::uint32_t t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<std::uint32_t> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::uint32_t v = q.front();
      q.pop();
      for (const Edge& e : graph[v])
        if (e.cap > 0 && level[e.to] < 0) {
          level[e.to] = level[v] + 1;
          q.push(e.to);
        }
    }
    return level[t] >= 0;
  }

  std::int64_t dfs(std::uint32_t v, std::uint32_t t, std::int64_t f) {
    if (v == t) return f;
    for (std::uint32_t& i = iter[v]; i < graph[v].size(); ++i) {
      Edge& e = graph[v][i];
      if (e.cap > 0 && level[v] < level[e.to]) {
        const std::int64_t d = dfs(e.to, t, std::min(f, e.cap));
        if (d > 0) {
          e.cap -= d;
          graph[e.to][e.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  std::int64_t max_flow(std::uint32_t s, std::uint32_t t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      std::int64_t f;
      while ((f = dfs(s, t, kInf)) > 0) flow += f;
    }
    return flow;
  }

  // Vertices reachable from s in the residual graph.
  std::vector<bool> min_cut_side(std::uint32_t s) {
    std::vector<bool> side(graph.size(), false);
    std::queue<std::uint32_t> q;
    side[s] = true;
    q.push(s);
    while (!q.empty()) {
      const std::uint32_t v = q.front();
      q.pop();
      for (const Edge& e : graph[v])
        if (e.cap > 0 && !side[e.to]) {
          side[e.to] = true;
          q.push(e.to);
        }
    }
    return side;
  }

  std::vector<std::vector<Edge>> graph;
  std::vector<int> level;
  std::vector<std::uint32_t> iter;
};

}  // namespace

// Monotone labelings are closed sets of the Hasse DAG, so the cheapest
// monotone fit is a minimum s-t cut with the source side holding the ones:
// cutting s->x puts x on the 0 side (paying cost0), cutting x->t puts it on
// the 1 side (paying cost1), and an infinite edge x->y for each covering
// pair x < y forbids 1-below-0.
MonotoneFit fit_monotone_mincut(const DomainSpec& dom,
                                std::span<const std::int64_t> cost0,
                                std::span<const std::int64_t> cost1) {
  const std::uint64_t n = dom.size();
  const std::uint32_t s = static_cast<std::uint32_t>(n);
  const std::uint32_t t = s + 1;
  Dinic dinic(static_cast<std::uint32_t>(n) + 2);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (cost0[x] > 0) dinic.add_edge(s, x, cost0[x]);
    if (cost1[x] > 0) dinic.add_edge(x, t, cost1[x]);
    for (std::uint32_t a = 0; a < dom.dim(); ++a)
      if (dom.coord(x, a) + 1 < dom.side(a))
        dinic.add_edge(x, static_cast<std::uint32_t>(x + dom.stride(a)), kInf);
  }
  MonotoneFit fit;
  fit.cost = dinic.max_flow(s, t);
  const auto side = dinic.min_cut_side(s);
  fit.values = BitTable(n);
  for (std::uint64_t x = 0; x < n; ++x) fit.values.set(x, side[x]);
  return fit;
}

DistanceValue exact_distance_monotone_mincut(const Function& f,
                                             const ReadBudget& budget) {
  require_full_read(f.domain(), budget.full_read_limit,
                    "exact_distance_monotone_mincut");
  const std::uint64_t n = f.size();
  std::vector<std::int64_t> cost0(n), cost1(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const bool v = f.eval(i);
    cost0[i] = v ? 1 : 0;
    cost1[i] = v ? 0 : 1;
  }
  const auto fit = fit_monotone_mincut(f.domain(), cost0, cost1);
  return DistanceValue{Rational(fit.cost, static_cast<std::int64_t>(n)), false, {}};
}

DistanceValue exact_distance(const Function& f, unsigned k,
                             const ReadBudget& budget) {
  if (f.domain().kind() == DomainKind::line)
    return exact_distance_line_dp(f, k);
  if (k == 1) return exact_distance_monotone_mincut(f, budget);
  return exact_distance_bruteforce(f, k, budget);
}

}  // namespace kmt
