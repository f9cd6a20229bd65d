#include "kmt/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "kmt/errors.hpp"
#include "kmt/kmono.hpp"
#include "kmt/rng.hpp"

namespace kmt {

namespace {

using nlohmann::json;

void attach_metadata(InstanceBundle& b, unsigned k) {
  b.k = k;
  const std::uint64_t n = b.fn.size();
  if (n <= (1ULL << 21)) b.k_monotone = is_k_monotone(b.fn, k);
  if (b.fn.domain().kind() == DomainKind::line) {
    b.exact_distance = exact_distance_line_dp(b.fn, k).value;
  } else if (k == 1 && n <= 4096) {
    b.exact_distance = exact_distance_monotone_mincut(b.fn).value;
  } else if (n <= 24) {
    b.exact_distance = exact_distance_bruteforce(b.fn, k).value;
  }
  // certified lower bound where no exact engine applies
  if (b.k_monotone.has_value() && !*b.k_monotone && !b.exact_distance &&
      n <= (1ULL << 20))
    b.matching_bound = greedy_violation_matching(b.fn, k);
}

// Random staircase table on [n] with the given run lengths, first run value
// `first`.
BitTable staircase_table(std::uint64_t n, const std::vector<std::uint64_t>& runs,
                         bool first) {
  BitTable t(n);
  std::uint64_t pos = 0;
  bool v = first;
  for (std::uint64_t len : runs) {
    for (std::uint64_t i = 0; i < len && pos < n; ++i, ++pos) t.set(pos, v);
    v = !v;
  }
  for (; pos < n; ++pos) t.set(pos, !v);  // unreachable when runs sum to n
  return t;
}

std::vector<std::uint64_t> jittered_runs(std::uint64_t n, unsigned count,
                                         double jitter, Rng& rng) {
  if (count > n) throw ConstructionFailed("more runs than points");
  std::vector<double> w(count);
  double total = 0.0;
  for (auto& x : w) {
    x = 1.0 + jitter * (2.0 * rng.unit() - 1.0);
    total += x;
  }
  // balanced cut positions: every run stays near its weighted share and no
  // run degenerates or swallows the remainder
  std::vector<std::uint64_t> runs(count);
  std::uint64_t prev = 0;
  double cum = 0.0;
  for (unsigned i = 0; i + 1 < count; ++i) {
    cum += w[i];
    const auto target = static_cast<std::uint64_t>(
        std::llround(cum / total * static_cast<double>(n)));
    const std::uint64_t lo = prev + 1;
    const std::uint64_t hi = n - (count - 1 - i);
    const std::uint64_t cut = std::clamp(target, lo, hi);
    runs[i] = cut - prev;
    prev = cut;
  }
  runs[count - 1] = n - prev;
  return runs;
}

}  // namespace

InstanceBundle gen_gv_line(std::uint64_t n, unsigned k, double eps,
                           std::uint64_t seed) {
  if (k < 1 || eps <= 0.0 || eps > 1.0)
    throw PreconditionViolated("gen_gv_line: need k >= 1, eps in (0,1]");
  // K = k/eps blocks, rounded to the nearest even integer >= 2.
  std::uint64_t K = static_cast<std::uint64_t>(
      std::llround(static_cast<double>(k) / eps));
  if (K % 2) ++K;
  K = std::max<std::uint64_t>(2, K);
  if (K > n) throw PreconditionViolated("gen_gv_line: more blocks than points");

  Rng rng(seed);
  std::vector<std::uint8_t> blockval(K, 1);
  std::uint64_t zeros = 0;
  for (std::uint64_t i = 0; i < K; i += 2) {  // every other block is random
    const bool zero = rng.bernoulli(6.0 * eps);
    blockval[i] = zero ? 0 : 1;
    zeros += zero;
  }

  const std::uint64_t bsize = n / K;  // deviation recorded: ragged last block
  BitTable t(n);
  for (std::uint64_t p = 0; p < n; ++p)
    t.set(p, blockval[std::min(p / bsize, K - 1)]);

  InstanceBundle b;
  b.fn = Function(DomainSpec::line(n), std::move(t));
  b.family = "gv_line";
  b.seed = seed;
  b.params_json = json{{"n", n}, {"k", k}, {"eps", eps}, {"K", K},
                       {"zero_blocks", zeros}}
                      .dump();
  attach_metadata(b, k);
  return b;
}

InstanceBundle gen_anti_parity(unsigned d, const std::vector<unsigned>& S,
                               unsigned k, std::uint64_t seed) {
  for (unsigned i : S)
    if (i >= d) throw PreconditionViolated("gen_anti_parity: S out of range");
  std::uint64_t smask = 0;
  for (unsigned i : S) smask |= 1ULL << i;
  const double half = d / 2.0;
  const double width = std::sqrt(static_cast<double>(d));

  const DomainSpec dom = DomainSpec::cube(d);
  BitTable t(dom.size());
  for (std::uint64_t x = 0; x < dom.size(); ++x) {
    const int w = __builtin_popcountll(x);
    if (std::abs(w - half) > width) continue;
    const bool parity = __builtin_popcountll(x & smask) & 1;
    t.set(x, !parity);
  }

  InstanceBundle b;
  b.fn = Function(dom, std::move(t));
  b.family = "anti_parity";
  b.seed = seed;
  b.params_json = json{{"d", d}, {"S", S}}.dump();
  attach_metadata(b, k);
  return b;
}

InstanceBundle gen_compose_gh(const Function& g_half, unsigned k,
                              std::uint64_t seed) {
  if (g_half.domain().kind() != DomainKind::cube)
    throw PreconditionViolated("gen_compose_gh: g must live on a cube");
  const unsigned dh = g_half.domain().dim();
  const double target = std::pow(2.0, dh) / static_cast<double>(k);
  const double tol = static_cast<double>(k) / std::sqrt(static_cast<double>(dh));
  const double lo_mass = (1.0 - tol) * target;
  const double hi_mass = (1.0 + tol) * target;

  // Greedy packing of consecutive layers into k blocks.
  std::vector<double> layer(dh + 1);
  for (unsigned w = 0; w <= dh; ++w) {
    double c = 1;
    for (unsigned i = 0; i < w; ++i) c = c * (dh - i) / (i + 1);
    layer[w] = c;
  }
  std::vector<unsigned> block_of_layer(dh + 1, k - 1);
  unsigned layer_idx = 0;
  for (unsigned b = 0; b + 1 < k; ++b) {
    // fill each block up to its target share of the cube
    double mass = 0.0;
    while (layer_idx <= dh && (mass < target || mass == 0.0)) {
      mass += layer[layer_idx];
      block_of_layer[layer_idx] = b;
      ++layer_idx;
    }
    if (mass < lo_mass || mass > hi_mass)
      throw ConstructionFailed("gen_compose_gh: block mass bounds unmet");
  }
  double last = 0.0;
  for (unsigned w = layer_idx; w <= dh; ++w) last += layer[w];
  if (k > 1 && (last < lo_mass || last > hi_mass))
    throw ConstructionFailed("gen_compose_gh: final block mass unmet");

  // h holds (i+1 mod 2) on block i (1-indexed): block 1 -> 0, block 2 -> 1.
  auto h_of = [block_of_layer](std::uint64_t y) {
    return block_of_layer[__builtin_popcountll(y)] % 2 == 1;
  };

  const DomainSpec dom = DomainSpec::cube(2 * dh);
  const std::uint64_t xmask = (1ULL << dh) - 1;
  Function g = g_half;
  BitTable t(dom.size());
  for (std::uint64_t p = 0; p < dom.size(); ++p)
    t.set(p, g.eval(p & xmask) ^ h_of(p >> dh));

  // The construction promises a (k-1)-monotone h.
  BitTable ht(g_half.domain().size());
  for (std::uint64_t y = 0; y < ht.size(); ++y) ht.set(y, h_of(y));
  if (k >= 2 &&
      !is_k_monotone(Function(g_half.domain(), std::move(ht)), k - 1))
    throw ConstructionFailed("gen_compose_gh: h is not (k-1)-monotone");

  InstanceBundle b;
  b.fn = Function(dom, std::move(t));
  b.family = "compose_gh";
  b.seed = seed;
  b.params_json = json{{"d", 2 * dh}, {"k", k}}.dump();
  attach_metadata(b, k);
  return b;
}

InstanceBundle gen_random_k_monotone(const DomainSpec& dom, unsigned k,
                                     std::uint64_t seed) {
  Rng rng(seed);
  InstanceBundle b;
  b.family = "random_kmono";
  b.seed = seed;
  b.k = k;

  auto random_pattern = [&](std::uint64_t len) {
    // Alternating pattern on [len] with at most k runs counted from the
    // first 1-run.
    const bool first = rng.bernoulli(0.5);
    const unsigned max_runs =
        static_cast<unsigned>(std::min<std::uint64_t>(len, k + (first ? 0 : 1)));
    const unsigned runs = 1 + static_cast<unsigned>(rng.below(max_runs));
    return staircase_table(len, jittered_runs(len, runs, 0.9, rng), first);
  };

  if (dom.kind() == DomainKind::line) {
    b.fn = Function(dom, random_pattern(dom.size()));
  } else {
    // Pattern over the level sets of the (possibly coarsened) grid.
    std::uint32_t m = dom.side(0);
    if (rng.bernoulli(0.5)) {
      std::vector<std::uint32_t> divisors;
      for (std::uint32_t c = 2; c <= dom.side(0); ++c)
        if (dom.side(0) % c == 0) divisors.push_back(c);
      if (!divisors.empty()) m = divisors[rng.below(divisors.size())];
    }
    const std::uint32_t s = dom.side(0) / m;
    std::uint64_t levels = 1;
    for (std::uint32_t a = 0; a < dom.dim(); ++a) levels += m - 1;
    const BitTable pattern = random_pattern(levels);
    const DomainSpec d = dom;
    const std::uint32_t side = s;
    BitTable t(dom.size());
    for (std::uint64_t p = 0; p < dom.size(); ++p) {
      std::uint64_t lvl = 0;
      for (std::uint32_t a = 0; a < d.dim(); ++a) lvl += d.coord(p, a) / side;
      t.set(p, pattern.get(lvl));
    }
    b.fn = Function(dom, std::move(t));
  }
  b.params_json = json{{"k", k}}.dump();
  attach_metadata(b, k);
  if (b.k_monotone.has_value() && !*b.k_monotone)
    throw ConstructionFailed("gen_random_k_monotone: verification failed");
  return b;
}

InstanceBundle gen_noisy(const InstanceBundle& base, double rho,
                         std::uint64_t seed) {
  const std::uint64_t n = base.fn.size();
  const std::uint64_t flips =
      static_cast<std::uint64_t>(rho * static_cast<double>(n));
  BitTable t = base.fn.to_table();
  Rng rng(seed);
  // Partial Fisher-Yates: the first `flips` entries of a uniform permutation.
  std::vector<std::uint64_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::uint64_t i = 0; i < flips; ++i) {
    const std::uint64_t j = i + rng.below(n - i);
    std::swap(idx[i], idx[j]);
    t.flip(idx[i]);
  }
  InstanceBundle b;
  b.fn = Function(base.fn.domain(), std::move(t));
  b.family = base.family + "+noise";
  b.seed = seed;
  b.params_json = json{{"rho", rho}, {"base", base.family}}.dump();
  attach_metadata(b, base.k);
  return b;
}

InstanceBundle gen_alternating_line(std::uint64_t n, unsigned runs,
                                    double jitter, unsigned k,
                                    std::uint64_t seed) {
  if (runs < 1 || runs > n)
    throw PreconditionViolated("gen_alternating_line: bad run count");
  Rng rng(seed);
  InstanceBundle b;
  b.fn = Function(DomainSpec::line(n),
                  staircase_table(n, jittered_runs(n, runs, jitter, rng), true));
  b.family = "alt_line";
  b.seed = seed;
  b.params_json = json{{"n", n}, {"runs", runs}, {"jitter", jitter}}.dump();
  attach_metadata(b, k);
  return b;
}

InstanceBundle gen_band2(std::uint32_t n, std::uint64_t seed) {
  Rng rng(seed);
  const DomainSpec dom = DomainSpec::grid(n, 2);

  // Two sorted-descending uniform profiles; ones strictly between them.
  auto profile = [&](std::uint32_t lo, std::uint32_t hi) {
    std::vector<std::uint32_t> p(n);
    for (auto& x : p)
      x = lo + static_cast<std::uint32_t>(rng.below(hi - lo + 1));
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
  };
  std::vector<std::uint32_t> hi = profile(2, n - 1);
  std::vector<std::uint32_t> lo = profile(1, n - 2);
  // keep the band at least one row wide everywhere: a band that pinches
  // shut and reopens lower down defeats the ring scans even though it is
  // still 2-monotone
  for (std::uint32_t j = 0; j < n; ++j) lo[j] = std::min(lo[j], hi[j] - 1);

  BitTable t(dom.size());
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = lo[j]; i < hi[j]; ++i)
      t.set(dom.encode(std::vector<std::uint32_t>{i, j}), true);

  InstanceBundle b;
  b.fn = Function(dom, std::move(t));
  b.family = "band2";
  b.seed = seed;
  b.params_json = nlohmann::json{{"n", n}}.dump();
  attach_metadata(b, 2);
  return b;
}

InstanceBundle gen_stripes2(std::uint32_t n, std::uint32_t width,
                            std::uint64_t seed) {
  const DomainSpec dom = DomainSpec::grid(n, 2);
  BitTable t(dom.size());
  for (std::uint64_t p = 0; p < dom.size(); ++p)
    t.set(p, (dom.coord(p, 1) / width) % 2 == 0);
  InstanceBundle b;
  b.fn = Function(dom, std::move(t));
  b.family = "stripes2";
  b.seed = seed;
  b.params_json = nlohmann::json{{"n", n}, {"width", width}}.dump();
  attach_metadata(b, 2);
  return b;
}

Function make_majority_cube(unsigned d) {
  const DomainSpec dom = DomainSpec::cube(d);
  return Function(dom, [d](std::uint64_t x) {
    return 2u * static_cast<unsigned>(__builtin_popcountll(x)) > d;
  });
}

Function make_anti_majority_cube(unsigned d) {
  const DomainSpec dom = DomainSpec::cube(d);
  return Function(dom, [d](std::uint64_t x) {
    return 2u * static_cast<unsigned>(__builtin_popcountll(x)) <= d;
  });
}

Function make_generator_function(const std::string& name,
                                 const std::string& params_json,
                                 std::uint64_t seed) {
  const json p = params_json.empty() ? json::object() : json::parse(params_json);
  if (name == "gv_line")
    return gen_gv_line(p.at("n").get<std::uint64_t>(),
                       p.at("k").get<unsigned>(), p.at("eps").get<double>(),
                       seed)
        .fn;
  if (name == "anti_parity")
    return gen_anti_parity(p.at("d").get<unsigned>(),
                           p.at("S").get<std::vector<unsigned>>(),
                           p.value("k", 1u), seed)
        .fn;
  if (name == "compose_gh") {
    const unsigned d = p.at("d").get<unsigned>();
    const std::string g = p.value("g", "majority");
    return gen_compose_gh(g == "majority" ? make_majority_cube(d / 2)
                                          : make_anti_majority_cube(d / 2),
                          p.at("k").get<unsigned>(), seed)
        .fn;
  }
  if (name == "random_kmono") {
    const unsigned d = p.value("d", 1u);
    const std::uint32_t n = p.at("n").get<std::uint32_t>();
    return gen_random_k_monotone(d == 1 ? DomainSpec::line(n)
                                        : DomainSpec::grid(n, d),
                                 p.at("k").get<unsigned>(), seed)
        .fn;
  }
  if (name == "alt_line")
    return gen_alternating_line(p.at("n").get<std::uint64_t>(),
                                p.at("runs").get<unsigned>(),
                                p.value("jitter", 0.2), p.value("k", 1u), seed)
        .fn;
  if (name == "band2") return gen_band2(p.at("n").get<std::uint32_t>(), seed).fn;
  if (name == "stripes2")
    return gen_stripes2(p.at("n").get<std::uint32_t>(),
                        p.at("width").get<std::uint32_t>(), seed)
        .fn;
  if (name == "anti_parity_xor2") {
    // NOT(x1 xor x2) on the square cube; the running exact-distance example.
    const DomainSpec dom = DomainSpec::cube(2);
    return Function(dom, [](std::uint64_t x) {
      return !((x ^ (x >> 1)) & 1);
    });
  }
  throw PreconditionViolated("unknown generator: " + name);
}

}  // namespace kmt
