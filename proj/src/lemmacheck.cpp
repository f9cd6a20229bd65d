#include "kmt/lemmacheck.hpp"

#include <cmath>

#include "kmt/adversaries.hpp"
#include "kmt/coarsen.hpp"
#include "kmt/cube.hpp"
#include "kmt/distance.hpp"
#include "kmt/dualdist.hpp"
#include "kmt/fourier.hpp"
#include "kmt/grid2.hpp"
#include "kmt/highdim.hpp"
#include "kmt/isotonic.hpp"
#include "kmt/kmono.hpp"
#include "kmt/l1bridge.hpp"
#include "kmt/line_testers.hpp"
#include "kmt/matching.hpp"
#include "kmt/rng.hpp"

namespace kmt {

namespace {

Function table_function(const DomainSpec& dom, std::uint64_t mask) {
  BitTable t(dom.size());
  for (std::uint64_t i = 0; i < dom.size(); ++i) t.set(i, (mask >> i) & 1);
  return Function(dom, std::move(t));
}

bool check_oracle_equivalence(std::ostream& os) {
  for (std::uint32_t n = 1; n <= 8; ++n) {
    const DomainSpec dom = DomainSpec::line(n);
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
      const Function f = table_function(dom, mask);
      for (unsigned k = 1; k <= 3; ++k) {
        const auto dp = exact_distance_line_dp(f, k).value;
        const auto bf = exact_distance_bruteforce(f, k).value;
        if (dp != bf) {
          os << "mismatch at n=" << n << " mask=" << mask << " k=" << k
             << ": dp " << dp << " vs brute " << bf << "\n";
          return false;
        }
        if ((dp.num == 0) != is_k_monotone(f, k)) {
          os << "zero-distance mismatch at n=" << n << " mask=" << mask
             << " k=" << k << "\n";
          return false;
        }
      }
    }
  }
  os << "line DP = brute force on all tables, n <= 8, k <= 3\n";
  return true;
}

bool check_monotone_in_k(std::ostream& os) {
  const DomainSpec dom = DomainSpec::grid(3, 2);
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    const Function f = table_function(dom, mask);
    for (unsigned k = 1; k <= 4; ++k)
      if (is_k_monotone(f, k) && !is_k_monotone(f, k + 1)) {
        os << "k-monotone but not (k+1)-monotone: mask=" << mask << "\n";
        return false;
      }
  }
  os << "k-monotonicity is monotone in k on [3]^2\n";
  return true;
}

bool check_matching_bounds(std::ostream& os) {
  // |M| <= eps |P| and Thm-style eps |P| / (k+1) <= max matching, with the
  // greedy maximal matching sandwiched by Fact-style vertex cover bounds.
  const std::vector<DomainSpec> domains = {
      DomainSpec::line(9), DomainSpec::grid(3, 2), DomainSpec::cube(3)};
  for (const auto& dom : domains) {
    const std::uint64_t P = dom.size();
    for (std::uint64_t mask = 0; mask < (1ULL << P); ++mask) {
      const Function f = table_function(dom, mask);
      for (unsigned k = 1; k <= 2; ++k) {
        const auto exact = exact_distance_bruteforce(f, k).value;
        const auto greedy = greedy_violation_matching(f, k);
        const auto maxm = max_violation_matching_exact(f, k);
        const Rational greedy_lb = greedy.value;
        const Rational upper(
            static_cast<std::int64_t>((k + 1) * greedy.matching.size()),
            static_cast<std::int64_t>(P));
        if (!(greedy_lb <= exact && exact <= upper)) {
          os << "greedy sandwich fails: mask=" << mask << " k=" << k << "\n";
          return false;
        }
        // max matching >= eps |P| / (k+1)
        const Rational need = exact * Rational(P, k + 1);
        if (Rational(maxm, 1) < need) {
          os << "matching bound fails: mask=" << mask << " k=" << k << "\n";
          return false;
        }
      }
    }
  }
  os << "matching bounds hold exhaustively on |P| <= 9, k <= 2\n";
  return true;
}

bool check_extendability(std::ostream& os) {
  const std::vector<DomainSpec> domains = {DomainSpec::grid(3, 2),
                                           DomainSpec::cube(3)};
  for (const auto& dom : domains) {
    const std::uint64_t P = dom.size();
    for (unsigned k = 1; k <= 2; ++k) {
      for (std::uint64_t sub = 0; sub < (1ULL << P); ++sub) {
        // enumerate assignments on the subset via its own bits
        std::vector<std::uint64_t> members;
        for (std::uint64_t i = 0; i < P; ++i)
          if ((sub >> i) & 1) members.push_back(i);
        for (std::uint64_t vals = 0; vals < (1ULL << members.size()); ++vals) {
          std::vector<int> partial(P, kAbsent);
          for (std::size_t j = 0; j < members.size(); ++j)
            partial[members[j]] = (vals >> j) & 1;
          const auto pv = [&partial](std::uint64_t i) { return partial[i]; };
          const bool ok = longest_alternating_chain_marked(dom, pv) <= k;
          if (!ok) continue;
          const BitTable ext = extend_partial(dom, partial, k);
          for (std::uint64_t i = 0; i < P; ++i)
            if (partial[i] >= 0 && ext.get(i) != (partial[i] == 1)) {
              os << "extension changed an assigned point\n";
              return false;
            }
          if (!is_k_monotone(Function(dom, ext), k)) {
            os << "extension is not k-monotone (k=" << k << ")\n";
            return false;
          }
        }
      }
    }
  }
  os << "every k-monotone partial assignment extends, [3]^2 and cube(3)\n";
  return true;
}

bool check_coarsening_bound(std::ostream& os) {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto b = gen_random_k_monotone(DomainSpec::grid(16, 2), 2,
                                         rng.next_u64());
    if (!check_coarsening_lemma(b.fn, 4, 2)) {
      os << "coarsening distance bound fails at seed " << b.seed << "\n";
      return false;
    }
  }
  os << "dist(f, majority coarsening) < kd/m on 300 instances\n";
  return true;
}

bool check_diagonal_chains(std::ostream& os) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto b =
        gen_random_k_monotone(DomainSpec::grid(16, 2), 2, rng.next_u64());
    for (std::uint32_t c : diagonal_nonconstant_counts(b.fn, 4))
      if (c > 2) {
        os << "diagonal chain has " << c << " nonconstant blocks\n";
        return false;
      }
  }
  os << "nonconstant blocks per diagonal chain <= k on 200 instances\n";
  return true;
}

bool check_changepoint_order(std::ostream& os) {
  // 2-monotone and column-wise monotone with zero first and last rows
  // implies non-increasing sequences (without the zero rows the
  // constant-column convention breaks the ordering).
  for (std::uint64_t mask = 0; mask < (1ULL << 16); ++mask) {
    const DomainSpec dom = DomainSpec::grid(4, 2);
    const Function f = table_function(dom, mask);
    bool padded = true;
    for (std::uint32_t j = 0; j < 4 && padded; ++j)
      padded = !f.eval(dom.encode(std::vector<std::uint32_t>{0, j})) &&
               !f.eval(dom.encode(std::vector<std::uint32_t>{3, j}));
    if (!padded) continue;
    if (!is_k_monotone(f, 2) || !is_2_columnwise_monotone(f)) continue;
    // The constant-column convention pins (lseq, hseq) to (1, 1), so an
    // all-zero column left of a nonconstant one breaks the ordering even
    // for 2-monotone f (e.g. a single 1 at (1,1)). Restrict to functions
    // whose band never reappears after vanishing.
    {
      bool seen_zero_col = false, convention_artifact = false;
      for (std::uint32_t j = 0; j < 4 && !convention_artifact; ++j) {
        bool zero_col = true;
        for (std::uint32_t i = 0; i < 4 && zero_col; ++i)
          zero_col = !f.eval(dom.encode(std::vector<std::uint32_t>{i, j}));
        if (zero_col)
          seen_zero_col = true;
        else if (seen_zero_col)
          convention_artifact = true;
      }
      if (convention_artifact) continue;
    }
    const auto [lseq, hseq] = column_changepoint_seqs(f);
    for (std::size_t j = 1; j < lseq.size(); ++j)
      if (lseq[j] > lseq[j - 1] || hseq[j] > hseq[j - 1]) {
        os << "sequences increase at mask " << mask << "\n";
        return false;
      }
  }
  os << "changepoint sequences non-increasing, exhaustive [4]^2\n";
  return true;
}

bool check_grid_distance_decomposition(std::ostream& os) {
  // dist(f, 2-monotone) <= L1(hseq, noninc) + L1(lseq, noninc) for
  // 2-column-wise-monotone f (exhaustive [3]^2).
  const DomainSpec dom = DomainSpec::grid(3, 2);
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    const Function f = table_function(dom, mask);
    if (!is_2_columnwise_monotone(f)) continue;
    // zero top and bottom rows, as the decomposition assumes
    bool padded = true;
    for (std::uint32_t j = 0; j < 3 && padded; ++j)
      padded = !f.eval(dom.encode(std::vector<std::uint32_t>{0, j})) &&
               !f.eval(dom.encode(std::vector<std::uint32_t>{2, j}));
    if (!padded) continue;
    const auto [lseq, hseq] = column_changepoint_seqs(f);
    std::vector<double> ln(lseq.size()), hn(hseq.size());
    for (std::size_t j = 0; j < lseq.size(); ++j) {
      ln[j] = lseq[j] / 3.0;
      hn[j] = hseq[j] / 3.0;
    }
    const double rhs = l1_isotonic_exact(hn, true) + l1_isotonic_exact(ln, true);
    const double lhs = exact_distance_bruteforce(f, 2).value.to_double();
    if (lhs > rhs + 1e-12) {
      os << "decomposition fails at mask " << mask << ": " << lhs << " > "
         << rhs << "\n";
      return false;
    }
  }
  os << "distance decomposition holds, exhaustive padded [3]^2\n";
  return true;
}

bool check_fourier_identities(std::ostream& os) {
  Rng rng(3);
  const std::vector<DomainSpec> domains = {DomainSpec::grid(3, 2),
                                           DomainSpec::cube(3)};
  for (const auto& dom : domains) {
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> f(dom.size());
      for (auto& v : f) v = rng.bernoulli(0.5) ? 1.0 : -1.0;
      const auto table = fourier_transform(f, dom);
      if (std::fabs(table.total_weight() - 1.0) > 1e-9) {
        os << "Parseval fails\n";
        return false;
      }
      double ident = 0.0;
      for (std::uint64_t a = 0; a < dom.size(); ++a) {
        unsigned deg = 0;
        for (std::uint32_t ax = 0; ax < dom.dim(); ++ax)
          if (dom.coord(a, ax) != 0) ++deg;
        ident += deg * table.coeffs[a] * table.coeffs[a];
      }
      if (std::fabs(ident - total_influence(f, dom)) > 1e-9) {
        os << "influence identity fails\n";
        return false;
      }
    }
  }
  os << "Parseval and the influence identity hold to 1e-9\n";
  return true;
}

bool check_influence_bound(std::ostream& os) {
  Rng rng(5);
  const DomainSpec dom = DomainSpec::grid(3, 3);
  for (int rep = 0; rep < 500; ++rep) {
    for (unsigned k = 1; k <= 2; ++k) {
      const auto b = gen_random_k_monotone(dom, k, rng.next_u64());
      std::vector<double> pm(dom.size());
      for (std::uint64_t i = 0; i < dom.size(); ++i)
        pm[i] = b.fn.eval(i) ? 1.0 : -1.0;
      if (total_influence(pm, dom) >
          k * std::sqrt(3.0) + 1e-9) {
        os << "influence bound fails at seed " << b.seed << "\n";
        return false;
      }
    }
  }
  os << "total influence <= k sqrt(d) on 1000 verified instances\n";
  return true;
}

bool check_fourier_tail(std::ostream& os) {
  Rng rng(9);
  const DomainSpec dom = DomainSpec::grid(3, 2);
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<double> f(dom.size());
    for (auto& v : f) v = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const double inf = total_influence(f, dom);
    const auto table = fourier_transform(f, dom);
    for (double eps : {0.1, 0.25}) {
      const unsigned cutoff =
          static_cast<unsigned>(std::floor(inf / eps));
      if (table.weight_above_degree(cutoff) > eps + 1e-9) {
        os << "tail bound fails\n";
        return false;
      }
    }
  }
  os << "spectral tail above I[f]/eps is at most eps\n";
  return true;
}

bool check_support_expectation(std::ostream& os) {
  // E[1/D] over x ~ D equals the support size exactly (rational sum).
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const auto b = gen_alternating_line(64, 1 + rng.below(12), 0.6, 3,
                                        rng.next_u64());
    // intervals of the realized function
    std::vector<std::uint64_t> lengths;
    std::uint64_t run = 1;
    for (std::uint64_t i = 1; i < 64; ++i) {
      if (b.fn.eval(i) == b.fn.eval(i - 1)) {
        ++run;
      } else {
        lengths.push_back(run);
        run = 1;
      }
    }
    lengths.push_back(run);
    Rational expect(0, 1);
    for (std::uint64_t len : lengths)
      expect = expect + Rational(len, 64) * Rational(64, len);
    if (expect != Rational(lengths.size(), 1)) {
      os << "exact expectation mismatch\n";
      return false;
    }
  }
  os << "uncapped inverse-mass estimator is exactly unbiased\n";
  return true;
}

bool check_capped_eval(std::ostream& os) {
  Rng rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    const auto b =
        gen_alternating_line(200, 1 + rng.below(30), 0.8, 3, rng.next_u64());
    FunctionOracle oracle(b.fn);
    DualDistribution dual(200, [&oracle](std::uint64_t i) {
      return oracle.query(i);
    });
    for (int s = 0; s < 20; ++s) {
      const auto h = dual.sample(rng);
      const std::uint64_t w = 5 + rng.below(20);
      const auto m = dual.eval_capped(h, w);
      if (m.queries > 2 * w + 1) {
        os << "evaluation exceeded its query budget\n";
        return false;
      }
      // exact interval length around the handle
      std::uint64_t a = h.position, z = h.position;
      while (a > 0 && b.fn.eval(a - 1) == h.value) --a;
      while (z + 1 < 200 && b.fn.eval(z + 1) == h.value) ++z;
      const std::uint64_t len = z - a + 1;
      // fits-the-window implies exact; EXCEEDS_CAP certifies len > 2w
      // (intervals at the domain edge may be determined even when longer)
      if (len <= 2 * w && m.exceeds_cap) {
        os << "short interval not determined (len " << len << ")\n";
        return false;
      }
      if (!m.exceeds_cap && m.mass != Rational(len, 200)) {
        os << "wrong interval mass\n";
        return false;
      }
    }
  }
  os << "capped evaluation: exact iff the interval fits, <= 2w+1 queries\n";
  return true;
}

bool check_threshold_sum(std::ostream& os) {
  // (1/m) sum of slice bits recovers grid-valued functions exactly, and the
  // lift preserves monotonicity in both directions.
  for (unsigned m = 1; m <= 4; ++m)
    for (std::int64_t i = 0; i <= m; ++i) {
      const Rational v(i, m);
      int sum = 0;
      for (unsigned j = 1; j <= m; ++j) sum += lifted_slice_bit(v, j, m);
      if (Rational(sum, m) != v) {
        os << "slice sum mismatch at " << v << "\n";
        return false;
      }
    }
  for (unsigned m = 1; m <= 3; ++m) {
    const DomainSpec dom = DomainSpec::line(3);
    std::vector<std::uint32_t> levels(3);
    for (levels[0] = 0; levels[0] <= m; ++levels[0])
      for (levels[1] = 0; levels[1] <= m; ++levels[1])
        for (levels[2] = 0; levels[2] <= m; ++levels[2]) {
          RealFunction f{dom, {Rational(levels[0], m), Rational(levels[1], m),
                               Rational(levels[2], m)}};
          const bool mono =
              levels[0] <= levels[1] && levels[1] <= levels[2];
          const Function lifted = lifted_boolean(f, m);
          const bool lifted_mono = is_k_monotone(lifted, 1);
          if (mono != lifted_mono) {
            os << "monotonicity transfer fails at m=" << m << "\n";
            return false;
          }
        }
  }
  os << "threshold slices sum back exactly; monotonicity transfers\n";
  return true;
}

bool check_rounding(std::ostream& os) {
  Rng rng(19);
  const DomainSpec dom = DomainSpec::line(8);
  for (int rep = 0; rep < 300; ++rep) {
    RealFunction f{dom, {}};
    for (int i = 0; i < 8; ++i)
      f.values.push_back(Rational(rng.below(17), 16));
    for (unsigned m : {2u, 4u}) {
      const RealFunction fm = round_m(f, m);
      const RealFunction fmm = round_m(fm, m);
      for (int i = 0; i < 8; ++i)
        if (fm.values[i] != fmm.values[i]) {
          os << "rounding is not idempotent\n";
          return false;
        }
      const Rational a = l1_to_monotone_line_exact(f);
      const Rational b = l1_to_graded_monotone_exact(fm, m);
      const Rational gap = (a - b).abs();
      if (gap > Rational(1, m)) {
        os << "rounding moved the distance by " << gap << " > 1/" << m << "\n";
        return false;
      }
    }
  }
  os << "rounding: idempotent, distance moves by at most 1/m\n";
  return true;
}

bool check_l1_hamming_equality(std::ostream& os) {
  Rng rng(23);
  const DomainSpec dom = DomainSpec::line(3);
  for (int rep = 0; rep < 1000; ++rep) {
    RealFunction f{dom, {}};
    for (int i = 0; i < 3; ++i) f.values.push_back(Rational(rng.below(5), 4));
    if (!l1_equals_hamming_check(f, 4)) {
      os << "L1 = Hamming equality fails\n";
      return false;
    }
  }
  os << "L1 distance equals lifted Hamming distance on 1000 instances\n";
  return true;
}

bool check_ring_consistency(std::ostream& os) {
  Rng rng(29);
  for (int rep = 0; rep < 25; ++rep) {
    const auto b = gen_band2(64, rng.next_u64());
    FunctionOracle o1(b.fn);
    FunctionOracle o2(b.fn);
    const double eps = 0.2;
    TildeG tilde(o1, eps);
    RingG ring(o2, eps, 1 << 20);
    for (std::uint64_t j = 0; j < 64; ++j)
      if (tilde.column_region(j) != ring.column_region(j)) {
        os << "ring and repair disagree in column " << j << "\n";
        return false;
      }
  }
  os << "ring equals the full repair on 2-monotone instances\n";
  return true;
}

bool check_middle_window(std::ostream& os) {
  for (unsigned d = 8; d <= 16; ++d)
    for (double eps : {0.3, 0.1}) {
      const auto w = middle_window(d, eps);
      if (static_cast<double>(w.outside_mass) >
          eps * std::pow(2.0, d - 1.0)) {
        os << "window complement too heavy at d=" << d << "\n";
        return false;
      }
      const double bound =
          3.0 * std::sqrt(d) * (1.0 + std::log2(1.0 / eps));
      if (w.width() > bound) {
        os << "window unexpectedly wide at d=" << d << "\n";
        return false;
      }
    }
  os << "middle window: complement mass within budget, width O(sqrt d log)\n";
  return true;
}

}  // namespace

const std::vector<LemmaCheck>& lemma_checks() {
  static const std::vector<LemmaCheck> checks = {
      {"oracle-equivalence", "line DP distance equals brute force",
       check_oracle_equivalence},
      {"monotone-in-k", "k-monotone implies (k+1)-monotone", check_monotone_in_k},
      {"matching-bounds", "matching vs vertex cover vs distance",
       check_matching_bounds},
      {"extendability", "partial k-monotone assignments extend",
       check_extendability},
      {"coarsening-bound", "majority coarsening is kd/m-close",
       check_coarsening_bound},
      {"diagonal-chains", "nonconstant blocks per diagonal chain <= k",
       check_diagonal_chains},
      {"changepoint-order", "2-monotone implies sorted changepoints",
       check_changepoint_order},
      {"grid-distance-decomposition",
       "distance bounded by the two sequence L1 distances",
       check_grid_distance_decomposition},
      {"fourier-identities", "Parseval and the influence identity",
       check_fourier_identities},
      {"influence-bound", "total influence <= k sqrt(d)", check_influence_bound},
      {"fourier-tail", "spectral weight above I[f]/eps is <= eps",
       check_fourier_tail},
      {"support-expectation", "inverse-mass estimator is unbiased",
       check_support_expectation},
      {"capped-eval", "capped pmf evaluation semantics", check_capped_eval},
      {"threshold-sum", "range-to-dimension lift identities",
       check_threshold_sum},
      {"rounding", "m-rounding bounds and idempotence", check_rounding},
      {"l1-hamming-equality", "L1 distance equals lifted Hamming distance",
       check_l1_hamming_equality},
      {"ring-consistency", "lazy ring equals the full repair",
       check_ring_consistency},
      {"middle-window", "exact binomial window bounds", check_middle_window},
  };
  return checks;
}

const LemmaCheck* find_lemma_check(const std::string& name) {
  for (const auto& c : lemma_checks())
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace kmt
