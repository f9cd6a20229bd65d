#include "kmt/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kmt/cube.hpp"
#include "kmt/errors.hpp"
#include "kmt/grid2.hpp"
#include "kmt/highdim.hpp"
#include "kmt/line_testers.hpp"
#include "kmt/rng.hpp"

namespace kmt {

using nlohmann::json;

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 95%
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

InstanceBundle make_instance(const std::string& family,
                             const std::string& params_json,
                             std::uint64_t seed) {
  const json p =
      params_json.empty() ? json::object() : json::parse(params_json);
  if (family == "gv_line")
    return gen_gv_line(p.at("n").get<std::uint64_t>(),
                       p.at("k").get<unsigned>(), p.at("eps").get<double>(),
                       seed);
  if (family == "anti_parity")
    return gen_anti_parity(p.at("d").get<unsigned>(),
                           p.at("S").get<std::vector<unsigned>>(),
                           p.value("k", 1u), seed);
  if (family == "compose_gh") {
    const unsigned d = p.at("d").get<unsigned>();
    const std::string g = p.value("g", "majority");
    return gen_compose_gh(g == "majority" ? make_majority_cube(d / 2)
                                          : make_anti_majority_cube(d / 2),
                          p.at("k").get<unsigned>(), seed);
  }
  if (family == "random_kmono") {
    const unsigned d = p.value("d", 1u);
    const std::uint32_t n = p.at("n").get<std::uint32_t>();
    return gen_random_k_monotone(
        d == 1 ? DomainSpec::line(n) : DomainSpec::grid(n, d),
        p.at("k").get<unsigned>(), seed);
  }
  if (family == "alt_line")
    return gen_alternating_line(p.at("n").get<std::uint64_t>(),
                                p.at("runs").get<unsigned>(),
                                p.value("jitter", 0.2), p.value("k", 1u), seed);
  if (family == "band2") return gen_band2(p.at("n").get<std::uint32_t>(), seed);
  if (family == "stripes2")
    return gen_stripes2(p.at("n").get<std::uint32_t>(),
                        p.at("width").get<std::uint32_t>(), seed);
  if (family == "noisy") {
    InstanceBundle base = make_instance(p.at("base").get<std::string>(),
                                        p.value("base_params", json::object()).dump(),
                                        derive_seed(seed, 1));
    return gen_noisy(base, p.at("rho").get<double>(), derive_seed(seed, 2));
  }
  throw PreconditionViolated("unknown family: " + family);
}

Verdict run_tester(const std::string& tester, const InstanceBundle& instance,
                   const std::string& params_json, std::uint64_t seed) {
  const json p =
      params_json.empty() ? json::object() : json::parse(params_json);
  FunctionOracle oracle(instance.fn);
  const unsigned k = p.value("k", instance.k);
  if (tester == "line1")
    return test_line_one_sided(oracle, k, p.at("eps").get<double>(), seed);
  if (tester == "line2")
    return test_line_two_sided(oracle, k, p.at("eps").get<double>(), seed);
  if (tester == "grid2")
    return test_grid2_2monotone(oracle, p.at("eps").get<double>(), seed);
  if (tester == "cube1")
    return test_cube_one_sided(oracle, k, p.at("eps").get<double>(), seed);
  if (tester == "tol-full" || tester == "tol-agnostic") {
    HighDimParams hp;
    hp.m_override = p.value("m", 0u);
    const double e1 = p.at("eps1").get<double>();
    const double e2 = p.at("eps2").get<double>();
    return tester == "tol-full"
               ? tolerant_test_full(oracle, k, e1, e2, seed, hp)
               : tolerant_test_agnostic(oracle, k, e1, e2, seed, hp);
  }
  throw PreconditionViolated("unknown tester: " + tester);
}

namespace {

std::string distance_string(const InstanceBundle& b) {
  if (b.exact_distance) return b.exact_distance->to_string();
  if (b.matching_bound) return ">=" + b.matching_bound->value.to_string();
  return "";
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  struct Task {
    std::size_t cell;
    std::uint64_t trial;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < config.cells.size(); ++c) {
    if (config.cells[c].trials < 1)
      throw PreconditionViolated("experiment cell needs trials >= 1");
    for (std::uint64_t t = 0; t < config.cells[c].trials; ++t)
      tasks.push_back({c, t});
  }

  ExperimentResult result;
  result.records.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      const ExperimentCell& cell = config.cells[task.cell];
      const std::uint64_t inst_seed = derive_seed(cell.base_seed, 2 * task.trial);
      const std::uint64_t test_seed =
          derive_seed(cell.base_seed, 2 * task.trial + 1);

      const auto t0 = std::chrono::steady_clock::now();
      const InstanceBundle inst =
          make_instance(cell.family, cell.params_json, inst_seed);
      const Verdict v =
          run_tester(cell.tester, inst, cell.params_json, test_seed);
      const auto t1 = std::chrono::steady_clock::now();

      ExperimentRecord& r = result.records[i];
      r.tester = cell.tester;
      r.family = cell.family;
      r.n = inst.fn.domain().side(0);
      r.d = inst.fn.domain().dim();
      r.k = inst.k;
      const json p = cell.params_json.empty() ? json::object()
                                              : json::parse(cell.params_json);
      r.eps1 = p.value("eps1", p.value("eps", 0.0));
      r.eps2 = p.value("eps2", 0.0);
      r.trial = task.trial;
      r.seed = test_seed;
      r.verdict = v.accepted() ? "ACCEPT" : "REJECT";
      r.queries = v.queries;
      r.cert_distance = distance_string(inst);
      r.millis = config.timings
                     ? static_cast<std::uint64_t>(
                           std::chrono::duration_cast<std::chrono::milliseconds>(
                               t1 - t0)
                               .count())
                     : 0;
    }
  };

  const unsigned jobs = std::max(1u, config.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // per-cell summaries
  std::size_t offset = 0;
  for (const ExperimentCell& cell : config.cells) {
    ExperimentSummary s;
    s.tester = cell.tester;
    s.family = cell.family;
    s.trials = cell.trials;
    std::uint64_t total_q = 0;
    for (std::uint64_t t = 0; t < cell.trials; ++t) {
      const ExperimentRecord& r = result.records[offset + t];
      s.accepts += r.verdict == "ACCEPT";
      total_q += r.queries;
      s.max_queries = std::max(s.max_queries, r.queries);
    }
    s.accept_rate = static_cast<double>(s.accepts) / cell.trials;
    std::tie(s.wilson_lo, s.wilson_hi) = wilson_interval(s.accepts, s.trials);
    s.mean_queries = static_cast<double>(total_q) / cell.trials;
    result.summaries.push_back(s);
    offset += cell.trials;
  }
  return result;
}

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "# kmt-records v1\n";
  out << "tester,family,n,d,k,eps1,eps2,trial,seed,verdict,queries,"
         "cert_distance,millis\n";
  for (const auto& r : records) {
    out << r.tester << ',' << r.family << ',' << r.n << ',' << r.d << ','
        << r.k << ',' << r.eps1 << ',' << r.eps2 << ',' << r.trial << ','
        << r.seed << ',' << r.verdict << ',' << r.queries << ','
        << r.cert_distance << ',' << r.millis << '\n';
  }
  return out.str();
}

std::vector<ExperimentRecord> records_from_csv(const std::string& text) {
  std::vector<ExperimentRecord> out;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    std::istringstream ls(line);
    std::string field;
    ExperimentRecord r;
    auto next = [&]() {
      if (!std::getline(ls, field, ','))
        throw PreconditionViolated("records_from_csv: short row");
      return field;
    };
    r.tester = next();
    r.family = next();
    r.n = std::stoull(next());
    r.d = static_cast<std::uint32_t>(std::stoul(next()));
    r.k = static_cast<unsigned>(std::stoul(next()));
    r.eps1 = std::stod(next());
    r.eps2 = std::stod(next());
    r.trial = std::stoull(next());
    r.seed = std::stoull(next());
    r.verdict = next();
    r.queries = std::stoull(next());
    r.cert_distance = next();
    r.millis = std::stoull(next());
    out.push_back(std::move(r));
  }
  return out;
}

std::string summaries_to_text(const std::vector<ExperimentSummary>& s) {
  std::ostringstream out;
  for (const auto& x : s) {
    out << x.tester << " on " << x.family << ": " << x.accepts << "/"
        << x.trials << " accept (rate " << x.accept_rate << ", wilson95 ["
        << x.wilson_lo << ", " << x.wilson_hi << "]), mean queries "
        << x.mean_queries << ", max " << x.max_queries << "\n";
  }
  return out.str();
}

ExperimentConfig config_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig cfg;
  cfg.jobs = j.value("jobs", 1u);
  cfg.timings = j.value("timings", false);
  for (const auto& c : j.at("cells")) {
    ExperimentCell cell;
    cell.tester = c.at("tester").get<std::string>();
    cell.family = c.at("family").get<std::string>();
    cell.params_json = c.value("params", json::object()).dump();
    cell.trials = c.at("trials").get<std::uint64_t>();
    cell.base_seed = c.at("seed").get<std::uint64_t>();
    cfg.cells.push_back(std::move(cell));
  }
  return cfg;
}

}  // namespace kmt
