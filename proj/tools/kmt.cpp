#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kmt/distance.hpp"
#include "kmt/errors.hpp"
#include "kmt/experiment.hpp"
#include "kmt/io.hpp"
#include "kmt/lemmacheck.hpp"
#include "kmt/matching.hpp"

namespace {

using nlohmann::json;

json verdict_json(const kmt::Verdict& v) {
  json j;
  j["decision"] = v.accepted() ? "ACCEPT" : "REJECT";
  j["queries"] = v.queries;
  j["seed"] = v.seed;
  if (!v.witness.empty()) j["witness"] = v.witness;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw kmt::PreconditionViolated("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-monotonicity testing laboratory"};
  app.require_subcommand(1);

  // test
  std::string t_tester, t_fn, t_params = "{}";
  unsigned t_k = 1;
  double t_eps = 0.1, t_eps1 = -1.0, t_eps2 = -1.0;
  std::uint64_t t_seed = 0;
  std::string t_engine = "full";
  auto* test_cmd = app.add_subcommand("test", "run a tester on a function file");
  test_cmd->add_option("--tester", t_tester, "line1|line2|grid2|cube1|tol-full|tol-agnostic|l1")
      ->required();
  test_cmd->add_option("--fn", t_fn, "function file")->required();
  test_cmd->add_option("--k", t_k, "k");
  test_cmd->add_option("--eps", t_eps, "distance parameter");
  test_cmd->add_option("--eps1", t_eps1, "tolerant lower threshold");
  test_cmd->add_option("--eps2", t_eps2, "tolerant upper threshold");
  test_cmd->add_option("--seed", t_seed, "seed");
  test_cmd->add_option("--engine", t_engine, "l1 engine: full|agnostic");

  // distance
  std::string d_fn, d_engine = "auto";
  unsigned d_k = 1;
  auto* dist_cmd = app.add_subcommand("distance", "exact or certified distance");
  dist_cmd->add_option("--fn", d_fn, "function file")->required();
  dist_cmd->add_option("--k", d_k, "k");
  dist_cmd->add_option("--engine", d_engine, "dp|brute|mincut|matching|auto");

  // gen
  std::string g_family, g_params = "{}", g_out;
  std::uint64_t g_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--family", g_family, "family name")->required();
  gen_cmd->add_option("--params", g_params, "family parameters (JSON)");
  gen_cmd->add_option("--seed", g_seed, "seed");
  gen_cmd->add_option("-o,--out", g_out, "output file")->required();

  // experiment
  std::string e_config, e_out, e_plot;
  unsigned e_jobs = 0;
  bool e_timings = false;
  auto* exp_cmd = app.add_subcommand("experiment", "run an experiment matrix");
  exp_cmd->add_option("--config", e_config, "config JSON")->required();
  exp_cmd->add_option("--out", e_out, "records CSV")->required();
  exp_cmd->add_option("--jobs", e_jobs, "parallel trials");
  exp_cmd->add_flag("--timings", e_timings,
                    "record wall time (nondeterministic output)");
  exp_cmd->add_option("--plot-prefix", e_plot,
                      "write two-column .dat files per summary metric");

  // lemma-check
  std::string l_name;
  bool l_list = false;
  auto* lemma_cmd = app.add_subcommand("lemma-check", "run a named invariant suite");
  lemma_cmd->add_option("--name", l_name, "check name");
  lemma_cmd->add_flag("--list", l_list, "list available checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*test_cmd) {
      kmt::Verdict v;
      if (t_tester == "l1" || t_tester == "l1-full" || t_tester == "l1-agnostic") {
        const kmt::RealFunction f = kmt::load_real_function(t_fn);
        const kmt::L1Engine engine =
            (t_tester == "l1-agnostic" || t_engine == "agnostic")
                ? kmt::L1Engine::agnostic
                : kmt::L1Engine::full;
        v = kmt::tolerant_l1_test_monotone(f, t_eps1, t_eps2, t_seed, engine);
      } else {
        kmt::InstanceBundle inst;
        inst.fn = kmt::load_function(t_fn);
        inst.k = t_k;
        json p;
        p["k"] = t_k;
        p["eps"] = t_eps;
        if (t_eps1 >= 0.0) p["eps1"] = t_eps1;
        if (t_eps2 >= 0.0) p["eps2"] = t_eps2;
        v = kmt::run_tester(t_tester, inst, p.dump(), t_seed);
      }
      std::cout << verdict_json(v).dump() << "\n";
      return v.accepted() ? 0 : 1;
    }

    if (*dist_cmd) {
      const kmt::Function f = kmt::load_function(d_fn);
      json j;
      if (d_engine == "matching") {
        const auto m = kmt::greedy_violation_matching(f, d_k);
        j["lower_bound"] = m.value.to_string();
        j["matching_size"] = m.matching.size();
      } else {
        kmt::DistanceValue dv;
        if (d_engine == "dp")
          dv = kmt::exact_distance_line_dp(f, d_k);
        else if (d_engine == "brute")
          dv = kmt::exact_distance_bruteforce(f, d_k);
        else if (d_engine == "mincut")
          dv = kmt::exact_distance_monotone_mincut(f);
        else
          dv = kmt::exact_distance(f, d_k);
        j["distance"] = dv.value.to_string();
      }
      std::cout << j.dump() << "\n";
      return 0;
    }

    if (*gen_cmd) {
      const kmt::InstanceBundle b =
          kmt::make_instance(g_family, g_params, g_seed);
      // persist as a generator-backed file when possible, table otherwise
      kmt::Function out = b.fn;
      kmt::save_function(out, g_out);
      json j;
      j["family"] = b.family;
      j["params"] = json::parse(b.params_json);
      if (b.exact_distance) j["exact_distance"] = b.exact_distance->to_string();
      if (b.matching_bound)
        j["matching_lower_bound"] = b.matching_bound->value.to_string();
      if (b.k_monotone) j["k_monotone"] = *b.k_monotone;
      std::cout << j.dump() << "\n";
      return 0;
    }

    if (*exp_cmd) {
      kmt::ExperimentConfig cfg = kmt::config_from_json(read_file(e_config));
      if (e_jobs > 0) cfg.jobs = e_jobs;
      if (const char* env = std::getenv("KMT_JOBS"))
        cfg.jobs = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
      cfg.timings = cfg.timings || e_timings;
      const auto result = kmt::run_experiment(cfg);
      std::ofstream out(e_out);
      if (!out) throw kmt::PreconditionViolated("cannot write " + e_out);
      out << kmt::records_to_csv(result.records);
      std::cerr << kmt::summaries_to_text(result.summaries);
      if (!e_plot.empty()) {
        std::ofstream rate(e_plot + "_accept_rate.dat");
        std::ofstream queries(e_plot + "_mean_queries.dat");
        for (std::size_t i = 0; i < result.summaries.size(); ++i) {
          rate << i << " " << result.summaries[i].accept_rate << "\n";
          queries << i << " " << result.summaries[i].mean_queries << "\n";
        }
      }
      return 0;
    }

    if (*lemma_cmd) {
      if (l_list) {
        for (const auto& c : kmt::lemma_checks())
          std::cout << c.name << ": " << c.description << "\n";
        return 0;
      }
      const kmt::LemmaCheck* check = kmt::find_lemma_check(l_name);
      if (!check) {
        std::cerr << "unknown check: " << l_name << "\n";
        return 2;
      }
      const bool ok = check->run(std::cout);
      std::cout << (ok ? "PASS" : "FAIL") << " " << check->name << "\n";
      return ok ? 0 : 1;
    }
  } catch (const kmt::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
