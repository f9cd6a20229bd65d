#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kmt/adversaries.hpp"
#include "kmt/cube.hpp"
#include "kmt/distance.hpp"
#include "kmt/experiment.hpp"
#include "kmt/grid2.hpp"
#include "kmt/highdim.hpp"
#include "kmt/io.hpp"
#include "kmt/kmono.hpp"
#include "kmt/l1bridge.hpp"
#include "kmt/lemmacheck.hpp"
#include "kmt/line_testers.hpp"
#include "kmt/matching.hpp"

namespace py = pybind11;
using namespace kmt;

namespace {

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["decision"] = v.accepted() ? "ACCEPT" : "REJECT";
  d["queries"] = v.queries;
  d["seed"] = v.seed;
  d["witness"] = v.witness;
  d["note"] = v.note;
  return d;
}

py::dict bundle_dict(const InstanceBundle& b) {
  py::dict d;
  d["family"] = b.family;
  d["params"] = b.params_json;
  d["seed"] = b.seed;
  d["k"] = b.k;
  if (b.exact_distance) d["exact_distance"] = b.exact_distance->to_string();
  if (b.matching_bound)
    d["matching_lower_bound"] = b.matching_bound->value.to_string();
  if (b.k_monotone) d["k_monotone"] = *b.k_monotone;
  return d;
}

DomainSpec make_domain(const std::string& kind, std::uint32_t n,
                       std::uint32_t d) {
  if (kind == "line") return DomainSpec::line(n);
  if (kind == "cube") return DomainSpec::cube(d);
  if (kind == "grid") return DomainSpec::grid(n, d);
  throw PreconditionViolated("unknown domain kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_kmt, m) {
  m.doc() = "k-monotonicity testing laboratory";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
  py::register_exception<PreconditionViolated>(m, "PreconditionViolated");
  py::register_exception<ConstructionFailed>(m, "ConstructionFailed");

  py::class_<DomainSpec>(m, "Domain")
      .def(py::init(&make_domain), py::arg("kind"), py::arg("n") = 2,
           py::arg("d") = 1)
      .def_static("product",
                  [](const std::vector<std::uint32_t>& dims) {
                    return DomainSpec::product(dims);
                  })
      .def_property_readonly("size", &DomainSpec::size)
      .def_property_readonly("dim", &DomainSpec::dim)
      .def("__repr__", [](const DomainSpec& d) {
        return "<Domain " + domain_to_json(d) + ">";
      });

  py::class_<Function>(m, "Function")
      .def_static("from_bits",
                  [](const DomainSpec& dom, const std::vector<bool>& bits) {
                    if (bits.size() != dom.size())
                      throw PreconditionViolated("bit count != domain size");
                    BitTable t(dom.size());
                    for (std::uint64_t i = 0; i < dom.size(); ++i)
                      t.set(i, bits[i]);
                    return Function(dom, std::move(t));
                  })
      .def_static("from_json", &function_from_json)
      .def("to_json", &function_to_json)
      .def("eval", &Function::eval)
      .def_property_readonly("domain", &Function::domain)
      .def("bits", [](const Function& f) {
        std::vector<bool> out(f.size());
        for (std::uint64_t i = 0; i < f.size(); ++i) out[i] = f.eval(i);
        return out;
      });

  m.def("is_k_monotone",
        [](const Function& f, unsigned k) { return is_k_monotone(f, k); });
  m.def("longest_alternating_chain",
        [](const Function& f) { return longest_alternating_chain(f); });
  m.def("find_violation",
        [](const Function& f, unsigned k) { return find_violation(f, k); });

  m.def(
      "exact_distance",
      [](const Function& f, unsigned k, const std::string& engine) {
        DistanceValue dv;
        if (engine == "dp")
          dv = exact_distance_line_dp(f, k);
        else if (engine == "brute")
          dv = exact_distance_bruteforce(f, k);
        else if (engine == "mincut")
          dv = exact_distance_monotone_mincut(f);
        else
          dv = exact_distance(f, k);
        return std::make_pair(dv.value.num, dv.value.den);
      },
      py::arg("f"), py::arg("k"), py::arg("engine") = "auto");

  m.def("greedy_matching_bound", [](const Function& f, unsigned k) {
    const auto dv = greedy_violation_matching(f, k);
    py::dict d;
    d["lower_bound"] = std::make_pair(dv.value.num, dv.value.den);
    d["matching"] = dv.matching;
    return d;
  });

  m.def(
      "test_line_one_sided",
      [](const Function& f, unsigned k, double eps, std::uint64_t seed) {
        FunctionOracle o(f);
        return verdict_dict(test_line_one_sided(o, k, eps, seed));
      },
      py::arg("f"), py::arg("k"), py::arg("eps"), py::arg("seed") = 0);
  m.def(
      "test_line_two_sided",
      [](const Function& f, unsigned k, double eps, std::uint64_t seed) {
        FunctionOracle o(f);
        return verdict_dict(test_line_two_sided(o, k, eps, seed));
      },
      py::arg("f"), py::arg("k"), py::arg("eps"), py::arg("seed") = 0);
  m.def(
      "test_grid2_2monotone",
      [](const Function& f, double eps, std::uint64_t seed) {
        FunctionOracle o(f);
        return verdict_dict(test_grid2_2monotone(o, eps, seed));
      },
      py::arg("f"), py::arg("eps"), py::arg("seed") = 0);
  m.def(
      "test_cube_one_sided",
      [](const Function& f, unsigned k, double eps, std::uint64_t seed) {
        FunctionOracle o(f);
        return verdict_dict(test_cube_one_sided(o, k, eps, seed));
      },
      py::arg("f"), py::arg("k"), py::arg("eps"), py::arg("seed") = 0);
  m.def(
      "tolerant_test_full",
      [](const Function& f, unsigned k, double eps1, double eps2,
         std::uint64_t seed, std::uint32_t m_override) {
        FunctionOracle o(f);
        HighDimParams hp;
        hp.m_override = m_override;
        return verdict_dict(tolerant_test_full(o, k, eps1, eps2, seed, hp));
      },
      py::arg("f"), py::arg("k"), py::arg("eps1"), py::arg("eps2"),
      py::arg("seed") = 0, py::arg("m_override") = 0);
  m.def(
      "tolerant_test_agnostic",
      [](const Function& f, unsigned k, double eps1, double eps2,
         std::uint64_t seed, std::uint32_t m_override) {
        FunctionOracle o(f);
        HighDimParams hp;
        hp.m_override = m_override;
        return verdict_dict(tolerant_test_agnostic(o, k, eps1, eps2, seed, hp));
      },
      py::arg("f"), py::arg("k"), py::arg("eps1"), py::arg("eps2"),
      py::arg("seed") = 0, py::arg("m_override") = 0);

  m.def(
      "tolerant_l1_test_monotone",
      [](const DomainSpec& dom, const std::vector<std::string>& values,
         double eps1, double eps2, std::uint64_t seed,
         const std::string& engine) {
        RealFunction f{dom, {}};
        for (const auto& v : values) f.values.push_back(Rational::parse(v));
        return verdict_dict(tolerant_l1_test_monotone(
            f, eps1, eps2, seed,
            engine == "agnostic" ? L1Engine::agnostic : L1Engine::full));
      },
      py::arg("domain"), py::arg("values"), py::arg("eps1"), py::arg("eps2"),
      py::arg("seed") = 0, py::arg("engine") = "full");

  m.def(
      "generate",
      [](const std::string& family, const std::string& params_json,
         std::uint64_t seed) {
        const InstanceBundle b = make_instance(family, params_json, seed);
        return std::make_pair(b.fn, bundle_dict(b));
      },
      py::arg("family"), py::arg("params_json") = "{}", py::arg("seed") = 0);

  m.def("lemma_checks", []() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& c : lemma_checks())
      out.emplace_back(c.name, c.description);
    return out;
  });
  m.def("run_lemma_check", [](const std::string& name) {
    const LemmaCheck* c = find_lemma_check(name);
    if (!c) throw PreconditionViolated("unknown check: " + name);
    std::ostringstream os;
    const bool ok = c->run(os);
    return std::make_pair(ok, os.str());
  });

  m.def("save_function", &save_function);
  m.def("load_function", &load_function);
}
