#include "kmt/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kmt/adversaries.hpp"
#include "kmt/errors.hpp"

namespace kmt {

using nlohmann::json;

std::string bits_to_hex(const BitTable& t) {
  static const char* digits = "0123456789abcdef";
  const std::uint64_t bytes = (t.size() + 7) / 8;
  std::string out;
  out.reserve(2 * bytes);
  for (std::uint64_t b = 0; b < bytes; ++b) {
    const std::uint64_t word = t.words()[b / 8];
    const unsigned byte = (word >> (8 * (b % 8))) & 0xff;
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xf]);
  }
  return out;
}

BitTable bits_from_hex(const std::string& hex, std::uint64_t n) {
  const std::uint64_t bytes = (n + 7) / 8;
  if (hex.size() != 2 * bytes)
    throw PreconditionViolated("bits_from_hex: length mismatch");
  auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw PreconditionViolated("bits_from_hex: bad digit");
  };
  BitTable t(n);
  for (std::uint64_t b = 0; b < bytes; ++b) {
    const unsigned byte = (nibble(hex[2 * b]) << 4) | nibble(hex[2 * b + 1]);
    for (unsigned i = 0; i < 8; ++i) {
      const std::uint64_t pos = 8 * b + i;
      if (pos < n && ((byte >> i) & 1)) t.set(pos, true);
    }
  }
  return t;
}

namespace {

json domain_json(const DomainSpec& d) {
  json j;
  switch (d.kind()) {
    case DomainKind::line:
      j = {{"kind", "line"}, {"n", d.side(0)}, {"d", 1}};
      break;
    case DomainKind::cube:
      j = {{"kind", "cube"}, {"n", 2}, {"d", d.dim()}};
      break;
    case DomainKind::grid:
      if (d.uniform())
        j = {{"kind", "grid"}, {"n", d.side(0)}, {"d", d.dim()}};
      else
        j = {{"kind", "grid"}, {"dims", d.sides()}};
      break;
  }
  return j;
}

DomainSpec domain_parse(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (j.contains("dims"))
    return DomainSpec::product(j.at("dims").get<std::vector<std::uint32_t>>());
  if (kind == "line") return DomainSpec::line(j.at("n").get<std::uint32_t>());
  if (kind == "cube") return DomainSpec::cube(j.at("d").get<std::uint32_t>());
  if (kind == "grid")
    return DomainSpec::grid(j.at("n").get<std::uint32_t>(),
                            j.at("d").get<std::uint32_t>());
  throw PreconditionViolated("unknown domain kind: " + kind);
}

}  // namespace

std::string domain_to_json(const DomainSpec& d) { return domain_json(d).dump(); }

DomainSpec domain_from_json(const std::string& text) {
  return domain_parse(json::parse(text));
}

std::string function_to_json(const Function& f) {
  json j;
  j["domain"] = domain_json(f.domain());
  if (f.generator()) {
    const GeneratorSpec& g = *f.generator();
    j["repr"] = {{"kind", "generator"},
                 {"name", g.name},
                 {"params", g.params_json.empty()
                                ? json::object()
                                : json::parse(g.params_json)},
                 {"seed", g.seed}};
  } else {
    j["repr"] = {{"kind", "table"}, {"bits", bits_to_hex(f.to_table())}};
  }
  return j.dump();
}

Function function_from_json(const std::string& text) {
  const json j = json::parse(text);
  const DomainSpec dom = domain_parse(j.at("domain"));
  const json& repr = j.at("repr");
  const std::string kind = repr.at("kind").get<std::string>();
  if (kind == "table")
    return Function(dom,
                    bits_from_hex(repr.at("bits").get<std::string>(), dom.size()));
  if (kind == "generator") {
    const std::string name = repr.at("name").get<std::string>();
    const std::string params = repr.value("params", json::object()).dump();
    const std::uint64_t seed = repr.value("seed", 0ULL);
    Function built = make_generator_function(name, params, seed);
    if (built.domain() != dom)
      throw PreconditionViolated("generator domain mismatch in function file");
    return built;
  }
  throw PreconditionViolated("unknown repr kind: " + kind);
}

void save_function(const Function& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw PreconditionViolated("cannot write " + path);
  out << function_to_json(f) << "\n";
}

Function load_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionViolated("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return function_from_json(ss.str());
}

std::string real_function_to_json(const RealFunction& f) {
  json j;
  j["domain"] = domain_json(f.domain);
  json vals = json::array();
  for (const Rational& v : f.values) vals.push_back(v.to_string());
  j["values"] = std::move(vals);
  return j.dump();
}

RealFunction real_function_from_json(const std::string& text) {
  const json j = json::parse(text);
  RealFunction f;
  f.domain = domain_parse(j.at("domain"));
  for (const auto& v : j.at("values"))
    f.values.push_back(Rational::parse(v.get<std::string>()));
  if (f.values.size() != f.domain.size())
    throw PreconditionViolated("real function: value count mismatch");
  return f;
}

void save_real_function(const RealFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw PreconditionViolated("cannot write " + path);
  out << real_function_to_json(f) << "\n";
}

RealFunction load_real_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionViolated("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return real_function_from_json(ss.str());
}

}  // namespace kmt
