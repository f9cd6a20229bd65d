#pragma once

#include <string>

#include "kmt/function.hpp"
#include "kmt/l1bridge.hpp"

namespace kmt {

// Function file format: a JSON document
//   {"domain": {"kind":"grid","n":6,"d":2},
//    "repr": {"kind":"table","bits":"<hex, little-endian, point order>"}}
// or {"repr": {"kind":"generator","name":...,"params":{...},"seed":7}}.
// Point index = mixed-radix encoding, coordinate 1 least significant.
// Non-uniform grids carry "dims":[...] instead of n/d.
std::string function_to_json(const Function& f);
Function function_from_json(const std::string& text);

void save_function(const Function& f, const std::string& path);
Function load_function(const std::string& path);

// Real-valued file: {"domain":..., "values":["p/q", ...]} in point order.
std::string real_function_to_json(const RealFunction& f);
RealFunction real_function_from_json(const std::string& text);
void save_real_function(const RealFunction& f, const std::string& path);
RealFunction load_real_function(const std::string& path);

// hex helpers for the packed table (two lowercase digits per byte, byte j
// holds bits 8j..8j+7)
std::string bits_to_hex(const BitTable& t);
BitTable bits_from_hex(const std::string& hex, std::uint64_t n);

std::string domain_to_json(const DomainSpec& d);
DomainSpec domain_from_json(const std::string& text);

}  // namespace kmt
