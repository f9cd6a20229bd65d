#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kmt/errors.hpp"

namespace kmt {

enum class DomainKind { line, grid, cube };

// A finite hypergrid poset. Points are mixed-radix indices in [0, size())
// with coordinate 0 least significant; the partial order is coordinatewise.
// A line is a grid with d = 1, a cube is a grid with all sides 2. Unequal
// side lengths arise from the range-to-dimension lift and are supported by
// the same encoding.
class DomainSpec {
 public:
  DomainSpec() = default;

  static DomainSpec line(std::uint32_t n) { return DomainSpec({n}); }
  static DomainSpec grid(std::uint32_t n, std::uint32_t d) {
    return DomainSpec(std::vector<std::uint32_t>(d, n));
  }
  static DomainSpec cube(std::uint32_t d) { return grid(2, d); }
  static DomainSpec product(std::vector<std::uint32_t> dims) {
    return DomainSpec(std::move(dims));
  }

  std::uint64_t size() const { return size_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(dims_.size()); }
  std::uint32_t side(std::uint32_t axis) const { return dims_[axis]; }
  const std::vector<std::uint32_t>& sides() const { return dims_; }
  std::uint64_t stride(std::uint32_t axis) const { return strides_[axis]; }

  bool uniform() const {
    for (auto s : dims_)
      if (s != dims_[0]) return false;
    return true;
  }
  DomainKind kind() const {
    if (dims_.size() == 1) return DomainKind::line;
    if (uniform() && dims_[0] == 2) return DomainKind::cube;
    return DomainKind::grid;
  }

  std::uint64_t encode(std::span<const std::uint32_t> coords) const {
    std::uint64_t idx = 0;
    for (std::uint32_t a = 0; a < dim(); ++a) idx += coords[a] * strides_[a];
    return idx;
  }
  void decode(std::uint64_t idx, std::span<std::uint32_t> out) const {
    for (std::uint32_t a = 0; a < dim(); ++a) {
      out[a] = static_cast<std::uint32_t>(idx % dims_[a]);
      idx /= dims_[a];
    }
  }
  std::vector<std::uint32_t> decode(std::uint64_t idx) const {
    std::vector<std::uint32_t> c(dim());
    decode(idx, c);
    return c;
  }
  std::uint32_t coord(std::uint64_t idx, std::uint32_t axis) const {
    return static_cast<std::uint32_t>((idx / strides_[axis]) % dims_[axis]);
  }

  // Coordinatewise partial order.
  bool leq(std::uint64_t a, std::uint64_t b) const {
    for (std::uint32_t ax = 0; ax < dim(); ++ax)
      if (coord(a, ax) > coord(b, ax)) return false;
    return true;
  }
  bool less(std::uint64_t a, std::uint64_t b) const {
    return a != b && leq(a, b);
  }

  friend bool operator==(const DomainSpec& a, const DomainSpec& b) {
    return a.dims_ == b.dims_;
  }
  friend bool operator!=(const DomainSpec& a, const DomainSpec& b) {
    return !(a == b);
  }

  std::string describe() const;

 private:
  explicit DomainSpec(std::vector<std::uint32_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw PreconditionViolated("domain needs >= 1 axis");
    size_ = 1;
    strides_.resize(dims_.size());
    for (std::size_t a = 0; a < dims_.size(); ++a) {
      if (dims_[a] == 0) throw PreconditionViolated("domain side must be >= 1");
      strides_[a] = size_;
      size_ *= dims_[a];
    }
  }

  std::vector<std::uint32_t> dims_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_ = 0;
};

}  // namespace kmt
