#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace lndlab {

/// Exponent vector over a ring context. Comparison operators implement
/// lexicographic order in the context's declared variable order.
class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, Exponent power = 1) {
    Monomial m(nvars);
    m.exps_[index] = power;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  Exponent& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<Exponent>& exponents() const noexcept { return exps_; }

  bool is_one() const noexcept {
    for (auto e : exps_)
      if (e != 0) return false;
    return true;
  }

  std::uint64_t total_degree() const noexcept {
    std::uint64_t d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  std::uint64_t weighted_degree(const std::vector<std::uint32_t>& weights) const noexcept {
    if (weights.empty()) return total_degree();
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) d += std::uint64_t(exps_[i]) * weights[i];
    return d;
  }

  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  /// other / *this; requires divides(other).
  Monomial cofactor_in(const Monomial& other) const {
    Monomial q(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] = other.exps_[i] - exps_[i];
    return q;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial r(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] + other.exps_[i];
    return r;
  }

  bool operator==(const Monomial&) const = default;
  std::strong_ordering operator<=>(const Monomial& other) const { return exps_ <=> other.exps_; }

 private:
  std::vector<Exponent> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < m.size(); ++i) {
      h ^= m[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace lndlab
