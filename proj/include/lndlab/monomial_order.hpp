#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "lndlab/monomial.hpp"
#include "lndlab/ring_context.hpp"

namespace lndlab {

enum class OrderKind { lex, weighted_graded_lex };

/// Total, multiplicative monomial order. Lex compares exponents of the
/// variables in `priority()` order (most significant first); the weighted
/// kind compares weighted degree first and breaks ties the same way.
class MonomialOrder {
 public:
  /// Lex in declared variable order.
  static MonomialOrder lex(std::size_t nvars);
  static MonomialOrder lex(std::vector<std::size_t> priority);
  static MonomialOrder weighted_graded_lex(std::vector<std::uint32_t> weights,
                                           std::vector<std::size_t> priority = {});
  /// Lex with the named variables most significant, in the given sequence;
  /// unnamed variables follow in declared order.
  static MonomialOrder lex_by_names(const RingContext& ctx, const std::vector<std::string>& first);

  OrderKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& priority() const noexcept { return priority_; }
  const std::vector<std::uint32_t>& weights() const noexcept { return weights_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  std::string describe() const;

 private:
  MonomialOrder(OrderKind kind, std::vector<std::size_t> priority, std::vector<std::uint32_t> weights);

  OrderKind kind_;
  std::vector<std::size_t> priority_;
  std::vector<std::uint32_t> weights_;
};

/// Adapter so a MonomialOrder can key ordered containers (descending first
/// when used with std::greater semantics by the caller).
struct OrderLess {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->less(a, b); }
};

}  // namespace lndlab
