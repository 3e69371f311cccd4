#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lndlab/monomial.hpp"
#include "lndlab/monomial_order.hpp"
#include "lndlab/ring_context.hpp"

namespace lndlab {

using Rational = mpq_class;
using Integer = mpz_class;

struct Term {
  Monomial mono;
  Rational coef;
  bool operator==(const Term&) const = default;
};

/// Degree of a polynomial. The zero polynomial has degree −∞, which is a
/// distinct value rather than some reserved integer.
class Degree {
 public:
  static Degree neg_infinity() { return Degree(); }
  Degree(std::int64_t v) : value_(v) {}  // NOLINT: implicit from integers is intended

  bool is_neg_infinity() const noexcept { return !value_.has_value(); }
  std::int64_t value() const;

  bool operator==(const Degree&) const = default;
  std::strong_ordering operator<=>(const Degree& o) const {
    if (!value_ || !o.value_) return value_.has_value() <=> o.value_.has_value();
    return *value_ <=> *o.value_;
  }
  Degree operator+(const Degree& o) const {
    if (!value_ || !o.value_) return neg_infinity();
    return *value_ + *o.value_;
  }
  std::string to_string() const { return value_ ? std::to_string(*value_) : "-inf"; }

 private:
  Degree() = default;
  std::optional<std::int64_t> value_;
};

/// Sparse polynomial with exact rational coefficients. Terms are stored with
/// nonzero coefficients, sorted descending in lex order of the context.
class Polynomial {
 public:
  explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Polynomial constant(ContextPtr ctx, const Rational& c);
  static Polynomial variable(ContextPtr ctx, std::size_t index);
  static Polynomial variable(ContextPtr ctx, std::string_view name);
  static Polynomial monomial(ContextPtr ctx, Monomial m, const Rational& c = 1);
  /// Merges duplicate monomials and drops zero coefficients.
  static Polynomial from_terms(ContextPtr ctx, std::vector<Term> terms);

  const ContextPtr& context() const noexcept { return ctx_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational coefficient(const Monomial& m) const;
  Rational constant_coefficient() const { return coefficient(Monomial(ctx_->size())); }

  Degree total_degree() const;
  Degree weighted_degree(const std::vector<std::uint32_t>& weights) const;
  Degree degree_in(std::size_t var) const;
  Degree degree_in(const std::vector<std::size_t>& vars) const;
  bool involves(std::size_t var) const;
  std::vector<std::size_t> variables_used() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  /// Multiply by c·m without re-sorting (monomial multiplication preserves order).
  Polynomial scaled(const Monomial& m, const Rational& c) const;

  bool operator==(const Polynomial& o) const;

 private:
  void check_same(const Polynomial& o) const;
  void add_scaled(const Polynomial& o, int sign);

  ContextPtr ctx_;
  std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& a, unsigned e);
Polynomial partial_derivative(const Polynomial& a, std::size_t var);
Polynomial partial_derivative(const Polynomial& a, std::string_view var);

/// Simultaneous substitution; unbound variables map to themselves.
Polynomial substitute(const Polynomial& a, const std::map<std::size_t, Polynomial>& bindings);
Polynomial substitute(const Polynomial& a, const std::map<std::string, Polynomial>& bindings);

/// Re-expresses `a` over `target`, matching variables by name.
Polynomial embed(const Polynomial& a, const ContextPtr& target);

/// Coefficients of `a` viewed as a polynomial in `var`: entry k is the
/// coefficient of var^k, a polynomial free of `var`.
std::vector<Polynomial> coefficients_in(const Polynomial& a, std::size_t var);

Term leading_term(const Polynomial& a, const MonomialOrder& order);

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Multivariate division by a single divisor: f = q·g + r with no monomial of
/// r divisible by the leading monomial of g under `order`.
DivisionResult divide(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

/// f / g when g divides f exactly, otherwise nullopt.
std::optional<Polynomial> exact_quotient(const Polynomial& f, const Polynomial& g);

}  // namespace lndlab
