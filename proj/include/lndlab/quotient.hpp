#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lndlab/derivation.hpp"
#include "lndlab/monomial_order.hpp"
#include "lndlab/polynomial.hpp"

namespace lndlab {

/// K[vars]/(P) for a single non-unit modulus P. Residue classes are
/// represented by their remainder on division by P under `order()`.
class QuotientRing {
 public:
  QuotientRing(Polynomial modulus, MonomialOrder order);

  const ContextPtr& ambient() const noexcept { return modulus_.context(); }
  const Polynomial& modulus() const noexcept { return modulus_; }
  const MonomialOrder& order() const noexcept { return order_; }
  const Term& modulus_lead() const noexcept { return lead_; }

 private:
  Polynomial modulus_;
  MonomialOrder order_;
  Term lead_;
};

/// Parses the JSON description {variables, weights, order, modulus}.
QuotientRing parse_quotient_description(std::string_view json_text);

Polynomial normal_form(const QuotientRing& q, const Polynomial& f);
bool is_zero_in_quotient(const QuotientRing& q, const Polynomial& f);
/// D(P) ∈ (P).
bool induces_derivation(const QuotientRing& q, const Derivation& d);

struct MembershipResult {
  bool member = false;
  /// Element of the ideal generated by the given polynomials, in the ambient ring.
  std::optional<Polynomial> ideal_part;
  /// Polynomial in the subring variables only.
  std::optional<Polynomial> subring_part;
  std::size_t degree_bound = 0;
  std::size_t generators = 0;
  std::size_t rank = 0;
};

/// Decides whether nf(f) = nf(g + r) with g in the ideal generated by
/// `ideal_gens` and r a polynomial in `subring_vars`, searching cofactors
/// and subring monomials up to total degree max(deg f, deg nf(f)). When a
/// decomposition exists, f − g − r ∈ (P).
MembershipResult member_ideal_plus_subring(const QuotientRing& q, const Polynomial& f,
                                           const std::vector<Polynomial>& ideal_gens,
                                           const std::vector<std::size_t>& subring_vars);

enum class IrreducibilityStatus { irreducible_certified, reducible, unknown };
std::string to_string(IrreducibilityStatus s);

struct IrreducibilityVerdict {
  IrreducibilityStatus status = IrreducibilityStatus::unknown;
  /// Human-readable account of the specialization or factor used.
  std::string witness;
  /// A proper factor that divides the input exactly (reducible only).
  std::optional<Polynomial> factor;
  /// The input after setting the killed variables to zero.
  std::optional<Polynomial> specialized;
};

/// One-sided irreducibility test over Q. Sets `kill` to zero; if the degree
/// in `main` survives, the result is primitive in `main`, and a further
/// integer specialization of the remaining variables is certified
/// irreducible (linear, rational-root for degree ≤ 3, binomial, or
/// Eisenstein), the input is certified irreducible. A linear factor in
/// `main` found by root search yields a reducible verdict. Never certifies
/// wrongly; otherwise returns unknown.
IrreducibilityVerdict specialize_irreducibility(const Polynomial& p, const std::vector<std::size_t>& kill,
                                                std::size_t main);

}  // namespace lndlab
