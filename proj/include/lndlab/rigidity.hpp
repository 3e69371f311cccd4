#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lndlab/derivation.hpp"
#include "lndlab/polynomial.hpp"
#include "lndlab/quotient.hpp"

namespace lndlab {

/// Degree data for f + g + h = 0 with h = −f − g, and the Mason–Stothers
/// inequality max(deg f, deg g, deg h) ≤ deg rad(fgh) − 1.
struct MasonReport {
  Degree deg_f = Degree::neg_infinity();
  Degree deg_g = Degree::neg_infinity();
  Degree deg_h = Degree::neg_infinity();
  Degree deg_radical = Degree::neg_infinity();  // −∞ when fgh = 0
  bool coprime = false;
  bool all_constant = false;
  bool degenerate = false;  // one of f, g, h vanishes
  /// The inequality is asserted only for coprime, non-degenerate, non-constant triples.
  bool applicable() const { return coprime && !all_constant && !degenerate; }
  bool holds = false;
  std::int64_t slack = 0;  // deg rad(fgh) − 1 − max degree, when applicable
};

MasonReport mason_check(const Polynomial& f, const Polynomial& g);

enum class MiniMasonVerdict { constant_sum_forces_constants, nonconstant_sum };
std::string to_string(MiniMasonVerdict v);

/// Evaluates fᵃ + gᵇ. A nonzero constant sum with nonconstant f or g would
/// contradict the mini-Mason lemma and is reported by throwing.
MiniMasonVerdict mini_mason_eval(const Polynomial& f, const Polynomial& g, unsigned a, unsigned b);

struct CatalanBound {
  bool satisfied = false;
  Rational reciprocal_sum;
  Rational bound;  // 1/(n−2)
};

/// Exact test of Σ 1/dᵢ ≤ 1/(n−2), n = exponents.size() ≥ 3.
CatalanBound catalan_bound_check(const std::vector<unsigned>& exponents);

struct SpecializationPlan {
  std::vector<std::size_t> kill;
  std::size_t main = 0;
};

struct SubsumCheck {
  std::vector<std::size_t> indices;
  bool vanishes = false;
};

/// Evidence for the hypotheses of the power-sum rigidity lemma for
/// P = Σ Fᵢ^{dᵢ}: the reciprocal bound, nonvanishing of every nonempty proper
/// subsum modulo P, and a primality verdict for P.
struct RigidityCertificate {
  std::vector<unsigned> exponents;
  CatalanBound bound;
  std::vector<SubsumCheck> subsums;
  IrreducibilityVerdict primality;
  std::optional<SpecializationPlan> plan;
  Polynomial modulus;

  bool complete() const;
};

/// Builds the certificate. Without a plan, (main, kill) pairs are tried
/// with main in reverse variable order and kill sets by increasing size
/// until one certifies P.
RigidityCertificate build_rigidity_certificate(const ContextPtr& ctx,
                                               const std::vector<std::pair<Polynomial, unsigned>>& terms,
                                               std::optional<SpecializationPlan> plan = std::nullopt);

/// A quotient ring with its distinguished derivation and named elements.
struct ExampleRing {
  QuotientRing quotient;
  Derivation derivation;
  std::map<std::string, Polynomial> named;
  std::vector<std::pair<Polynomial, unsigned>> power_terms;
  SpecializationPlan plan;

  const Polynomial& element(const std::string& name) const { return named.at(name); }
};

/// C[X₁..Xₙ, Y₁..Yₙ]/(Σ Xᵢ^{dᵢ} + Σ_{i≥2} Lᵢ^{eᵢ}), Lᵢ = XᵢY₁ − X₁Yᵢ, with
/// D(Xᵢ) = 0, D(Yᵢ) = Xᵢ. `e` lists e₂..eₙ.
ExampleRing build_example1(unsigned n, const std::vector<unsigned>& d, const std::vector<unsigned>& e);

/// C[X,Y,Z,S,T,U,V]/(X^{d₁}+Y^{d₂}+Z^{d₃}+L₁^{d₄}+L₂^{d₅}+L₃^{d₆}) with
/// L₁ = Y³S − X³T, L₂ = Z³S − X³U, L₃ = Y²Z²S − XV and
/// E = X³∂_S + Y³∂_T + Z³∂_U + X²Y²Z²∂_V. Variable weights are
/// (1,1,1,3,3,3,6), which make E weight-preserving.
ExampleRing build_section4(const std::vector<unsigned>& d = {25, 25, 25, 25, 25, 25});

struct CatalanSolution {
  std::vector<Polynomial> f;
  bool all_constant = false;
};

struct CatalanSearchResult {
  std::vector<CatalanSolution> solutions;
  std::uint64_t candidates = 0;
  CatalanBound bound;
};

/// Default candidate guard: LNDLAB_MAX_SEARCH if set, else 10⁷.
std::uint64_t default_search_guard();

/// Enumerates n-tuples of univariate polynomials (in a fresh variable S)
/// with coefficients from `pool` and degree ≤ max_degree satisfying
/// Σ fᵢ^{dᵢ} = 0 and the hypothesis that every vanishing subsum has
/// coprime members. Throws DomainError when the tuple count exceeds `guard`.
CatalanSearchResult brute_search_catalan_solutions(unsigned n, const std::vector<unsigned>& exponents,
                                                   unsigned max_degree, const std::vector<Rational>& pool,
                                                   std::uint64_t guard = default_search_guard());

}  // namespace lndlab
