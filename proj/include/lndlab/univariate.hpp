#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lndlab/polynomial.hpp"

namespace lndlab {

/// Dense coefficient vector, index k holding the coefficient of x^k.
/// Canonical form has no trailing zeros; the zero polynomial is empty.
using DenseUnivariate = std::vector<Rational>;

namespace dense {

void trim(DenseUnivariate& a);
/// −1 for the zero polynomial.
long degree(const DenseUnivariate& a);
DenseUnivariate derivative(const DenseUnivariate& a);
DenseUnivariate mul(const DenseUnivariate& a, const DenseUnivariate& b);
/// Quotient and remainder of a by nonzero b.
std::pair<DenseUnivariate, DenseUnivariate> divmod(const DenseUnivariate& a, const DenseUnivariate& b);
DenseUnivariate monic(DenseUnivariate a);
/// Monic gcd; gcd(0, 0) = 0.
DenseUnivariate gcd(DenseUnivariate a, DenseUnivariate b);
Rational eval(const DenseUnivariate& a, const Rational& x);

}  // namespace dense

/// The single variable a polynomial involves; nullopt for constants.
/// Throws DomainError when more than one variable occurs.
std::optional<std::size_t> univariate_variable(const Polynomial& f);

/// Common variable of f and g (nullopt when both are constant); throws when
/// they are not univariate in one shared variable.
std::optional<std::size_t> shared_variable(const Polynomial& f, const Polynomial& g);

DenseUnivariate to_dense(const Polynomial& f, std::size_t var);
Polynomial from_dense(const DenseUnivariate& a, const ContextPtr& ctx, std::size_t var);

/// Monic gcd of two univariate polynomials in the same variable.
Polynomial univariate_gcd(const Polynomial& f, const Polynomial& g);

/// Squarefree part f / gcd(f, f′), made monic.
Polynomial radical_univariate(const Polynomial& f);

/// Rational roots of `a`. `complete` is false when the candidate set was too
/// large to enumerate, in which case only the root 0 is reported.
std::vector<Rational> rational_roots(const DenseUnivariate& a, bool* complete);

/// True when `a` is provably irreducible over Q (linear; degree ≤ 3 without
/// rational roots; binomial by Capelli; Eisenstein, also reversed). `how`
/// receives the criterion used.
bool certify_univariate_irreducible(const DenseUnivariate& a, std::string* how);

}  // namespace lndlab
