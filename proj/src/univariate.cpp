#include "lndlab/univariate.hpp"

#include "lndlab/errors.hpp"

namespace lndlab {

namespace dense {

void trim(DenseUnivariate& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

long degree(const DenseUnivariate& a) { return static_cast<long>(a.size()) - 1; }

DenseUnivariate derivative(const DenseUnivariate& a) {
  DenseUnivariate d;
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

DenseUnivariate mul(const DenseUnivariate& a, const DenseUnivariate& b) {
  if (a.empty() || b.empty()) return {};
  DenseUnivariate r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

std::pair<DenseUnivariate, DenseUnivariate> divmod(const DenseUnivariate& a, const DenseUnivariate& b) {
  if (b.empty()) throw DomainError("univariate division by zero");
  DenseUnivariate r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  DenseUnivariate q(r.size() - b.size() + 1);
  const Rational& lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational c = r[k + b.size() - 1] / lead;
    q[k] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

DenseUnivariate monic(DenseUnivariate a) {
  trim(a);
  if (a.empty()) return a;
  Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

DenseUnivariate gcd(DenseUnivariate a, DenseUnivariate b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

Rational eval(const DenseUnivariate& a, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
  return acc;
}

}  // namespace dense

std::optional<std::size_t> univariate_variable(const Polynomial& f) {
  auto vars = f.variables_used();
  if (vars.size() > 1) throw DomainError("polynomial is not univariate");
  if (vars.empty()) return std::nullopt;
  return vars.front();
}

std::optional<std::size_t> shared_variable(const Polynomial& f, const Polynomial& g) {
  if (!same_context(f.context(), g.context())) throw ContextMismatch();
  auto vf = univariate_variable(f);
  auto vg = univariate_variable(g);
  if (vf && vg && *vf != *vg) throw DomainError("polynomials are univariate in different variables");
  return vf ? vf : vg;
}

DenseUnivariate to_dense(const Polynomial& f, std::size_t var) {
  auto deg = f.degree_in(var);
  if (deg.is_neg_infinity()) return {};
  DenseUnivariate a(static_cast<std::size_t>(deg.value()) + 1);
  for (const auto& t : f.terms()) {
    for (std::size_t v = 0; v < t.mono.size(); ++v)
      if (v != var && t.mono[v] != 0) throw DomainError("polynomial is not univariate");
    a[t.mono[var]] += t.coef;
  }
  dense::trim(a);
  return a;
}

Polynomial from_dense(const DenseUnivariate& a, const ContextPtr& ctx, std::size_t var) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (sgn(a[k]) != 0)
      terms.push_back({Monomial::variable(ctx->size(), var, static_cast<Monomial::Exponent>(k)), a[k]});
  return Polynomial::from_terms(ctx, std::move(terms));
}

Polynomial univariate_gcd(const Polynomial& f, const Polynomial& g) {
  auto var = shared_variable(f, g);
  if (!var) {
    // Both constant: gcd is 1 unless both vanish.
    return Polynomial::constant(f.context(), (f.is_zero() && g.is_zero()) ? 0 : 1);
  }
  return from_dense(dense::gcd(to_dense(f, *var), to_dense(g, *var)), f.context(), *var);
}

Polynomial radical_univariate(const Polynomial& f) {
  if (f.is_zero()) throw DomainError("radical of the zero polynomial");
  auto var = univariate_variable(f);
  if (!var) return Polynomial::constant(f.context(), 1);
  auto a = to_dense(f, *var);
  auto g = dense::gcd(a, dense::derivative(a));
  return from_dense(dense::monic(dense::divmod(a, g).first), f.context(), *var);
}

}  // namespace lndlab
