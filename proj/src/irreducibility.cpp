#include <algorithm>
#include <set>

#include "lndlab/errors.hpp"
#include "lndlab/parse.hpp"
#include "lndlab/quotient.hpp"
#include "lndlab/univariate.hpp"

namespace lndlab {

namespace {

using IntPoly = std::vector<Integer>;

/// Primitive integer multiple of a rational polynomial (positive leading coefficient).
IntPoly primitive_integer(const DenseUnivariate& a) {
  Integer den = 1;
  for (const auto& c : a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  Integer g = 0;
  for (const auto& c : a) {
    Rational s = c * den;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g != 0)
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  if (!out.empty() && out.back() < 0)
    for (auto& c : out) c = -c;
  return out;
}

std::vector<Integer> prime_factors(Integer n) {
  std::vector<Integer> out;
  if (n < 0) n = -n;
  if (n < 2) return out;
  for (unsigned long p = 2; p < 100000 && Integer(p) * p <= n; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.emplace_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  if (n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) out.push_back(n);
  return out;
}

/// Positive divisors of |n|, or empty when |n| is too large to enumerate.
std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  if (n == 0 || n > Integer("1000000000000")) return {};
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

bool is_perfect_power(const Integer& n, unsigned long p) {
  if (n < 0 && p % 2 == 0) return false;
  Integer r;
  return mpz_root(r.get_mpz_t(), n.get_mpz_t(), p) != 0;
}

bool rational_is_power(const Rational& c, unsigned long p) {
  return is_perfect_power(c.get_num(), p) && is_perfect_power(c.get_den(), p);
}

}  // namespace

/// Rational roots of a univariate polynomial (empty when the coefficient
/// sizes make candidate enumeration infeasible and no root is 0).
std::vector<Rational> rational_roots(const DenseUnivariate& a, bool* complete) {
  std::vector<Rational> roots;
  *complete = true;
  auto ip = primitive_integer(a);
  if (ip.size() <= 1) return roots;
  std::size_t low = 0;
  while (low < ip.size() && ip[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (ip.size() - low <= 1) return roots;
  auto num = divisors(ip[low]);
  auto den = divisors(ip.back());
  if (num.empty() || den.empty()) {
    *complete = false;
    return roots;
  }
  std::set<Rational> seen;
  for (const auto& p : num)
    for (const auto& q : den)
      for (int sign : {1, -1}) {
        Rational r(Integer(p * sign), q);
        r.canonicalize();
        if (!seen.insert(r).second) continue;
        if (sgn(dense::eval(a, r)) == 0) roots.push_back(r);
      }
  return roots;
}

/// Certifies irreducibility over Q of a univariate polynomial, or returns
/// false when none of the available criteria applies.
bool certify_univariate_irreducible(const DenseUnivariate& a, std::string* how) {
  auto ip = primitive_integer(a);
  const long n = static_cast<long>(ip.size()) - 1;
  if (n < 1) return false;
  if (n == 1) {
    *how = "linear";
    return true;
  }
  if (n <= 3) {
    bool complete = false;
    auto roots = rational_roots(a, &complete);
    if (complete && roots.empty()) {
      *how = "degree " + std::to_string(n) + " without rational roots";
      return true;
    }
    if (!roots.empty()) return false;
  }

  // a·xⁿ + b: irreducible iff xⁿ − c is, c = −b/a (Capelli).
  bool binomial = ip[0] != 0;
  for (long k = 1; k < n; ++k)
    if (ip[k] != 0) binomial = false;
  if (binomial) {
    Rational c(-ip[0], ip[n]);
    c.canonicalize();
    bool ok = true;
    for (const auto& p : prime_factors(Integer(n)))
      if (rational_is_power(c, p.get_ui())) ok = false;
    if (n % 4 == 0 && rational_is_power(Rational(-c / 4), 4)) ok = false;
    if (ok) {
      *how = "binomial x^" + std::to_string(n) + (sgn(c) < 0 ? " + " + Rational(-c).get_str() : " - " + c.get_str()) +
             " (Capelli)";
      return true;
    }
    return false;
  }

  auto eisenstein = [&](const IntPoly& c) -> std::optional<Integer> {
    Integer g = 0;
    for (long k = 0; k < n; ++k) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c[k].get_mpz_t());
    for (const auto& p : prime_factors(g)) {
      if (c[n] % p == 0) continue;
      if (c[0] % (p * p) == 0) continue;
      return p;
    }
    return std::nullopt;
  };
  if (auto p = eisenstein(ip)) {
    *how = "Eisenstein at " + p->get_str();
    return true;
  }
  IntPoly rev(ip.rbegin(), ip.rend());
  if (auto p = eisenstein(rev)) {
    *how = "Eisenstein at " + p->get_str() + " (reversed)";
    return true;
  }
  return false;
}

namespace {

/// Content of f in `main` over Q[other variables] is a unit. Sound but
/// incomplete: succeeds when some coefficient is a nonzero constant, or a
/// monomial none of whose variables divides every coefficient.
bool content_is_unit(const std::vector<Polynomial>& coeffs) {
  for (const auto& c : coeffs)
    if (!c.is_zero() && c.is_constant()) return true;
  for (const auto& c : coeffs) {
    if (c.num_terms() != 1) continue;
    const Monomial& m = c.terms()[0].mono;
    bool ok = true;
    for (std::size_t v = 0; v < m.size() && ok; ++v) {
      if (m[v] == 0) continue;
      bool some_free = false;
      for (const auto& other : coeffs) {
        if (other.is_zero()) continue;
        for (const auto& t : other.terms())
          if (t.mono[v] == 0) some_free = true;
      }
      ok = some_free;
    }
    if (ok) return true;
  }
  return false;
}

Rational eval_at(const Polynomial& f, const std::vector<Integer>& point) {
  Rational acc = 0;
  for (const auto& t : f.terms()) {
    Rational term = t.coef;
    for (std::size_t v = 0; v < t.mono.size(); ++v) {
      if (t.mono[v] == 0) continue;
      Integer pw;
      mpz_pow_ui(pw.get_mpz_t(), point[v].get_mpz_t(), t.mono[v]);
      term *= pw;
    }
    acc += term;
  }
  return acc;
}

std::optional<Polynomial> linear_factor_search(const Polynomial& p, std::size_t main) {
  const auto& ctx = p.context();
  const auto coeffs = coefficients_in(p, main);
  if (coeffs.size() < 3) return std::nullopt;  // degree < 2 in main
  const Polynomial& a0 = coeffs.front();
  const auto main_var = Polynomial::variable(ctx, main);

  std::vector<Polynomial> candidates;
  if (p.variables_used().size() == 1) {
    bool complete = false;
    for (const auto& r : rational_roots(to_dense(p, main), &complete))
      candidates.push_back(Polynomial::constant(ctx, r));
  } else if (!a0.is_zero()) {
    std::set<Monomial> monos;
    for (const auto& t : a0.terms()) {
      Monomial m(ctx->size());
      auto rec = [&](auto&& self, std::size_t v) -> void {
        if (monos.size() > 400) return;
        if (v == m.size()) {
          monos.insert(m);
          return;
        }
        for (Monomial::Exponent e = 0; e <= t.mono[v]; ++e) {
          m[v] = e;
          self(self, v + 1);
        }
        m[v] = 0;
      };
      rec(rec, 0);
    }
    const std::vector<Rational> scalars = {1, -1, 2, -2, Rational(1, 2), Rational(-1, 2), 3, -3};
    for (const auto& m : monos)
      for (const auto& c : scalars) candidates.push_back(Polynomial::monomial(ctx, m, c));
  }
  for (const auto& r : candidates) {
    if (!substitute(p, std::map<std::size_t, Polynomial>{{main, r}}).is_zero()) continue;
    Polynomial factor = main_var - r;
    auto q = exact_quotient(p, factor);
    if (q && !q->is_constant()) return factor;
  }
  return std::nullopt;
}

std::optional<Polynomial> variable_content_factor(const Polynomial& p) {
  const auto& ctx = p.context();
  if (p.num_terms() == 0) return std::nullopt;
  for (std::size_t v = 0; v < ctx->size(); ++v) {
    bool all = std::all_of(p.terms().begin(), p.terms().end(), [&](const Term& t) { return t.mono[v] > 0; });
    if (!all) continue;
    auto x = Polynomial::variable(ctx, v);
    auto q = exact_quotient(p, x);
    if (q && !q->is_constant()) return x;
  }
  return std::nullopt;
}

}  // namespace

IrreducibilityVerdict specialize_irreducibility(const Polynomial& p, const std::vector<std::size_t>& kill,
                                                std::size_t main) {
  const auto& ctx = p.context();
  if (main >= ctx->size()) throw DomainError("main variable out of range");
  for (auto v : kill) {
    if (v >= ctx->size()) throw DomainError("kill variable out of range");
    if (v == main) throw DomainError("main variable cannot be specialized");
  }

  IrreducibilityVerdict out;
  if (auto f = variable_content_factor(p)) {
    out.status = IrreducibilityStatus::reducible;
    out.factor = *f;
    out.witness = "every term is divisible by " + format_poly(*f);
    return out;
  }

  std::map<std::size_t, Polynomial> zero_bindings;
  for (auto v : kill) zero_bindings.emplace(v, Polynomial(ctx));
  Polynomial special = substitute(p, zero_bindings);
  out.specialized = special;

  const auto deg = p.degree_in(main);
  const auto special_deg = special.degree_in(main);
  if (deg.is_neg_infinity() || deg.value() == 0) {
    out.witness = "input does not involve the main variable";
  } else if (special_deg != deg) {
    out.witness = "degree in " + ctx->name(main) + " drops from " + deg.to_string() + " to " +
                  special_deg.to_string() + " under the specialization";
  } else if (!content_is_unit(coefficients_in(p, main)) || !content_is_unit(coefficients_in(special, main))) {
    out.witness = "could not show the input is primitive in " + ctx->name(main);
  } else {
    // Specialize the remaining variables to small integers, keeping the
    // leading coefficient nonzero, until the univariate image is certified.
    std::vector<std::size_t> rest;
    for (auto v : special.variables_used())
      if (v != main) rest.push_back(v);
    const auto coeffs = coefficients_in(special, main);
    static const long kValues[] = {1, -1, 2, -2, 3, -3, 5, 7};
    constexpr std::size_t kNumValues = sizeof(kValues) / sizeof(kValues[0]);
    constexpr std::size_t kMaxAttempts = 512;
    std::vector<std::size_t> digits(rest.size(), 0);
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      std::vector<Integer> point(ctx->size(), 0);
      for (std::size_t k = 0; k < rest.size(); ++k) point[rest[k]] = kValues[digits[k]];
      DenseUnivariate uni;
      for (const auto& c : coeffs) uni.push_back(eval_at(c, point));
      dense::trim(uni);
      if (static_cast<std::int64_t>(uni.size()) - 1 == deg.value()) {
        std::string how;
        if (certify_univariate_irreducible(uni, &how)) {
          out.status = IrreducibilityStatus::irreducible_certified;
          std::string assignment;
          for (std::size_t k = 0; k < rest.size(); ++k)
            assignment += (k ? ", " : "") + ctx->name(rest[k]) + "=" + std::to_string(kValues[digits[k]]);
          std::string killed;
          for (std::size_t k = 0; k < kill.size(); ++k) killed += (k ? ", " : "") + ctx->name(kill[k]);
          out.witness = "kill {" + killed + "}, then {" + assignment + "}: " + how;
          return out;
        }
      }
      // Next mixed-radix assignment.
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == kNumValues) digits[k++] = 0;
      if (k == digits.size()) break;
    }
    out.witness = "no certified univariate specialization found";
  }

  if (auto f = linear_factor_search(p, main)) {
    out.status = IrreducibilityStatus::reducible;
    out.factor = *f;
    out.witness = "linear factor " + format_poly(*f) + " in " + ctx->name(main);
  }
  return out;
}

}  // namespace lndlab
