#include "lndlab/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "lndlab/errors.hpp"
#include "lndlab/parse.hpp"
#include "lndlab/univariate.hpp"

namespace lndlab {

MasonReport mason_check(const Polynomial& f, const Polynomial& g) {
  auto var = shared_variable(f, g);
  Polynomial h = -(f + g);
  if (f.is_zero() && g.is_zero()) throw DomainError("mason_check needs f, g, h not all zero");

  MasonReport r;
  r.deg_f = f.total_degree();
  r.deg_g = g.total_degree();
  r.deg_h = h.total_degree();
  r.all_constant = f.is_constant() && g.is_constant();
  r.degenerate = f.is_zero() || g.is_zero() || h.is_zero();
  // With f + g + h = 0, gcd(f, g) = 1 makes all three pairwise coprime.
  auto gcd = univariate_gcd(f, g);
  r.coprime = gcd.is_constant() && !gcd.is_zero();

  Polynomial prod = f * g * h;
  if (!prod.is_zero()) {
    r.deg_radical = radical_univariate(prod).total_degree();
    const auto top = std::max({r.deg_f, r.deg_g, r.deg_h}).value();
    r.slack = r.deg_radical.value() - 1 - top;
    r.holds = r.slack >= 0;
  }
  (void)var;
  return r;
}

std::string to_string(MiniMasonVerdict v) {
  return v == MiniMasonVerdict::constant_sum_forces_constants ? "constant-sum-forces-constants"
                                                              : "nonconstant-sum";
}

MiniMasonVerdict mini_mason_eval(const Polynomial& f, const Polynomial& g, unsigned a, unsigned b) {
  if (a < 2 || b < 2) throw DomainError("mini-Mason exponents must be at least 2");
  shared_variable(f, g);
  Polynomial sum = pow(f, a) + pow(g, b);
  if (sum.is_zero() || !sum.is_constant()) return MiniMasonVerdict::nonconstant_sum;
  if (!f.is_constant() || !g.is_constant())
    throw Error("mini-Mason violated: f = " + format_poly(f) + ", g = " + format_poly(g));
  return MiniMasonVerdict::constant_sum_forces_constants;
}

CatalanBound catalan_bound_check(const std::vector<unsigned>& exponents) {
  const auto n = exponents.size();
  if (n < 3) throw DomainError("the reciprocal bound needs at least three exponents");
  CatalanBound out;
  out.reciprocal_sum = 0;
  for (auto d : exponents) {
    if (d == 0) throw DomainError("exponents must be positive");
    out.reciprocal_sum += Rational(1, d);
  }
  out.reciprocal_sum.canonicalize();
  out.bound = Rational(1, static_cast<unsigned long>(n - 2));
  out.satisfied = out.reciprocal_sum <= out.bound;
  return out;
}

bool RigidityCertificate::complete() const {
  if (!bound.satisfied) return false;
  for (const auto& s : subsums)
    if (s.vanishes) return false;
  return primality.status == IrreducibilityStatus::irreducible_certified;
}

namespace {

std::vector<std::vector<std::size_t>> subsets_by_size(const std::vector<std::size_t>& pool,
                                                      std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k <= std::min(max_size, pool.size()); ++k) {
    std::vector<bool> pick(pool.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (pick[i]) s.push_back(pool[i]);
      out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

}  // namespace

RigidityCertificate build_rigidity_certificate(const ContextPtr& ctx,
                                               const std::vector<std::pair<Polynomial, unsigned>>& terms,
                                               std::optional<SpecializationPlan> plan) {
  const std::size_t m = terms.size();
  if (m < 3) throw DomainError("a rigidity certificate needs at least three power terms");
  if (m > 20) throw DomainError("too many power terms for subsum enumeration");

  std::vector<Polynomial> powers;
  std::vector<unsigned> exps;
  Polynomial modulus(ctx);
  for (const auto& [f, d] : terms) {
    if (!same_context(f.context(), ctx)) throw ContextMismatch();
    powers.push_back(pow(f, d));
    exps.push_back(d);
    modulus += powers.back();
  }

  RigidityCertificate cert{exps, catalan_bound_check(exps), {}, {}, std::nullopt, modulus};
  QuotientRing q(modulus, MonomialOrder::lex(ctx->size()));
  for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
    SubsumCheck s;
    Polynomial sum(ctx);
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        s.indices.push_back(i);
        sum += powers[i];
      }
    s.vanishes = is_zero_in_quotient(q, sum);
    cert.subsums.push_back(std::move(s));
  }

  if (plan) {
    cert.primality = specialize_irreducibility(modulus, plan->kill, plan->main);
    cert.plan = plan;
    return cert;
  }
  const auto used = modulus.variables_used();
  for (auto it = used.rbegin(); it != used.rend(); ++it) {
    std::vector<std::size_t> others;
    for (auto v : used)
      if (v != *it) others.push_back(v);
    const std::size_t max_kill = used.size() <= 8 ? others.size() : 1;
    for (const auto& kill : subsets_by_size(others, max_kill)) {
      auto verdict = specialize_irreducibility(modulus, kill, *it);
      if (verdict.status == IrreducibilityStatus::unknown) continue;
      cert.primality = std::move(verdict);
      cert.plan = SpecializationPlan{kill, *it};
      return cert;
    }
  }
  cert.primality.witness = "no specialization plan certified the modulus";
  return cert;
}

ExampleRing build_example1(unsigned n, const std::vector<unsigned>& d, const std::vector<unsigned>& e) {
  if (n < 3) throw DomainError("example ring needs n >= 3");
  if (d.size() != n) throw DomainError("expected " + std::to_string(n) + " exponents d");
  if (e.size() != n - 1) throw DomainError("expected " + std::to_string(n - 1) + " exponents e");
  for (auto x : d)
    if (x == 0) throw DomainError("exponents must be positive");
  for (auto x : e)
    if (x == 0) throw DomainError("exponents must be positive");

  std::vector<std::string> names;
  for (unsigned i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
  for (unsigned i = 1; i <= n; ++i) names.push_back("Y" + std::to_string(i));
  auto ctx = RingContext::make(names);

  std::map<std::string, Polynomial> named;
  std::vector<Polynomial> xs, ys;
  for (unsigned i = 1; i <= n; ++i) {
    xs.push_back(Polynomial::variable(ctx, "X" + std::to_string(i)));
    ys.push_back(Polynomial::variable(ctx, "Y" + std::to_string(i)));
    named.emplace("x" + std::to_string(i), xs.back());
    named.emplace("y" + std::to_string(i), ys.back());
  }
  std::vector<std::pair<Polynomial, unsigned>> power_terms;
  for (unsigned i = 0; i < n; ++i) power_terms.emplace_back(xs[i], d[i]);
  for (unsigned i = 1; i < n; ++i) {
    Polynomial l = xs[i] * ys[0] - xs[0] * ys[i];
    named.emplace("l" + std::to_string(i + 1), l);
    power_terms.emplace_back(l, e[i - 1]);
  }
  Polynomial modulus(ctx);
  for (const auto& [f, k] : power_terms) modulus += pow(f, k);
  named.emplace("P", modulus);

  std::map<std::string, Polynomial> images;
  for (unsigned i = 0; i < n; ++i) images.emplace("Y" + std::to_string(i + 1), xs[i]);
  auto deriv = Derivation::from_images(ctx, images);

  SpecializationPlan plan;
  for (unsigned i = 0; i + 1 < n; ++i) plan.kill.push_back(ctx->require("Y" + std::to_string(i + 1)));
  plan.main = ctx->require("Y" + std::to_string(n));

  ExampleRing ring{QuotientRing(modulus, MonomialOrder::lex(ctx->size())), deriv, named, power_terms, plan};
  if (!induces_derivation(ring.quotient, deriv)) throw Error("internal: D does not preserve (P)");
  for (unsigned i = 2; i <= n; ++i)
    if (!deriv(named.at("l" + std::to_string(i))).is_zero()) throw Error("internal: D(l_i) != 0");
  return ring;
}

ExampleRing build_section4(const std::vector<unsigned>& d) {
  if (d.size() != 6) throw DomainError("expected six exponents");
  for (auto x : d)
    if (x < 2) throw DomainError("exponents must be at least 2");
  auto ctx = RingContext::make({"X", "Y", "Z", "S", "T", "U", "V"}, {1, 1, 1, 3, 3, 3, 6});
  auto var = [&](const char* n) { return Polynomial::variable(ctx, n); };
  const auto X = var("X"), Y = var("Y"), Z = var("Z"), S = var("S"), T = var("T"), U = var("U"),
             V = var("V");

  Polynomial l1 = pow(Y, 3) * S - pow(X, 3) * T;
  Polynomial l2 = pow(Z, 3) * S - pow(X, 3) * U;
  Polynomial l3 = pow(Y, 2) * pow(Z, 2) * S - X * V;
  std::vector<std::pair<Polynomial, unsigned>> power_terms = {{X, d[0]},  {Y, d[1]},  {Z, d[2]},
                                                              {l1, d[3]}, {l2, d[4]}, {l3, d[5]}};
  Polynomial modulus(ctx);
  for (const auto& [f, k] : power_terms) modulus += pow(f, k);

  auto e = Derivation::from_images(ctx, {{"S", pow(X, 3)},
                                         {"T", pow(Y, 3)},
                                         {"U", pow(Z, 3)},
                                         {"V", pow(X, 2) * pow(Y, 2) * pow(Z, 2)}});
  std::map<std::string, Polynomial> named = {{"x", X},   {"y", Y},   {"z", Z},   {"s", S},
                                             {"t", T},   {"u", U},   {"v", V},   {"l1", l1},
                                             {"l2", l2}, {"l3", l3}, {"P", modulus}};
  SpecializationPlan plan{{ctx->require("S")}, ctx->require("V")};
  ExampleRing ring{QuotientRing(modulus, MonomialOrder::lex(ctx->size())), e, named, power_terms, plan};

  for (const char* w : {"l1", "l2", "l3", "P"})
    if (!e(named.at(w)).is_zero()) throw Error(std::string("internal: E(") + w + ") != 0");
  if (certify_triangular(e).status != NilpotencyStatus::certified_nilpotent)
    throw Error("internal: E is not triangular");
  return ring;
}

std::uint64_t default_search_guard() {
  if (const char* env = std::getenv("LNDLAB_MAX_SEARCH")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 10'000'000ULL;
}

CatalanSearchResult brute_search_catalan_solutions(unsigned n, const std::vector<unsigned>& exponents,
                                                   unsigned max_degree, const std::vector<Rational>& pool,
                                                   std::uint64_t guard) {
  if (exponents.size() != n) throw DomainError("exponent count does not match n");
  if (pool.empty()) throw DomainError("coefficient pool is empty");
  for (auto d : exponents)
    if (d == 0) throw DomainError("exponents must be positive");

  CatalanSearchResult out;
  out.bound = n >= 3 ? catalan_bound_check(exponents) : CatalanBound{};

  // Guard before enumerating anything.
  long double per_poly = std::pow(static_cast<long double>(pool.size()), max_degree + 1);
  long double total = std::pow(per_poly, static_cast<long double>(n));
  if (total > static_cast<long double>(guard))
    throw DomainError("search space of " + std::to_string(static_cast<unsigned long long>(total)) +
                      " candidates exceeds the guard of " + std::to_string(guard));

  std::vector<DenseUnivariate> polys;
  {
    std::vector<std::size_t> digits(max_degree + 1, 0);
    for (;;) {
      DenseUnivariate p;
      for (auto k : digits) p.push_back(pool[k]);
      dense::trim(p);
      polys.push_back(std::move(p));
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == pool.size()) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  }
  // Distinct polynomials only (the pool may contain duplicates).
  std::sort(polys.begin(), polys.end());
  polys.erase(std::unique(polys.begin(), polys.end()), polys.end());

  std::map<unsigned, std::vector<DenseUnivariate>> powers;
  for (auto d : exponents) {
    if (powers.count(d)) continue;
    auto& list = powers[d];
    for (const auto& p : polys) {
      DenseUnivariate acc{Rational(1)};
      for (unsigned i = 0; i < d; ++i) acc = dense::mul(acc, p);
      if (p.empty()) acc.clear();
      list.push_back(std::move(acc));
    }
  }

  auto add_into = [](DenseUnivariate& acc, const DenseUnivariate& b) {
    if (acc.size() < b.size()) acc.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) acc[i] += b[i];
  };

  auto ctx = RingContext::make({"S"});
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    ++out.candidates;
    DenseUnivariate sum;
    for (unsigned i = 0; i < n; ++i) add_into(sum, powers[exponents[i]][idx[i]]);
    dense::trim(sum);
    if (sum.empty()) {
      bool ok = true;
      for (std::uint32_t mask = 1; mask < (1u << n) && ok; ++mask) {
        DenseUnivariate sub;
        DenseUnivariate g;
        for (unsigned i = 0; i < n; ++i)
          if (mask & (1u << i)) add_into(sub, powers[exponents[i]][idx[i]]);
        dense::trim(sub);
        if (!sub.empty()) continue;
        for (unsigned i = 0; i < n; ++i)
          if (mask & (1u << i)) g = dense::gcd(g, polys[idx[i]]);
        ok = g.size() == 1;  // gcd is the constant 1
      }
      if (ok) {
        CatalanSolution s;
        s.all_constant = true;
        for (unsigned i = 0; i < n; ++i) {
          s.f.push_back(from_dense(polys[idx[i]], ctx, 0));
          if (polys[idx[i]].size() > 1) s.all_constant = false;
        }
        out.solutions.push_back(std::move(s));
      }
    }
    unsigned k = 0;
    while (k < n && ++idx[k] == polys.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

}  // namespace lndlab
