#pragma once
// Independent reference implementations used to cross-check the library.
// They share no code with it beyond the GMP number types and the
// Polynomial container used to hand values back and forth.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "lndlab/polynomial.hpp"

namespace oracle {

using lndlab::ContextPtr;
using lndlab::Polynomial;
using Exps = std::vector<unsigned>;
using Dense = std::map<Exps, mpq_class>;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline Dense to_dense(const Polynomial& p) {
  Dense d;
  for (const auto& t : p.terms()) d[Exps(t.mono.exponents().begin(), t.mono.exponents().end())] = t.coef;
  return d;
}

inline void drop_zeros(Dense& d) {
  for (auto it = d.begin(); it != d.end();) it = it->second == 0 ? d.erase(it) : std::next(it);
}

inline Dense add(Dense a, const Dense& b, int sign = 1) {
  for (const auto& [m, c] : b) a[m] += sign * c;
  drop_zeros(a);
  return a;
}

/// Schoolbook product over an ordered map of exponent vectors.
inline Dense mul(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Exps m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out[m] += ca * cb;
    }
  drop_zeros(out);
  return out;
}

/// Random polynomial with integer coefficients in [-cmax, cmax].
inline Polynomial random_poly(Rng& rng, const ContextPtr& ctx, int max_terms, unsigned max_deg, int cmax = 5) {
  std::vector<lndlab::Term> terms;
  const int nt = rng.uniform(0, max_terms);
  for (int k = 0; k < nt; ++k) {
    lndlab::Monomial m(ctx->size());
    unsigned budget = static_cast<unsigned>(rng.uniform(0, static_cast<int>(max_deg)));
    for (unsigned s = 0; s < budget; ++s) m[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(ctx->size()) - 1))] += 1;
    int c = rng.uniform(-cmax, cmax);
    if (c != 0) terms.push_back({m, c});
  }
  return Polynomial::from_terms(ctx, std::move(terms));
}

/// Random homogeneous polynomial of exact total degree `deg`.
inline Polynomial random_homogeneous(Rng& rng, const ContextPtr& ctx, int max_terms, unsigned deg, int cmax = 3) {
  std::vector<lndlab::Term> terms;
  const int nt = rng.uniform(1, max_terms);
  for (int k = 0; k < nt; ++k) {
    lndlab::Monomial m(ctx->size());
    for (unsigned s = 0; s < deg; ++s) m[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(ctx->size()) - 1))] += 1;
    int c = rng.uniform(-cmax, cmax);
    if (c != 0) terms.push_back({m, c});
  }
  return Polynomial::from_terms(ctx, std::move(terms));
}

/// Rank of a set of sparse rational vectors by plain Gaussian elimination.
/// Each basis vector is keyed by its smallest monomial; reducing in
/// ascending pivot order only introduces larger keys, so one pass suffices.
inline std::size_t rank(std::vector<Dense> rows) {
  std::map<Exps, Dense> basis;
  for (auto& v : rows) {
    for (const auto& [pivot, b] : basis) {
      auto it = v.find(pivot);
      if (it == v.end()) continue;
      mpq_class f = it->second / b.begin()->second;
      for (const auto& [k, c] : b) v[k] -= f * c;
      drop_zeros(v);
    }
    if (!v.empty()) basis.emplace(v.begin()->first, std::move(v));
  }
  return basis.size();
}

inline bool in_span(const std::vector<Dense>& rows, const Dense& target) {
  auto with = rows;
  with.push_back(target);
  return rank(with) == rank(rows);
}

/// Monomials in `nvars` variables of exact total degree `deg`.
inline std::vector<Exps> monomials_of_degree(std::size_t nvars, unsigned deg) {
  std::vector<Exps> out;
  Exps cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
  };
  if (nvars == 0) return deg == 0 ? std::vector<Exps>{Exps{}} : std::vector<Exps>{};
  rec(rec, 0, deg);
  return out;
}

// Seven-variable example ring: X Y Z S T U V with weights 1 1 1 3 3 3 6 and
// E = X^3 d/dS + Y^3 d/dT + Z^3 d/dU + X^2Y^2Z^2 d/dV written out by hand.

inline Dense apply_E(const Exps& m) {
  Dense out;
  auto push = [&](std::size_t var, const Exps& add, unsigned mult) {
    if (m[var] == 0) return;
    Exps r = m;
    r[var] -= 1;
    for (std::size_t i = 0; i < 7; ++i) r[i] += add[i];
    out[r] += mult;
  };
  push(3, {3, 0, 0, 0, 0, 0, 0}, m[3]);
  push(4, {0, 3, 0, 0, 0, 0, 0}, m[4]);
  push(5, {0, 0, 3, 0, 0, 0, 0}, m[5]);
  push(6, {2, 2, 2, 0, 0, 0, 0}, m[6]);
  return out;
}

/// Nullspace dimension of E on the monomials of weight w and S,T,U,V-degree
/// k, by dense rational elimination on the full matrix.
inline std::size_t slice_kernel_dimension(unsigned w, unsigned k, std::size_t* basis_size = nullptr) {
  std::vector<Exps> basis;
  for (unsigned g = 0; 6 * g <= w && g <= k; ++g)
    for (unsigned d = 0; 6 * g + 3 * d <= w && g + d <= k; ++d)
      for (unsigned e = 0; 6 * g + 3 * (d + e) <= w && g + d + e <= k; ++e) {
        unsigned f = k - g - d - e;
        if (6 * g + 3 * (d + e + f) > w) continue;
        unsigned rest = w - 6 * g - 3 * (d + e + f);
        for (const auto& xyz : monomials_of_degree(3, rest)) basis.push_back({xyz[0], xyz[1], xyz[2], d, e, f, g});
      }
  if (basis_size) *basis_size = basis.size();
  if (basis.empty()) return 0;
  // Transpose: columns are basis monomials, rows are image monomials.
  std::map<Exps, std::size_t> row_index;
  std::vector<std::vector<std::pair<std::size_t, mpq_class>>> cols;
  for (const auto& m : basis) {
    std::vector<std::pair<std::size_t, mpq_class>> col;
    for (const auto& [r, c] : apply_E(m)) {
      auto it = row_index.emplace(r, row_index.size()).first;
      col.emplace_back(it->second, c);
    }
    cols.push_back(std::move(col));
  }
  const std::size_t nrows = row_index.size();
  std::vector<std::vector<mpq_class>> a(nrows, std::vector<mpq_class>(basis.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, c] : cols[j]) a[i][j] = c;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < basis.size() && rank < nrows; ++col) {
    std::size_t piv = rank;
    while (piv < nrows && a[piv][col] == 0) ++piv;
    if (piv == nrows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < nrows; ++i) {
      if (a[i][col] == 0) continue;
      mpq_class f = a[i][col] / a[rank][col];
      for (std::size_t j = col; j < basis.size(); ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return basis.size() - rank;
}

/// Homogeneous membership: is f (homogeneous of degree d) in the degree-d
/// part of (P) + (gens) + K[subring vars]? All inputs homogeneous.
inline bool homogeneous_membership(const Polynomial& f, const Polynomial& p, const std::vector<Polynomial>& gens,
                                   const std::vector<std::size_t>& subring) {
  const std::size_t n = f.context()->size();
  const auto deg_of = [](const Polynomial& q) { return static_cast<unsigned>(q.total_degree().value()); };
  if (f.is_zero()) return true;
  const unsigned d = deg_of(f);
  std::vector<Dense> rows;
  auto multiples = [&](const Polynomial& g) {
    if (g.is_zero() || deg_of(g) > d) return;
    Dense dg = to_dense(g);
    for (const auto& m : monomials_of_degree(n, d - deg_of(g))) rows.push_back(mul(Dense{{m, 1}}, dg));
  };
  multiples(p);
  for (const auto& g : gens) multiples(g);
  for (const auto& m : monomials_of_degree(n, d)) {
    bool ok = true;
    for (std::size_t v = 0; v < n; ++v)
      if (m[v] && std::find(subring.begin(), subring.end(), v) == subring.end()) ok = false;
    if (ok) rows.push_back(Dense{{m, 1}});
  }
  return in_span(rows, to_dense(f));
}

struct MembershipInstance {
  Polynomial modulus;
  std::vector<Polynomial> gens;
  std::vector<std::size_t> subring;
  Polynomial f;
};

/// Small homogeneous instance over `ctx`; about half are planted members.
inline MembershipInstance random_membership_instance(Rng& rng, const ContextPtr& ctx) {
  const std::size_t n = ctx->size();
  Polynomial p = random_homogeneous(rng, ctx, 3, 2);
  if (p.is_zero()) p = Polynomial::variable(ctx, 0) * Polynomial::variable(ctx, 0) + Polynomial::variable(ctx, n - 1) * Polynomial::variable(ctx, 1);
  std::vector<Polynomial> gens;
  for (int k = rng.uniform(1, 2); k > 0; --k) {
    auto g = random_homogeneous(rng, ctx, 2, static_cast<unsigned>(rng.uniform(1, 2)));
    if (!g.is_zero()) gens.push_back(g);
  }
  std::vector<std::size_t> sub;
  for (std::size_t v = 0; v < n; ++v)
    if (rng.coin()) sub.push_back(v);
  const unsigned d = static_cast<unsigned>(rng.uniform(2, 3));
  Polynomial f = random_homogeneous(rng, ctx, 4, d);
  if (rng.coin() && !gens.empty()) {
    f = random_homogeneous(rng, ctx, 2, d - static_cast<unsigned>(gens[0].total_degree().value())) * gens[0];
    f += random_homogeneous(rng, ctx, 2, d - 2) * p;
    if (!sub.empty()) f += lndlab::pow(Polynomial::variable(ctx, sub[0]), d);
  }
  return {p, gens, sub, f};
}

// Univariate integer polynomials, coefficients low to high.
using IntPoly = std::vector<mpz_class>;

inline void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Exact division test of a by b over Q.
inline bool divides(const IntPoly& b, IntPoly a) {
  std::vector<mpq_class> r(a.begin(), a.end());
  const std::size_t db = b.size() - 1;
  while (r.size() > db) {
    mpq_class f = r.back() / b.back();
    const std::size_t shift = r.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) r[shift + i] -= f * b[i];
    r.pop_back();
  }
  return std::all_of(r.begin(), r.end(), [](const mpq_class& c) { return c == 0; });
}

inline std::vector<mpz_class> signed_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  for (mpz_class k = 1; k <= n; ++k)
    if (n % k == 0) {
      out.push_back(k);
      out.push_back(-k);
    }
  return out;
}

/// Searches integer factors of degree 1 and 2 (enough to decide
/// reducibility up to degree 5 over Q by Gauss's lemma).
inline bool has_small_factor(IntPoly a) {
  trim(a);
  const std::size_t deg = a.size() - 1;
  if (deg <= 1) return false;
  if (a[0] == 0) return true;
  mpz_class norm = 0;
  for (const auto& c : a) norm += abs(c);
  for (const auto& q : signed_divisors(a.back()))
    for (const auto& p : signed_divisors(a[0]))
      if (divides({-p, q}, a)) return true;
  if (deg < 4) return false;
  const mpz_class bound = 2 * norm;
  for (const auto& lead : signed_divisors(a.back()))
    for (const auto& c0 : signed_divisors(a[0]))
      for (mpz_class b = -bound; b <= bound; ++b)
        if (divides({c0, b, lead}, a)) return true;
  return false;
}

}  // namespace oracle
