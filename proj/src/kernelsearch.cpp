#include "lndlab/kernelsearch.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "lndlab/errors.hpp"
#include "lndlab/linalg.hpp"

namespace lndlab {

KernelGrading section4_grading(const ContextPtr& ctx) {
  std::vector<std::uint32_t> w = ctx->weights();
  if (w.empty()) w = {1, 1, 1, 3, 3, 3, 6};
  std::vector<std::size_t> fibers = {ctx->require("S"), ctx->require("T"), ctx->require("U"), ctx->require("V")};
  auto order = MonomialOrder::lex_by_names(*ctx, {"V", "U", "T", "S", "X", "Y", "Z"});
  return {ctx, std::move(w), std::move(fibers), std::move(order)};
}

GradedSlice graded_basis(const KernelGrading& g, std::uint64_t weight, unsigned fiber_degree) {
  const std::size_t n = g.ctx->size();
  std::vector<bool> is_fiber(n, false);
  for (auto v : g.fiber_vars) is_fiber[v] = true;

  GradedSlice out{weight, fiber_degree, {}};
  Monomial m(n);
  auto rec = [&](auto&& self, std::size_t v, std::uint64_t w_left, unsigned f_left) -> void {
    if (v == n) {
      if (w_left == 0 && f_left == 0) out.basis.push_back(m);
      return;
    }
    const std::uint64_t wv = g.weights[v];
    for (std::uint64_t e = 0; e * wv <= w_left; ++e) {
      if (is_fiber[v] && e > f_left) break;
      m[v] = static_cast<Monomial::Exponent>(e);
      self(self, v + 1, w_left - e * wv, is_fiber[v] ? f_left - static_cast<unsigned>(e) : f_left);
    }
    m[v] = 0;
  };
  rec(rec, 0, weight, fiber_degree);
  std::sort(out.basis.begin(), out.basis.end(),
            [&](const Monomial& a, const Monomial& b) { return g.order.less(b, a); });
  return out;
}

namespace {

struct Block {
  std::vector<std::size_t> columns;  // indices into the slice basis, ascending = descending order
  std::vector<Monomial> rows;
};

/// Images of each basis monomial and the partition of the basis into
/// blocks that share no image monomials.
struct SliceSystem {
  std::vector<Polynomial> images;
  std::vector<Block> blocks;
};

SliceSystem build_system(const Derivation& e, const KernelGrading& g, const GradedSlice& slice) {
  SliceSystem sys;
  const std::size_t ncols = slice.basis.size();
  std::vector<std::size_t> parent(ncols);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::unordered_map<Monomial, std::size_t, MonomialHash> first_col;
  for (std::size_t j = 0; j < ncols; ++j) {
    sys.images.push_back(e(Polynomial::monomial(g.ctx, slice.basis[j])));
    for (const auto& t : sys.images.back().terms()) {
      auto [it, fresh] = first_col.emplace(t.mono, j);
      if (!fresh) parent[find(j)] = find(it->second);
    }
  }
  std::map<std::size_t, std::size_t> block_of_root;
  for (std::size_t j = 0; j < ncols; ++j) {
    auto root = find(j);
    auto [it, fresh] = block_of_root.emplace(root, sys.blocks.size());
    if (fresh) sys.blocks.emplace_back();
    sys.blocks[it->second].columns.push_back(j);
  }
  for (auto& b : sys.blocks) {
    std::unordered_set<Monomial, MonomialHash> seen;
    for (auto j : b.columns)
      for (const auto& t : sys.images[j].terms())
        if (seen.insert(t.mono).second) b.rows.push_back(t.mono);
    std::sort(b.rows.begin(), b.rows.end(), [&](const Monomial& x, const Monomial& y) { return g.order.less(y, x); });
  }
  return sys;
}

/// Reduced echelon kernel basis of one block, as coefficient vectors over
/// the block's columns.
std::vector<linalg::RationalVector> block_kernel(const SliceSystem& sys, const Block& b) {
  const std::size_t ncols = b.columns.size();
  if (b.rows.empty()) {
    std::vector<linalg::RationalVector> unit;
    for (std::size_t j = 0; j < ncols; ++j) {
      linalg::RationalVector v(ncols, 0);
      v[j] = 1;
      unit.push_back(std::move(v));
    }
    return unit;
  }
  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  for (std::size_t i = 0; i < b.rows.size(); ++i) row_of.emplace(b.rows[i], i);

  std::vector<std::vector<Rational>> q(b.rows.size(), std::vector<Rational>(ncols, 0));
  for (std::size_t j = 0; j < ncols; ++j)
    for (const auto& t : sys.images[b.columns[j]].terms()) q[row_of.at(t.mono)][j] = t.coef;

  // Clearing denominators row by row leaves the nullspace unchanged.
  linalg::IntMatrix m(b.rows.size(), std::vector<Integer>(ncols));
  for (std::size_t i = 0; i < q.size(); ++i) {
    Integer den = 1;
    for (const auto& c : q[i]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    for (std::size_t j = 0; j < ncols; ++j) {
      Rational s = q[i][j] * den;
      m[i][j] = s.get_num();
    }
  }
  return linalg::reduced_row_echelon(linalg::nullspace(m, ncols));
}

Polynomial vector_to_poly(const KernelGrading& g, const GradedSlice& slice, const Block& b,
                          const linalg::RationalVector& v) {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (sgn(v[j]) != 0) terms.push_back({slice.basis[b.columns[j]], v[j]});
  return Polynomial::from_terms(g.ctx, std::move(terms));
}

KernelElement make_element(const Derivation& e, const KernelGrading& g, const GradedSlice& slice, Polynomial f) {
  const bool ok = e(f).is_zero();
  Monomial lead = leading_term(f, g.order).mono;
  return KernelElement{std::move(f), ok, std::move(lead), slice.weight, slice.fiber_degree, slice.basis.size()};
}

std::size_t nnz(const linalg::RationalVector& v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](const Rational& c) { return sgn(c) != 0; }));
}

}  // namespace

std::vector<KernelElement> kernel_slice(const Derivation& e, const KernelGrading& g, const GradedSlice& slice) {
  if (!same_context(e.context(), g.ctx)) throw ContextMismatch();
  std::vector<KernelElement> out;
  if (slice.basis.empty()) return out;
  auto sys = build_system(e, g, slice);
  for (const auto& b : sys.blocks)
    for (const auto& v : block_kernel(sys, b)) {
      auto el = make_element(e, g, slice, vector_to_poly(g, slice, b, v));
      if (!el.verified) throw Error("internal: kernel vector does not re-verify");
      out.push_back(std::move(el));
    }
  std::sort(out.begin(), out.end(),
            [&](const KernelElement& a, const KernelElement& b) { return g.order.less(b.leading, a.leading); });
  return out;
}

std::size_t kernel_slice_dimension(const Derivation& e, const KernelGrading& g, const GradedSlice& slice) {
  if (slice.basis.empty()) return 0;
  auto sys = build_system(e, g, slice);
  std::size_t dim = 0;
  for (const auto& b : sys.blocks) dim += block_kernel(sys, b).size();
  return dim;
}

KernelElement find_Fn(const Derivation& e, const KernelGrading& g, unsigned n) {
  if (n == 0) throw DomainError("n must be positive");
  const auto& ctx = g.ctx;
  const std::size_t xv = ctx->require("X");
  const std::size_t vv = ctx->require("V");
  Monomial target = Monomial::variable(ctx->size(), xv);
  target[vv] = n;
  const auto weight = target.weighted_degree(g.weights);

  // E is homogeneous in fiber degree, so the fiber-degree-n component of any
  // kernel element with an X·Vⁿ term is itself such a kernel element.
  auto slice = graded_basis(g, weight, n);
  auto sys = build_system(e, g, slice);
  auto pos = std::find(slice.basis.begin(), slice.basis.end(), target);
  if (pos == slice.basis.end()) throw Error("target monomial missing from its slice");
  const std::size_t target_col = static_cast<std::size_t>(pos - slice.basis.begin());

  for (const auto& b : sys.blocks) {
    auto it = std::find(b.columns.begin(), b.columns.end(), target_col);
    if (it == b.columns.end()) continue;
    const std::size_t local = static_cast<std::size_t>(it - b.columns.begin());
    auto basis = block_kernel(sys, b);
    auto row = std::find_if(basis.begin(), basis.end(), [&](const auto& v) {
      auto first = std::find_if(v.begin(), v.end(), [](const Rational& c) { return sgn(c) != 0; });
      return first != v.end() && static_cast<std::size_t>(first - v.begin()) == local;
    });
    if (row == basis.end()) break;

    linalg::RationalVector best = *row;
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto& other : basis) {
        if (&other == &*row) continue;
        for (std::size_t c = 0; c < best.size() && !improved; ++c) {
          if (sgn(best[c]) == 0 || sgn(other[c]) == 0) continue;
          Rational f = best[c] / other[c];
          auto cand = best;
          for (std::size_t j = 0; j < cand.size(); ++j)
            if (sgn(other[j]) != 0) cand[j] -= f * other[j];
          if (nnz(cand) < nnz(best) && sgn(cand[local]) != 0) {
            best = std::move(cand);
            improved = true;
          }
        }
      }
    }
    auto el = make_element(e, g, slice, vector_to_poly(g, slice, b, best));
    if (!el.verified || el.leading != target) throw Error("internal: F_n failed re-verification");
    return el;
  }
  throw Error("no kernel element with leading monomial X*V^" + std::to_string(n) + " in the searched slice");
}

MembershipResult l5_membership(const ExampleRing& ring, const Polynomial& f) {
  const auto& ctx = ring.quotient.ambient();
  std::vector<Polynomial> gens = {ring.element("x"), ring.element("y"), ring.element("z")};
  std::vector<std::size_t> sub = {ctx->require("X"), ctx->require("Y"), ctx->require("Z")};
  return member_ideal_plus_subring(ring.quotient, f, gens, sub);
}

EscapeReport escape_check(const ExampleRing& ring, const KernelGrading& g, unsigned n, const KernelElement& fn,
                          bool adjoin_target) {
  const auto& ctx = ring.quotient.ambient();
  if (!same_context(ctx, g.ctx)) throw ContextMismatch();
  const std::size_t vv = ctx->require("V");
  const std::vector<std::size_t> base = {ctx->require("X"), ctx->require("Y"), ctx->require("Z")};
  Monomial target = Monomial::variable(ctx->size(), ctx->require("X"));
  target[vv] = n;
  if (!fn.verified || fn.leading != target) throw DomainError("F_n must be verified with leading monomial X*V^n");

  EscapeReport rep;
  rep.n = n;
  rep.target = target;
  rep.control = adjoin_target;
  {
    Polynomial rest = fn.polynomial - Polynomial::monomial(ctx, target);
    auto dv = rest.degree_in(vv);
    rep.remainder_in_filtration = dv.is_neg_infinity() || dv.value() < static_cast<std::int64_t>(n);
  }

  // Coordinates not covered by the monomial generators.
  auto uncovered = [&](const Monomial& m) {
    std::uint64_t b = 0;
    for (auto v : base) b += m[v];
    return m[vv] >= n && b <= 1;
  };
  auto project = [&](const Polynomial& p) {
    std::vector<Term> kept;
    for (const auto& t : p.terms())
      if (uncovered(t.mono)) kept.push_back(t);
    return Polynomial::from_terms(ctx, std::move(kept));
  };

  linalg::SparseSpan span(g.order, 0);
  std::unordered_set<Monomial, MonomialHash> coords;
  const auto target_weight = target.weighted_degree(g.weights);
  const Polynomial& modulus = ring.quotient.modulus();

  // All multipliers of weight ≤ wt(X·Vⁿ).
  Monomial m(ctx->size());
  auto rec = [&](auto&& self, std::size_t v, std::uint64_t left) -> void {
    if (v == m.size()) {
      auto proj = project(modulus.scaled(m, 1));
      for (const auto& t : proj.terms()) coords.insert(t.mono);
      span.insert(std::move(proj), {});
      ++rep.modulus_multiples;
      return;
    }
    for (std::uint64_t e = 0; e * g.weights[v] <= left; ++e) {
      m[v] = static_cast<Monomial::Exponent>(e);
      self(self, v + 1, left - e * g.weights[v]);
    }
    m[v] = 0;
  };
  rec(rec, 0, target_weight);

  auto target_poly = Polynomial::monomial(ctx, target);
  if (adjoin_target) span.insert(project(target_poly), {});
  coords.insert(target);
  rep.uncovered_coordinates = coords.size();
  rep.span_rank = span.rank();
  rep.member = span.reduce(project(target_poly), ctx).member;
  rep.augmented_rank = rep.span_rank + (rep.member ? 0 : 1);
  return rep;
}

}  // namespace lndlab
