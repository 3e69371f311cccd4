#include "lndlab/linalg.hpp"

#include "lndlab/errors.hpp"

namespace lndlab::linalg {

EchelonForm bareiss_echelon(IntMatrix m, std::size_t ncols) {
  const std::size_t nrows = m.size();
  for (const auto& row : m)
    if (row.size() != ncols) throw DomainError("ragged matrix");

  EchelonForm out;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    std::size_t piv = r;
    while (piv < nrows && m[piv][c] == 0) ++piv;
    if (piv == nrows) continue;
    if (piv != r) std::swap(m[piv], m[r]);
    const Integer& p = m[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      if (m[i][c] == 0) {
        // Row still needs the p/prev rescaling to keep entries as minors.
        for (std::size_t j = c + 1; j < ncols; ++j)
          if (m[i][j] != 0) {
            m[i][j] *= p;
            mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
          }
        continue;
      }
      for (std::size_t j = c + 1; j < ncols; ++j) {
        Integer v = p * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(v);
      }
      m[i][c] = 0;
    }
    prev = p;
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rows = std::move(m);
  return out;
}

std::vector<RationalVector> nullspace(const IntMatrix& m, std::size_t ncols) {
  auto ech = bareiss_echelon(m, ncols);
  const std::size_t rank = ech.rank();
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector x(ncols, 0);
    x[f] = 1;
    for (std::size_t i = rank; i-- > 0;) {
      const std::size_t pc = ech.pivot_cols[i];
      Rational acc = 0;
      for (std::size_t j = pc + 1; j < ncols; ++j)
        if (sgn(x[j]) != 0 && ech.rows[i][j] != 0) acc += Rational(ech.rows[i][j]) * x[j];
      x[pc] = -acc / Rational(ech.rows[i][pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<RationalVector> reduced_row_echelon(std::vector<RationalVector> v) {
  if (v.empty()) return v;
  const std::size_t ncols = v.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < v.size(); ++c) {
    std::size_t piv = r;
    while (piv < v.size() && sgn(v[piv][c]) == 0) ++piv;
    if (piv == v.size()) continue;
    std::swap(v[piv], v[r]);
    Rational inv = Rational(1) / v[r][c];
    for (auto& e : v[r]) e *= inv;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i == r || sgn(v[i][c]) == 0) continue;
      Rational f = v[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (sgn(v[r][j]) != 0) v[i][j] -= f * v[r][j];
    }
    ++r;
  }
  v.resize(r);
  return v;
}

SparseSpan::SparseSpan(MonomialOrder order, std::size_t ntags) : order_(std::move(order)), ntags_(ntags) {}

bool SparseSpan::insert(Polynomial v, std::vector<Polynomial> tags) {
  if (tags.size() != ntags_) throw DomainError("tag count mismatch");
  while (!v.is_zero()) {
    Term lead = leading_term(v, order_);
    auto it = by_lead_.find(lead.mono);
    if (it == by_lead_.end()) {
      by_lead_.emplace(lead.mono, basis_.size());
      basis_.push_back({std::move(v), std::move(lead), std::move(tags)});
      return true;
    }
    const Entry& b = basis_[it->second];
    Rational c = lead.coef / b.lead.coef;
    v -= b.value * c;
    for (std::size_t k = 0; k < ntags_; ++k) tags[k] -= b.tags[k] * c;
  }
  return false;
}

SparseSpan::Reduction SparseSpan::reduce(const Polynomial& v, const ContextPtr& tag_ctx) const {
  Reduction out{false, v, std::vector<Polynomial>(ntags_, Polynomial(tag_ctx))};
  while (!out.residual.is_zero()) {
    Term lead = leading_term(out.residual, order_);
    auto it = by_lead_.find(lead.mono);
    if (it == by_lead_.end()) return out;
    const Entry& b = basis_[it->second];
    Rational c = lead.coef / b.lead.coef;
    out.residual -= b.value * c;
    for (std::size_t k = 0; k < ntags_; ++k) out.tags[k] += b.tags[k] * c;
  }
  out.member = true;
  return out;
}

}  // namespace lndlab::linalg
