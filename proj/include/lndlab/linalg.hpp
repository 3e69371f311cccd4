#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "lndlab/monomial_order.hpp"
#include "lndlab/polynomial.hpp"

namespace lndlab::linalg {

using IntMatrix = std::vector<std::vector<Integer>>;
using RationalVector = std::vector<Rational>;

/// Row echelon form produced by fraction-free (Bareiss) elimination.
struct EchelonForm {
  IntMatrix rows;                       // first `rank` rows are the nonzero rows
  std::vector<std::size_t> pivot_cols;  // pivot column of each nonzero row
  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

/// Fraction-free elimination: every intermediate entry is a minor of the
/// input, and each division is exact.
EchelonForm bareiss_echelon(IntMatrix m, std::size_t ncols);

/// Basis of {x : m·x = 0}, one vector per non-pivot column, with that
/// column's entry equal to 1 and the other free entries 0.
std::vector<RationalVector> nullspace(const IntMatrix& m, std::size_t ncols);

/// Reduced row echelon form of the span of `vectors` (pivot entries 1,
/// zeros elsewhere in pivot columns). Zero rows are dropped.
std::vector<RationalVector> reduced_row_echelon(std::vector<RationalVector> vectors);

/// Incrementally maintained echelon basis of a space of polynomials, keyed by
/// leading monomial under a fixed order. Each basis vector carries `tags`,
/// a fixed-length list of polynomials that transform linearly alongside it,
/// which lets callers recover how a member decomposes over the inserted
/// generators.
class SparseSpan {
 public:
  SparseSpan(MonomialOrder order, std::size_t ntags);

  /// Adds v (with its tags) to the span; returns true if the rank grew.
  bool insert(Polynomial v, std::vector<Polynomial> tags);

  struct Reduction {
    bool member = false;
    Polynomial residual;
    /// Σ cᵢ·tagsᵢ for the combination v = Σ cᵢ·basisᵢ (meaningful when member).
    std::vector<Polynomial> tags;
  };
  Reduction reduce(const Polynomial& v, const ContextPtr& tag_ctx) const;

  std::size_t rank() const noexcept { return basis_.size(); }

 private:
  struct Entry {
    Polynomial value;
    Term lead;
    std::vector<Polynomial> tags;
  };

  MonomialOrder order_;
  std::size_t ntags_;
  std::vector<Entry> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> by_lead_;
};

}  // namespace lndlab::linalg
