#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lndlab/derivation.hpp"
#include "lndlab/monomial_order.hpp"
#include "lndlab/polynomial.hpp"
#include "lndlab/quotient.hpp"
#include "lndlab/rigidity.hpp"

namespace lndlab {

/// Grading used for the kernel search: variable weights under which the
/// derivation is weight-preserving, the "fiber" variables whose total
/// degree the derivation lowers by one, and the order that decides leading
/// monomials.
struct KernelGrading {
  ContextPtr ctx;
  std::vector<std::uint32_t> weights;
  std::vector<std::size_t> fiber_vars;
  MonomialOrder order;
};

/// Weights (1,1,1,3,3,3,6), fibers S,T,U,V and lex V > U > T > S > X > Y > Z
/// over the ring built by build_section4.
KernelGrading section4_grading(const ContextPtr& ctx);

struct GradedSlice {
  std::uint64_t weight = 0;
  unsigned fiber_degree = 0;
  std::vector<Monomial> basis;  // descending under the grading's order
};

GradedSlice graded_basis(const KernelGrading& g, std::uint64_t weight, unsigned fiber_degree);

struct KernelElement {
  Polynomial polynomial;
  bool verified = false;  // E(polynomial) re-applied and found to be 0
  Monomial leading;
  std::uint64_t weight = 0;
  unsigned fiber_degree = 0;
  std::size_t basis_size = 0;
};

/// Basis of the kernel of E on one graded slice, in reduced row echelon
/// form (distinct leading monomials, each with coefficient 1). The linear
/// map splits into independent blocks of monomials linked through shared
/// image monomials; each block is solved by fraction-free elimination.
std::vector<KernelElement> kernel_slice(const Derivation& e, const KernelGrading& g, const GradedSlice& slice);

/// Nullspace dimension of E on the slice, from the same block solve.
std::size_t kernel_slice_dimension(const Derivation& e, const KernelGrading& g, const GradedSlice& slice);

/// Kernel element X·Vⁿ + fₙ with fₙ of V-degree < n, normalized so that X·Vⁿ
/// has coefficient 1. Among the solutions, starts from the echelon
/// representative and greedily subtracts other kernel vectors while that
/// strictly lowers the term count.
KernelElement find_Fn(const Derivation& e, const KernelGrading& g, unsigned n);

/// Decomposition of F as (x,y,z)A + C[x,y,z] in the ring of build_section4.
MembershipResult l5_membership(const ExampleRing& ring, const Polynomial& f);

struct EscapeReport {
  unsigned n = 0;
  Monomial target;
  bool member = false;            // target lies in the span
  bool control = false;           // target was adjoined to the span on purpose
  bool remainder_in_filtration = false;  // Fₙ − X·Vⁿ has V-degree < n
  std::size_t modulus_multiples = 0;
  std::size_t uncovered_coordinates = 0;
  std::size_t span_rank = 0;
  std::size_t augmented_rank = 0;
  bool escapes() const { return !member; }
};

/// Decides whether X·Vⁿ lies in the span of (i) monomials of V-degree < n,
/// (ii) monomials in (X,Y,Z)², and (iii) m·P for monomials m of weight at
/// most that of X·Vⁿ. The monomial generators span coordinate subspaces, so
/// the test reduces to exact rank over the remaining coordinates. With
/// `adjoin_target` the target itself joins the span (a control that must
/// report membership).
EscapeReport escape_check(const ExampleRing& ring, const KernelGrading& g, unsigned n, const KernelElement& fn,
                          bool adjoin_target = false);

}  // namespace lndlab
