#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lndlab/polynomial.hpp"

namespace lndlab {

/// A derivation of a polynomial ring, determined by the image of each
/// variable. Application extends by the Leibniz rule: D(f) = Σ ∂f/∂v · D(v).
class Derivation {
 public:
  Derivation(ContextPtr ctx, std::vector<Polynomial> images);

  static Derivation zero(ContextPtr ctx);
  /// ∂/∂var.
  static Derivation partial(ContextPtr ctx, std::string_view var);
  /// Variables absent from `images` are sent to 0.
  static Derivation from_images(ContextPtr ctx, const std::map<std::string, Polynomial>& images);

  const ContextPtr& context() const noexcept { return ctx_; }
  const Polynomial& image(std::size_t var) const { return images_.at(var); }
  const std::vector<Polynomial>& images() const noexcept { return images_; }
  bool is_zero() const;

  Polynomial operator()(const Polynomial& f) const;

 private:
  ContextPtr ctx_;
  std::vector<Polynomial> images_;
};

/// Reads the `<var> -> <polynomial>` line format ('#' starts a comment).
Derivation parse_derivation(std::string_view text, const ContextPtr& ctx);
/// Variables named in a derivation file: left-hand sides in order of
/// appearance, then any further identifiers from the right-hand sides.
std::vector<std::string> derivation_file_variables(std::string_view text);

Polynomial apply(const Derivation& d, const Polynomial& f);
/// D applied n times.
Polynomial iterate(const Derivation& d, const Polynomial& f, unsigned n);

enum class NilpotencyStatus { certified_nilpotent, vanished_within_bound, unknown };
enum class CertificateKind { triangular, iterated };

std::string to_string(NilpotencyStatus s);
std::string to_string(CertificateKind k);

struct NilpotencyResult {
  NilpotencyStatus status = NilpotencyStatus::unknown;
  /// Smallest n ≥ 1 with Dⁿ(f) = 0, when found (nilpotency_order only).
  std::optional<unsigned> order;
  /// Smallest n ≥ 1 with Dⁿ(v) = 0 for each variable v (triangular case).
  std::map<std::string, unsigned> variable_orders;
  std::optional<CertificateKind> kind;
  /// Variable indices such that each image involves only earlier entries.
  std::vector<std::size_t> triangular_order;
  /// Weights w(v) = 0 if D(v) = 0, else 1 + the largest w-degree of a term
  /// of D(v). D lowers w-degree by at least one, so D^{w(f)+1}(f) = 0.
  std::vector<std::uint64_t> level_weights;
};

/// Certified-nilpotent iff the variables admit an order in which every image
/// involves only strictly earlier variables; unknown otherwise.
NilpotencyResult certify_triangular(const Derivation& d);

/// Upper bound on the nilpotency order of f, available for triangular D.
std::optional<std::uint64_t> nilpotency_bound(const Derivation& d, const Polynomial& f);

/// Smallest n with Dⁿ(f) = 0. Triangular derivations use the certified bound
/// and ignore max_order; otherwise iteration stops after max_order steps.
NilpotencyResult nilpotency_order(const Derivation& d, const Polynomial& f, unsigned max_order);

/// exp(tD)(f) = Σ tⁱ/i! · Dⁱ(f) over the context extended by the fresh
/// variable `t`. Throws DomainError when nilpotency on f cannot be
/// established within max_order steps.
Polynomial exp_action(const Derivation& d, const Polynomial& f, const std::string& t = "t",
                      unsigned max_order = 64);

/// p with D²(p) = 0, D(p) ≠ 0 and q = D(p), so that s = p/q is a slice of D
/// extended to A[1/q].
struct SliceData {
  Polynomial p;
  Polynomial q;
};

/// Scans variables in context order, then monomials of increasing total
/// degree up to `search_degree_bound`, returning the first p with D²(p) = 0
/// and D(p) ≠ 0.
SliceData find_local_slice(const Derivation& d, unsigned search_degree_bound);

/// numerator / qᵏ in A[1/q].
struct LocalizedElement {
  Polynomial numerator;
  unsigned denominator_exponent = 0;
  Polynomial q;
};

/// Derivative of a localized element (q must be in the kernel of D); the
/// result keeps the same denominator.
LocalizedElement apply_localized(const Derivation& d, const LocalizedElement& x);

/// exp(−sD)(f) with s = p/q, computed in A[1/q]. The result lies in the
/// kernel of the extension of D. Common factors of q are divided out of the
/// numerator.
LocalizedElement dixmier_project(const Derivation& d, const SliceData& slice, const Polynomial& f,
                                 unsigned max_order = 64);

}  // namespace lndlab
