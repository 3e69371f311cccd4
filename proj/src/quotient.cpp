#include "lndlab/quotient.hpp"

#include <json.hpp>

#include "lndlab/errors.hpp"
#include "lndlab/linalg.hpp"
#include "lndlab/parse.hpp"

namespace lndlab {

QuotientRing::QuotientRing(Polynomial modulus, MonomialOrder order)
    : modulus_(std::move(modulus)), order_(std::move(order)), lead_{} {
  if (modulus_.is_zero()) throw DomainError("modulus must be nonzero");
  if (modulus_.is_constant()) throw DomainError("modulus must not be a unit");
  if (order_.priority().size() != modulus_.context()->size())
    throw DomainError("monomial order does not match the ambient context");
  lead_ = leading_term(modulus_, order_);
}

QuotientRing parse_quotient_description(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid quotient description: ") + e.what(), e.byte);
  }
  if (!j.contains("variables") || !j.contains("modulus"))
    throw DomainError("quotient description needs 'variables' and 'modulus'");
  auto names = j.at("variables").get<std::vector<std::string>>();
  std::vector<std::uint32_t> weights;
  if (j.contains("weights") && !j.at("weights").is_null())
    weights = j.at("weights").get<std::vector<std::uint32_t>>();
  auto ctx = RingContext::make(names, weights);
  std::string order_name = j.value("order", "lex");
  auto modulus = parse_poly(j.at("modulus").get<std::string>(), ctx);
  if (order_name == "lex") return {modulus, MonomialOrder::lex(ctx->size())};
  if (order_name == "wgrlex") {
    std::vector<std::uint32_t> w = weights.empty() ? std::vector<std::uint32_t>(ctx->size(), 1) : weights;
    return {modulus, MonomialOrder::weighted_graded_lex(w)};
  }
  throw DomainError("unknown monomial order '" + order_name + "'");
}

Polynomial normal_form(const QuotientRing& q, const Polynomial& f) {
  if (!same_context(f.context(), q.ambient())) throw ContextMismatch();
  const Monomial& lead = q.modulus_lead().mono;
  bool reducible = false;
  for (const auto& t : f.terms())
    if (lead.divides(t.mono)) {
      reducible = true;
      break;
    }
  if (!reducible) return f;
  return divide(f, q.modulus(), q.order()).remainder;
}

bool is_zero_in_quotient(const QuotientRing& q, const Polynomial& f) { return normal_form(q, f).is_zero(); }

bool induces_derivation(const QuotientRing& q, const Derivation& d) {
  if (!same_context(d.context(), q.ambient())) throw ContextMismatch();
  return is_zero_in_quotient(q, d(q.modulus()));
}

namespace {

/// All monomials in `vars` (others zero) of total degree ≤ bound.
std::vector<Monomial> monomials_up_to(std::size_t nvars, const std::vector<std::size_t>& vars,
                                      std::size_t bound) {
  std::vector<Monomial> out;
  Monomial m(nvars);
  auto rec = [&](auto&& self, std::size_t k, std::size_t left) -> void {
    if (k == vars.size()) {
      out.push_back(m);
      return;
    }
    for (std::size_t e = 0; e <= left; ++e) {
      m[vars[k]] = static_cast<Monomial::Exponent>(e);
      self(self, k + 1, left - e);
    }
    m[vars[k]] = 0;
  };
  rec(rec, 0, bound);
  return out;
}

}  // namespace

MembershipResult member_ideal_plus_subring(const QuotientRing& q, const Polynomial& f,
                                           const std::vector<Polynomial>& ideal_gens,
                                           const std::vector<std::size_t>& subring_vars) {
  const auto& ctx = q.ambient();
  if (!same_context(f.context(), ctx)) throw ContextMismatch();
  for (const auto& g : ideal_gens)
    if (!same_context(g.context(), ctx)) throw ContextMismatch();
  for (auto v : subring_vars)
    if (v >= ctx->size()) throw DomainError("subring variable out of range");

  MembershipResult out;
  Polynomial target = normal_form(q, f);
  if (target.is_zero()) {
    out.member = true;
    out.ideal_part = Polynomial(ctx);
    out.subring_part = Polynomial(ctx);
    return out;
  }
  const auto bound = static_cast<std::size_t>(std::max(f.total_degree(), target.total_degree()).value());
  out.degree_bound = bound;

  linalg::SparseSpan span(q.order(), 2);
  const Polynomial zero(ctx);
  for (const auto& m : monomials_up_to(ctx->size(), subring_vars, bound)) {
    auto r = Polynomial::monomial(ctx, m);
    span.insert(normal_form(q, r), {zero, r});
    ++out.generators;
  }
  std::vector<std::size_t> all(ctx->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  for (const auto& g : ideal_gens) {
    if (g.is_zero()) continue;
    const auto gdeg = static_cast<std::size_t>(g.total_degree().value());
    if (gdeg > bound) continue;
    for (const auto& m : monomials_up_to(ctx->size(), all, bound - gdeg)) {
      auto mg = g.scaled(m, 1);
      span.insert(normal_form(q, mg), {mg, zero});
      ++out.generators;
    }
  }
  out.rank = span.rank();

  auto red = span.reduce(target, ctx);
  if (!red.member) return out;
  out.member = true;
  out.ideal_part = red.tags[0];
  out.subring_part = red.tags[1];
  if (!is_zero_in_quotient(q, f - *out.ideal_part - *out.subring_part))
    throw DomainError("internal: membership witness does not verify");
  return out;
}

std::string to_string(IrreducibilityStatus s) {
  switch (s) {
    case IrreducibilityStatus::irreducible_certified: return "irreducible-certified";
    case IrreducibilityStatus::reducible: return "reducible";
    case IrreducibilityStatus::unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace lndlab
