#include "lndlab/derivation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "lndlab/errors.hpp"
#include "lndlab/parse.hpp"

namespace lndlab {

Derivation::Derivation(ContextPtr ctx, std::vector<Polynomial> images)
    : ctx_(std::move(ctx)), images_(std::move(images)) {
  if (images_.size() != ctx_->size()) throw DomainError("derivation needs one image per variable");
  for (const auto& img : images_)
    if (!same_context(img.context(), ctx_)) throw ContextMismatch();
}

Derivation Derivation::zero(ContextPtr ctx) {
  std::vector<Polynomial> images(ctx->size(), Polynomial(ctx));
  return {std::move(ctx), std::move(images)};
}

Derivation Derivation::partial(ContextPtr ctx, std::string_view var) {
  std::vector<Polynomial> images(ctx->size(), Polynomial(ctx));
  images[ctx->require(var)] = Polynomial::constant(ctx, 1);
  return {std::move(ctx), std::move(images)};
}

Derivation Derivation::from_images(ContextPtr ctx, const std::map<std::string, Polynomial>& images) {
  std::vector<Polynomial> all(ctx->size(), Polynomial(ctx));
  for (const auto& [name, img] : images) all[ctx->require(name)] = img;
  return {std::move(ctx), std::move(all)};
}

bool Derivation::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Polynomial Derivation::operator()(const Polynomial& f) const {
  if (!same_context(f.context(), ctx_)) throw ContextMismatch();
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  for (const auto& t : f.terms()) {
    for (std::size_t v = 0; v < ctx_->size(); ++v) {
      if (t.mono[v] == 0 || images_[v].is_zero()) continue;
      Monomial rest = t.mono;
      rest[v] -= 1;
      Rational c = t.coef * t.mono[v];
      for (const auto& it : images_[v].terms()) acc[rest * it.mono] += c * it.coef;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) terms.push_back({m, std::move(c)});
  return Polynomial::from_terms(ctx_, std::move(terms));
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct RawLine {
  std::string lhs;
  std::string rhs;
  std::size_t offset;  // byte offset of the line start
};

std::vector<RawLine> split_lines(std::string_view text) {
  std::vector<RawLine> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!trim(line).empty()) {
      auto arrow = line.find("->");
      if (arrow == std::string_view::npos) throw ParseError("expected '<var> -> <polynomial>'", start);
      out.push_back({trim(line.substr(0, arrow)), trim(line.substr(arrow + 2)), start});
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

std::vector<std::string> derivation_file_variables(std::string_view text) {
  std::vector<std::string> names;
  auto add = [&](const std::string& n) {
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  };
  auto lines = split_lines(text);
  for (const auto& l : lines) add(l.lhs);
  for (const auto& l : lines) {
    const auto& r = l.rhs;
    for (std::size_t i = 0; i < r.size();) {
      if (std::isalpha(static_cast<unsigned char>(r[i]))) {
        auto j = i;
        while (j < r.size() && (std::isalnum(static_cast<unsigned char>(r[j])) || r[j] == '_')) ++j;
        add(r.substr(i, j - i));
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(r[i]))) {
        while (i < r.size() && std::isdigit(static_cast<unsigned char>(r[i]))) ++i;
      } else {
        ++i;
      }
    }
  }
  return names;
}

Derivation parse_derivation(std::string_view text, const ContextPtr& ctx) {
  std::map<std::string, Polynomial> images;
  for (const auto& line : split_lines(text)) {
    ctx->require(line.lhs);
    if (images.count(line.lhs)) throw ParseError("duplicate image for '" + line.lhs + "'", line.offset);
    try {
      images.emplace(line.lhs, parse_poly(line.rhs, ctx));
    } catch (const ParseError& e) {
      throw ParseError("in image of '" + line.lhs + "': " + e.what(), line.offset);
    }
  }
  return Derivation::from_images(ctx, images);
}

Polynomial apply(const Derivation& d, const Polynomial& f) { return d(f); }

Polynomial iterate(const Derivation& d, const Polynomial& f, unsigned n) {
  Polynomial g = f;
  for (unsigned i = 0; i < n && !g.is_zero(); ++i) g = d(g);
  return g;
}

std::string to_string(NilpotencyStatus s) {
  switch (s) {
    case NilpotencyStatus::certified_nilpotent: return "certified-nilpotent";
    case NilpotencyStatus::vanished_within_bound: return "vanished-within-bound";
    case NilpotencyStatus::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(CertificateKind k) {
  return k == CertificateKind::triangular ? "triangular" : "iterated";
}

namespace {

unsigned smallest_vanishing_order(const Derivation& d, const Polynomial& f, std::uint64_t limit,
                                  bool* found) {
  Polynomial g = f;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    g = d(g);
    if (g.is_zero()) {
      *found = true;
      return static_cast<unsigned>(n);
    }
  }
  *found = false;
  return 0;
}

std::uint64_t weighted_term_degree(const Monomial& m, const std::vector<std::uint64_t>& w) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += std::uint64_t(m[i]) * w[i];
  return s;
}

}  // namespace

NilpotencyResult certify_triangular(const Derivation& d) {
  const auto& ctx = d.context();
  const std::size_t n = ctx->size();
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> order;
  std::vector<std::uint64_t> weights(n, 0);

  // Repeatedly place the first unplaced variable whose image only involves
  // placed variables.
  while (order.size() < n) {
    bool progress = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (placed[v]) continue;
      const auto& img = d.image(v);
      bool ready = true;
      for (auto u : img.variables_used())
        if (!placed[u]) ready = false;
      if (!ready) continue;
      placed[v] = true;
      order.push_back(v);
      if (!img.is_zero()) {
        std::uint64_t top = 0;
        for (const auto& t : img.terms()) top = std::max(top, weighted_term_degree(t.mono, weights));
        weights[v] = top + 1;
      }
      progress = true;
    }
    if (!progress) return {};
  }

  NilpotencyResult r;
  r.status = NilpotencyStatus::certified_nilpotent;
  r.kind = CertificateKind::triangular;
  r.triangular_order = std::move(order);
  r.level_weights = weights;
  for (std::size_t v = 0; v < n; ++v) {
    bool found = false;
    auto x = Polynomial::variable(ctx, v);
    unsigned k = smallest_vanishing_order(d, x, weights[v] + 1, &found);
    if (!found) throw DomainError("internal: triangular bound violated");
    r.variable_orders[ctx->name(v)] = k;
  }
  return r;
}

std::optional<std::uint64_t> nilpotency_bound(const Derivation& d, const Polynomial& f) {
  auto cert = certify_triangular(d);
  if (cert.status != NilpotencyStatus::certified_nilpotent) return std::nullopt;
  std::uint64_t top = 0;
  for (const auto& t : f.terms()) top = std::max(top, weighted_term_degree(t.mono, cert.level_weights));
  return top + 1;
}

NilpotencyResult nilpotency_order(const Derivation& d, const Polynomial& f, unsigned max_order) {
  if (max_order == 0) throw DomainError("max_order must be positive");
  auto cert = certify_triangular(d);
  bool found = false;
  if (cert.status == NilpotencyStatus::certified_nilpotent) {
    auto bound = *nilpotency_bound(d, f);
    cert.order = smallest_vanishing_order(d, f, bound, &found);
    if (!found) throw DomainError("internal: triangular bound violated");
    return cert;
  }
  NilpotencyResult r;
  unsigned k = smallest_vanishing_order(d, f, max_order, &found);
  if (found) {
    r.status = NilpotencyStatus::vanished_within_bound;
    r.kind = CertificateKind::iterated;
    r.order = k;
  }
  return r;
}

Polynomial exp_action(const Derivation& d, const Polynomial& f, const std::string& t, unsigned max_order) {
  const auto& ctx = d.context();
  if (ctx->index_of(t)) throw DomainError("parameter '" + t + "' is not a fresh variable");
  auto res = nilpotency_order(d, f, max_order);
  if (!res.order) throw DomainError("nilpotency of D on the argument is not established");
  auto ext = ctx->extended(t);
  const std::size_t tv = ext->size() - 1;

  Polynomial sum(ext);
  Polynomial power = f;
  Rational factorial = 1;
  for (unsigned i = 0; i < *res.order; ++i) {
    if (i > 0) {
      power = d(power);
      factorial *= i;
    }
    auto lifted = embed(power, ext);
    sum += lifted.scaled(Monomial::variable(ext->size(), tv, i), Rational(1) / factorial);
  }
  return sum;
}

SliceData find_local_slice(const Derivation& d, unsigned search_degree_bound) {
  if (d.is_zero()) throw DomainError("the zero derivation has no local slice");
  if (certify_triangular(d).status != NilpotencyStatus::certified_nilpotent)
    throw DomainError("local slice search requires a certified nilpotent derivation");
  const auto& ctx = d.context();
  const std::size_t n = ctx->size();

  auto try_candidate = [&](const Polynomial& p) -> std::optional<SliceData> {
    auto q = d(p);
    if (q.is_zero() || !d(q).is_zero()) return std::nullopt;
    return SliceData{p, q};
  };

  for (std::size_t v = 0; v < n && search_degree_bound >= 1; ++v)
    if (auto s = try_candidate(Polynomial::variable(ctx, v))) return *s;

  // Monomials of degree k, descending lex within a degree.
  for (unsigned k = 2; k <= search_degree_bound; ++k) {
    std::vector<Monomial> level;
    Monomial m(n);
    auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
      if (var + 1 == n) {
        m[var] = left;
        level.push_back(m);
        return;
      }
      for (unsigned e = left + 1; e-- > 0;) {
        m[var] = e;
        self(self, var + 1, left - e);
      }
      m[var] = 0;
    };
    if (n > 0) rec(rec, 0, k);
    for (const auto& mono : level)
      if (auto s = try_candidate(Polynomial::monomial(ctx, mono))) return *s;
  }
  throw DomainError("no local slice candidate within degree bound " + std::to_string(search_degree_bound));
}

LocalizedElement apply_localized(const Derivation& d, const LocalizedElement& x) {
  if (!d(x.q).is_zero()) throw DomainError("localization denominator is not a kernel element");
  // D(a/qᵏ) = D(a)/qᵏ since D(q) = 0.
  return {d(x.numerator), x.denominator_exponent, x.q};
}

LocalizedElement dixmier_project(const Derivation& d, const SliceData& slice, const Polynomial& f,
                                 unsigned max_order) {
  if (slice.q.is_zero() || !d(slice.q).is_zero() || d(slice.p) != slice.q)
    throw DomainError("invalid slice data");
  auto res = nilpotency_order(d, f, max_order);
  if (!res.order) throw DomainError("nilpotency of D on the argument is not established");
  const unsigned top = *res.order - 1;  // D^top(f) is the last nonzero iterate

  // Σ (−1)ⁱ/i! · pⁱ · Dⁱ(f) · q^{top−i}, all over q^top.
  const auto& ctx = d.context();
  Polynomial numerator(ctx);
  Polynomial iter = f;
  Polynomial p_power = Polynomial::constant(ctx, 1);
  Rational factorial = 1;
  for (unsigned i = 0; i <= top; ++i) {
    if (i > 0) {
      iter = d(iter);
      p_power *= slice.p;
      factorial *= i;
    }
    Rational c = Rational(i % 2 == 0 ? 1 : -1) / factorial;
    numerator += (p_power * iter * pow(slice.q, top - i)) * c;
  }

  LocalizedElement out{std::move(numerator), top, slice.q};
  if (slice.q.is_constant()) {
    Rational qc = slice.q.constant_coefficient();
    Rational scale = 1;
    for (unsigned i = 0; i < out.denominator_exponent; ++i) scale /= qc;
    out.numerator *= scale;
    out.denominator_exponent = 0;
  } else {
    while (out.denominator_exponent > 0 && !out.numerator.is_zero()) {
      auto div = exact_quotient(out.numerator, slice.q);
      if (!div) break;
      out.numerator = std::move(*div);
      --out.denominator_exponent;
    }
    if (out.numerator.is_zero()) out.denominator_exponent = 0;
  }
  if (!d(out.numerator).is_zero()) throw DomainError("internal: projection is not a kernel element");
  return out;
}

}  // namespace lndlab
