#include "lndlab/polynomial.hpp"

#include <algorithm>
#include <unordered_map>

#include "lndlab/errors.hpp"

namespace lndlab {

namespace {

using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;

std::vector<Term> drain_sorted(Accumulator& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) out.push_back({m, std::move(c)});
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  return out;
}

}  // namespace

std::int64_t Degree::value() const {
  if (!value_) throw DomainError("degree of the zero polynomial is -infinity");
  return *value_;
}

// GMP leaves Rational(a, b) unreduced; every coefficient entering from outside goes through here.
static Rational canonical(Rational c) {
  c.canonicalize();
  return c;
}

Polynomial Polynomial::constant(ContextPtr ctx, const Rational& c) {
  Polynomial p(ctx);
  if (sgn(c) != 0) p.terms_.push_back({Monomial(ctx->size()), canonical(c)});
  return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, std::size_t index) {
  if (index >= ctx->size()) throw DomainError("variable index out of range");
  auto m = Monomial::variable(ctx->size(), index);
  return monomial(std::move(ctx), std::move(m));
}

Polynomial Polynomial::variable(ContextPtr ctx, std::string_view name) {
  auto i = ctx->require(name);
  return variable(std::move(ctx), i);
}

Polynomial Polynomial::monomial(ContextPtr ctx, Monomial m, const Rational& c) {
  if (m.size() != ctx->size()) throw DomainError("monomial length does not match context");
  Polynomial p(std::move(ctx));
  if (sgn(c) != 0) p.terms_.push_back({std::move(m), canonical(c)});
  return p;
}

Polynomial Polynomial::from_terms(ContextPtr ctx, std::vector<Term> terms) {
  Accumulator acc;
  for (auto& t : terms) {
    if (t.mono.size() != ctx->size()) throw DomainError("monomial length does not match context");
    acc[t.mono] += canonical(t.coef);
  }
  Polynomial p(std::move(ctx));
  p.terms_ = drain_sorted(acc);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.mono > key; });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return 0;
}

Degree Polynomial::total_degree() const {
  if (terms_.empty()) return Degree::neg_infinity();
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return static_cast<std::int64_t>(d);
}

Degree Polynomial::weighted_degree(const std::vector<std::uint32_t>& weights) const {
  if (terms_.empty()) return Degree::neg_infinity();
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.weighted_degree(weights));
  return static_cast<std::int64_t>(d);
}

Degree Polynomial::degree_in(std::size_t var) const { return degree_in(std::vector<std::size_t>{var}); }

Degree Polynomial::degree_in(const std::vector<std::size_t>& vars) const {
  if (terms_.empty()) return Degree::neg_infinity();
  std::int64_t best = 0;
  for (const auto& t : terms_) {
    std::int64_t d = 0;
    for (auto v : vars) d += t.mono[v];
    best = std::max(best, d);
  }
  return best;
}

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[var] != 0; });
}

std::vector<std::size_t> Polynomial::variables_used() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < ctx_->size(); ++v)
    if (involves(v)) out.push_back(v);
  return out;
}

void Polynomial::check_same(const Polynomial& o) const {
  if (!same_context(ctx_, o.ctx_)) throw ContextMismatch();
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

void Polynomial::add_scaled(const Polynomial& o, int sign) {
  check_same(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono > o.terms_[j].mono)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].mono > terms_[i].mono) {
      out.push_back(o.terms_[j++]);
      if (sign < 0) out.back().coef = -out.back().coef;
    } else {
      Rational c = sign < 0 ? Rational(terms_[i].coef - o.terms_[j].coef)
                            : Rational(terms_[i].coef + o.terms_[j].coef);
      if (sgn(c) != 0) out.push_back({std::move(terms_[i].mono), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  add_scaled(o, 1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  add_scaled(o, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    const Rational k = canonical(c);
    for (auto& t : terms_) t.coef *= k;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ctx_);
  if (a.terms_.size() == 1) return b.scaled(a.terms_[0].mono, a.terms_[0].coef);
  if (b.terms_.size() == 1) return a.scaled(b.terms_[0].mono, b.terms_[0].coef);
  Accumulator acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coef * t.coef;
  Polynomial r(a.ctx_);
  r.terms_ = drain_sorted(acc);
  return r;
}

Polynomial Polynomial::scaled(const Monomial& m, const Rational& c) const {
  Polynomial r(ctx_);
  if (sgn(c) == 0) return r;
  r.terms_.reserve(terms_.size());
  const Rational k = canonical(c);
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * k});
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return same_context(ctx_, o.ctx_) && terms_ == o.terms_;
}

Polynomial pow(const Polynomial& a, unsigned e) {
  Polynomial result = Polynomial::constant(a.context(), 1);
  Polynomial base = a;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial partial_derivative(const Polynomial& a, std::size_t var) {
  if (var >= a.context()->size()) throw DomainError("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : a.terms()) {
    if (t.mono[var] == 0) continue;
    Monomial m = t.mono;
    Rational c = t.coef * m[var];
    m[var] -= 1;
    out.push_back({std::move(m), std::move(c)});
  }
  return Polynomial::from_terms(a.context(), std::move(out));
}

Polynomial partial_derivative(const Polynomial& a, std::string_view var) {
  return partial_derivative(a, a.context()->require(var));
}

Polynomial substitute(const Polynomial& a, const std::map<std::size_t, Polynomial>& bindings) {
  const auto& ctx = a.context();
  for (const auto& [v, img] : bindings) {
    if (v >= ctx->size()) throw DomainError("variable index out of range");
    if (!same_context(img.context(), ctx)) throw ContextMismatch();
  }
  std::map<std::pair<std::size_t, unsigned>, Polynomial> powers;
  auto power_of = [&](std::size_t v, unsigned e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, pow(bindings.at(v), e)).first;
    return it->second;
  };
  Polynomial result(ctx);
  for (const auto& t : a.terms()) {
    Monomial rest = t.mono;
    Polynomial term = Polynomial::constant(ctx, 1);
    for (const auto& [v, img] : bindings) {
      if (rest[v] == 0) continue;
      term *= power_of(v, rest[v]);
      rest[v] = 0;
    }
    result += term.scaled(rest, t.coef);
  }
  return result;
}

Polynomial substitute(const Polynomial& a, const std::map<std::string, Polynomial>& bindings) {
  std::map<std::size_t, Polynomial> by_index;
  for (const auto& [name, img] : bindings) by_index.emplace(a.context()->require(name), img);
  return substitute(a, by_index);
}

Polynomial embed(const Polynomial& a, const ContextPtr& target) {
  const auto& src = a.context();
  std::vector<std::optional<std::size_t>> map(src->size());
  for (std::size_t i = 0; i < src->size(); ++i) map[i] = target->index_of(src->name(i));
  std::vector<Term> out;
  out.reserve(a.num_terms());
  for (const auto& t : a.terms()) {
    Monomial m(target->size());
    for (std::size_t i = 0; i < src->size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!map[i]) throw UnknownVariable(src->name(i));
      m[*map[i]] = t.mono[i];
    }
    out.push_back({std::move(m), t.coef});
  }
  return Polynomial::from_terms(target, std::move(out));
}

std::vector<Polynomial> coefficients_in(const Polynomial& a, std::size_t var) {
  auto deg = a.degree_in(var);
  if (deg.is_neg_infinity()) return {};
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(deg.value()) + 1);
  for (const auto& t : a.terms()) {
    Monomial m = t.mono;
    auto k = m[var];
    m[var] = 0;
    buckets[k].push_back({std::move(m), t.coef});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(a.context(), std::move(b)));
  return out;
}

Term leading_term(const Polynomial& a, const MonomialOrder& order) {
  if (a.is_zero()) throw DomainError("zero polynomial has no leading term");
  const Term* best = &a.terms().front();
  for (const auto& t : a.terms())
    if (order.less(best->mono, t.mono)) best = &t;
  return *best;
}

DivisionResult divide(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  if (!same_context(f.context(), g.context())) throw ContextMismatch();
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  const auto& ctx = f.context();
  const Term lead = leading_term(g, order);

  std::map<Monomial, Rational, OrderLess> work(OrderLess{&order});
  for (const auto& t : f.terms()) work.emplace(t.mono, t.coef);

  std::vector<Term> quotient, remainder;
  while (!work.empty()) {
    auto top = std::prev(work.end());
    if (!lead.mono.divides(top->first)) {
      remainder.push_back({top->first, std::move(top->second)});
      work.erase(top);
      continue;
    }
    Monomial m = lead.mono.cofactor_in(top->first);
    Rational c = top->second / lead.coef;
    for (const auto& t : g.terms()) {
      Monomial prod = t.mono * m;
      auto [it, inserted] = work.try_emplace(std::move(prod), 0);
      it->second -= c * t.coef;
      if (sgn(it->second) == 0) work.erase(it);
    }
    quotient.push_back({std::move(m), std::move(c)});
  }
  return {Polynomial::from_terms(ctx, std::move(quotient)),
          Polynomial::from_terms(ctx, std::move(remainder))};
}

std::optional<Polynomial> exact_quotient(const Polynomial& f, const Polynomial& g) {
  auto order = MonomialOrder::lex(f.context()->size());
  auto [q, r] = divide(f, g, order);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

}  // namespace lndlab
