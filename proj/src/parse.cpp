#include "lndlab/parse.hpp"

#include <algorithm>
#include <cctype>

#include "lndlab/errors.hpp"

namespace lndlab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ContextPtr& ctx) : text_(text), ctx_(ctx) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_factor(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  Polynomial expr() {
    Polynomial acc(ctx_);
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial t = term();
      if (c == '+')
        acc += t;
      else
        acc -= t;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= factor();
      } else if (starts_factor(c)) {
        acc *= factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      auto start = pos_;
      Integer e = integer();
      if (!e.fits_uint_p()) {
        pos_ = start;
        fail("exponent too large");
      }
      base = pow(base, static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer() {
    skip_ws();
    auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q(integer());
      if (peek() == '/') {
        ++pos_;
        auto start = pos_;
        Integer den = integer();
        if (den == 0) {
          pos_ = start;
          fail("zero denominator");
        }
        q /= Rational(den);
      }
      return Polynomial::constant(ctx_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      auto start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ctx_->index_of(name);
      if (!idx) throw UnknownVariable(name);
      return Polynomial::variable(ctx_, *idx);
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const ContextPtr& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const ContextPtr& ctx) { return Parser(text, ctx).parse(); }

std::string format_rational(const Rational& q) { return q.get_str(); }

std::string format_monomial(const Monomial& m, const RingContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ctx.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format_poly(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) return "0";
  std::vector<const Term*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(),
            [&](const Term* a, const Term* b) { return order.less(b->mono, a->mono); });
  std::string out;
  bool first = true;
  for (const Term* t : terms) {
    Rational mag = abs(t->coef);
    bool neg = sgn(t->coef) < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (t->mono.is_one()) {
      out += format_rational(mag);
    } else {
      if (mag != 1) out += format_rational(mag) + "*";
      out += format_monomial(t->mono, *p.context());
    }
  }
  return out;
}

std::string format_poly(const Polynomial& p) {
  return format_poly(p, MonomialOrder::lex(p.context()->size()));
}

}  // namespace lndlab
