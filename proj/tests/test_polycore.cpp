#include <doctest.h>

#include "lndlab/errors.hpp"
#include "lndlab/parse.hpp"
#include "lndlab/polynomial.hpp"
#include "lndlab/univariate.hpp"
#include "oracles.hpp"

using namespace lndlab;

namespace {

ContextPtr ring7() { return RingContext::make({"X", "Y", "Z", "S", "T", "U", "V"}, {1, 1, 1, 3, 3, 3, 6}); }
Polynomial P(const std::string& s, const ContextPtr& c) { return parse_poly(s, c); }

}  // namespace

TEST_CASE("ring context validation") {
  CHECK_THROWS_AS(RingContext::make({"X", "X"}), Error);
  CHECK_THROWS_AS(RingContext::make({""}), Error);
  CHECK_THROWS_AS(RingContext::make({"1a"}), Error);
  CHECK_THROWS_AS(RingContext::make({"X", "Y"}, {1, 0}), Error);
  CHECK_THROWS_AS(RingContext::make({"X", "Y"}, {1}), Error);
  auto c = RingContext::make({"X", "Y_2"});
  CHECK(c->require("Y_2") == 1);
  CHECK_THROWS_AS(c->require("Q"), UnknownVariable);
}

TEST_CASE("parse_poly examples") {
  auto c = ring7();
  auto l1 = P("Y^3*S - X^3*T", c);
  CHECK(l1.num_terms() == 2);
  CHECK(P("0", c).is_zero());
  CHECK(P("1/2*X + 1/2*X", c) == Polynomial::variable(c, "X"));
  CHECK(P("3X", c) == P("3*X", c));
  CHECK(P("X Y", c) == P("X*Y", c));
  CHECK(P("-(X+1)^2", c) == P("-X^2 - 2*X - 1", c));
  CHECK(P("4/6*X", c).terms()[0].coef == Rational(2, 3));
}

TEST_CASE("parse errors carry positions") {
  auto c = ring7();
  CHECK_THROWS_AS(P("X +", c), ParseError);
  CHECK_THROWS_AS(P("X ^ -1", c), ParseError);
  CHECK_THROWS_AS(P("1/0", c), ParseError);
  CHECK_THROWS_AS(P("W", c), UnknownVariable);
  try {
    P("X + * Y", c);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("canonical formatting") {
  auto c = ring7();
  CHECK(format_poly(P("Y^3*S - X^3*T", c)) == "-X^3*T + Y^3*S");
  CHECK(format_poly(P("0", c)) == "0");
  CHECK(format_poly(P("-3/2*X + 1", c)) == "-3/2*X + 1");
  auto order = MonomialOrder::lex_by_names(*c, {"V", "U", "T", "S", "X", "Y", "Z"});
  CHECK(format_poly(P("Y^2*Z^2*S - X*V", c), order) == "-X*V + Y^2*Z^2*S");
}

TEST_CASE("arith examples") {
  auto c = ring7();
  auto x = Polynomial::variable(c, "X"), y = Polynomial::variable(c, "Y");
  CHECK((x + (-x)).is_zero());
  CHECK((x + y) * (x - y) == P("X^2 - Y^2", c));
  auto l1 = P("Y^3*S - X^3*T", c);
  auto sq = l1 * l1;
  CHECK(sq == P("Y^6*S^2 - 2*X^3*Y^3*S*T + X^6*T^2", c));
  CHECK(sq.num_terms() == 3);
  CHECK(oracle::to_dense(sq) == oracle::mul(oracle::to_dense(l1), oracle::to_dense(l1)));
  auto other = RingContext::make({"X"});
  CHECK_THROWS_AS(x + Polynomial::variable(other, "X"), ContextMismatch);
}

TEST_CASE("pow examples") {
  auto c = ring7();
  CHECK(pow(P("X+1", c), 2) == P("X^2 + 2*X + 1", c));
  CHECK(pow(P("X*Y - 7*V", c), 0) == Polynomial::constant(c, 1));
  CHECK(pow(Polynomial(c), 0) == Polynomial::constant(c, 1));
  auto l3 = P("Y^2*Z^2*S - X*V", c);
  auto sq = pow(l3, 2);
  CHECK(sq.num_terms() == 3);
  CHECK(oracle::to_dense(sq) == oracle::mul(oracle::to_dense(l3), oracle::to_dense(l3)));
}

TEST_CASE("partial derivatives") {
  auto c = ring7();
  CHECK(partial_derivative(P("Y^3*S - X^3*T", c), "S") == P("Y^3", c));
  CHECK(partial_derivative(P("17/3", c), "X").is_zero());
  CHECK(partial_derivative(P("S^3", c), "S") == P("3*S^2", c));
  CHECK_THROWS_AS(partial_derivative(P("S", c), "W"), UnknownVariable);
}

TEST_CASE("substitution") {
  auto c = RingContext::make({"X1", "X2", "X3", "Y1", "Y2", "Y3"});
  auto p = P("X1^4 + X2^4 + X3^4 + (X2*Y1 - X1*Y2)^3 + (X3*Y1 - X1*Y3)^3", c);
  auto zero = Polynomial(c);
  CHECK(substitute(p, std::map<std::string, Polynomial>{{"Y1", zero}, {"Y2", zero}, {"Y3", zero}}) ==
        P("X1^4 + X2^4 + X3^4", c));
  auto c7 = ring7();
  auto x = P("X", c7);
  CHECK(substitute(x, std::map<std::string, Polynomial>{{"X", x}}) == x);
  CHECK(substitute(P("X^2 + Y", c7), std::map<std::string, Polynomial>{{"X", P("S+1", c7)}, {"Y", Polynomial(c7)}}) ==
        P("S^2 + 2*S + 1", c7));
  // Simultaneous, not sequential.
  CHECK(substitute(P("X - Y", c7), std::map<std::string, Polynomial>{{"X", P("Y", c7)}, {"Y", P("X", c7)}}) ==
        P("Y - X", c7));
}

TEST_CASE("degrees") {
  auto c = ring7();
  std::vector<std::size_t> stuv = {3, 4, 5, 6};
  CHECK(P("X*V^2", c).degree_in(stuv) == Degree(2));
  CHECK(Polynomial(c).total_degree().is_neg_infinity());
  CHECK(Polynomial(c).total_degree().to_string() == "-inf");
  CHECK_THROWS(Polynomial(c).total_degree().value());
  CHECK(P("Y^2*Z^2*S - X*V", c).total_degree() == Degree(5));
  CHECK(P("Y^2*Z^2*S - X*V", c).weighted_degree(c->weights()) == Degree(7));
  CHECK(Degree::neg_infinity() < Degree(0));
}

TEST_CASE("univariate gcd and radical") {
  auto c = RingContext::make({"S", "X"});
  CHECK(univariate_gcd(P("S^2-1", c), P("S-1", c)) == P("S-1", c));
  CHECK(univariate_gcd(P("3*S^2+3", c), Polynomial(c)) == P("S^2+1", c));
  CHECK(univariate_gcd(P("S", c), P("S+1", c)) == P("1", c));
  CHECK(radical_univariate(P("(S-1)^3", c)) == P("S-1", c));
  CHECK(radical_univariate(P("S", c)) == P("S", c));
  CHECK(radical_univariate(P("S^2*(S+1)", c)) == P("S^2+S", c));
  CHECK_THROWS_AS(radical_univariate(Polynomial(c)), DomainError);
  CHECK_THROWS_AS(univariate_gcd(P("S", c), P("X", c)), DomainError);
}

TEST_CASE("division and exact quotient") {
  auto c = ring7();
  auto f = P("X^3 + 2*X*Y + Y^2", c), g = P("X + Y", c);
  auto order = MonomialOrder::lex(c->size());
  auto [q, r] = divide(f, g, order);
  CHECK(q * g + r == f);
  auto lead = leading_term(g, order).mono;
  for (const auto& t : r.terms()) CHECK_FALSE(lead.divides(t.mono));
  CHECK(exact_quotient(P("X^2-Y^2", c), P("X-Y", c)) == P("X+Y", c));
  CHECK_FALSE(exact_quotient(P("X^2+Y^2", c), P("X-Y", c)).has_value());
}

TEST_CASE("property: ring axioms against the dense oracle") {
  oracle::Rng rng(11);
  auto c = RingContext::make({"A", "B", "C"});
  for (int i = 0; i < 200; ++i) {
    auto a = oracle::random_poly(rng, c, 5, 4), b = oracle::random_poly(rng, c, 5, 4), d = oracle::random_poly(rng, c, 5, 4);
    CHECK(oracle::to_dense(a * b) == oracle::mul(oracle::to_dense(a), oracle::to_dense(b)));
    CHECK(oracle::to_dense(a + b) == oracle::add(oracle::to_dense(a), oracle::to_dense(b)));
    CHECK(a * b == b * a);
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK((a - b == Polynomial(c)) == (a.terms() == b.terms()));
    if (!a.is_zero() && !b.is_zero()) CHECK((a * b).total_degree() == a.total_degree() + b.total_degree());
  }
}

TEST_CASE("property: order compatibility with multiplication") {
  oracle::Rng rng(12);
  auto c = ring7();
  std::vector<MonomialOrder> orders = {MonomialOrder::lex(7),
                                       MonomialOrder::lex_by_names(*c, {"V", "U", "T", "S", "X", "Y", "Z"}),
                                       MonomialOrder::weighted_graded_lex(c->weights()),
                                       MonomialOrder::weighted_graded_lex(std::vector<std::uint32_t>(7, 1))};
  auto rand_mono = [&] {
    Monomial m(7);
    for (std::size_t i = 0; i < 7; ++i) m[i] = static_cast<Monomial::Exponent>(rng.uniform(0, 3));
    return m;
  };
  for (const auto& o : orders) {
    CHECK(o.less(Monomial(7), Monomial::variable(7, 0)));
    for (int i = 0; i < 300; ++i) {
      auto a = rand_mono(), b = rand_mono(), m = rand_mono();
      if (a == b) continue;
      if (o.less(b, a)) std::swap(a, b);
      CHECK(o.less(a * m, b * m));
      CHECK(o.less(Monomial(7), a * m) != (a * m).is_one());
    }
  }
}

TEST_CASE("property: format then parse is the identity") {
  oracle::Rng rng(13);
  auto c = ring7();
  for (int i = 0; i < 200; ++i) {
    auto a = oracle::random_poly(rng, c, 6, 5, 9);
    a *= Rational(rng.uniform(1, 5), rng.uniform(1, 7));
    CHECK(parse_poly(format_poly(a), c) == a);
    CHECK(parse_poly(format_poly(a, MonomialOrder::weighted_graded_lex(c->weights())), c) == a);
  }
}

TEST_CASE("property: radical of a power") {
  oracle::Rng rng(14);
  auto c = RingContext::make({"S"});
  for (int i = 0; i < 100; ++i) {
    auto f = oracle::random_poly(rng, c, 4, 4);
    if (f.is_zero()) continue;
    auto r = radical_univariate(f);
    for (unsigned k = 1; k <= 3; ++k) CHECK(radical_univariate(pow(f, k)) == r);
  }
}

TEST_CASE("property: product rule for partial derivatives") {
  oracle::Rng rng(15);
  auto c = RingContext::make({"A", "B", "C"});
  for (int i = 0; i < 100; ++i) {
    auto a = oracle::random_poly(rng, c, 4, 4), b = oracle::random_poly(rng, c, 4, 4);
    for (std::size_t v = 0; v < 3; ++v)
      CHECK(partial_derivative(a * b, v) == partial_derivative(a, v) * b + a * partial_derivative(b, v));
  }
}
