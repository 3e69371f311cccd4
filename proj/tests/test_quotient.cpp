#include <doctest.h>

#include "lndlab/errors.hpp"
#include "lndlab/parse.hpp"
#include "lndlab/quotient.hpp"
#include "lndlab/rigidity.hpp"
#include "lndlab/univariate.hpp"
#include "oracles.hpp"

using namespace lndlab;

namespace {

ContextPtr xyz() { return RingContext::make({"X", "Y", "Z"}); }

}  // namespace

TEST_CASE("quotient ring construction") {
  auto c = xyz();
  CHECK_THROWS_AS(QuotientRing(Polynomial(c), MonomialOrder::lex(3)), DomainError);
  CHECK_THROWS_AS(QuotientRing(parse_poly("5", c), MonomialOrder::lex(3)), DomainError);
  auto q = parse_quotient_description(
      R"({"variables": ["X", "Y"], "weights": [1, 2], "order": "wgrlex", "modulus": "X^2 + Y"})");
  CHECK(q.ambient()->size() == 2);
  CHECK(q.order().kind() == OrderKind::weighted_graded_lex);
  CHECK_THROWS_AS(parse_quotient_description("{"), ParseError);
  CHECK_THROWS_AS(parse_quotient_description(R"({"variables": ["X"], "order": "grevlex", "modulus": "X"})"), Error);
}

TEST_CASE("normal_form examples") {
  auto c = xyz();
  QuotientRing q(parse_poly("X^2 + Y^2 + Z^2", c), MonomialOrder::lex(3));
  CHECK(normal_form(q, parse_poly("X^2", c)) == parse_poly("-Y^2 - Z^2", c));
  auto w = parse_poly("X*Y^3 - 4*Z + 7", c);
  CHECK(normal_form(q, q.modulus() * w + parse_poly("Y", c)) == parse_poly("Y", c));
  CHECK(normal_form(q, parse_poly("Y", c)) == parse_poly("Y", c));
}

TEST_CASE("is_zero_in_quotient examples") {
  auto c = xyz();
  QuotientRing q(parse_poly("X^2 + Y^2 + Z^2", c), MonomialOrder::lex(3));
  CHECK(is_zero_in_quotient(q, q.modulus()));
  CHECK_FALSE(is_zero_in_quotient(q, parse_poly("1", c)));
  auto ex = build_example1(3, {25, 25, 25}, {25, 25});
  CHECK_FALSE(is_zero_in_quotient(ex.quotient, pow(ex.element("x1"), 25)));
}

TEST_CASE("induces_derivation examples") {
  auto s4 = build_section4();
  CHECK(induces_derivation(s4.quotient, s4.derivation));
  auto ex = build_example1(3, {25, 25, 25}, {25, 25});
  CHECK(induces_derivation(ex.quotient, ex.derivation));
  CHECK_FALSE(induces_derivation(s4.quotient, Derivation::partial(s4.quotient.ambient(), "X")));
}

TEST_CASE("member_ideal_plus_subring examples") {
  auto ring = build_section4();
  const auto& c = ring.quotient.ambient();
  std::vector<Polynomial> gens = {ring.element("x"), ring.element("y"), ring.element("z")};
  std::vector<std::size_t> sub = {0, 1, 2};
  auto m1 = member_ideal_plus_subring(ring.quotient, parse_poly("X*V - Y^2*Z^2*S", c), gens, sub);
  CHECK(m1.member);
  REQUIRE(m1.ideal_part.has_value());
  CHECK(is_zero_in_quotient(ring.quotient, parse_poly("X*V - Y^2*Z^2*S", c) - *m1.ideal_part - *m1.subring_part));
  CHECK_FALSE(member_ideal_plus_subring(ring.quotient, parse_poly("S", c), gens, sub).member);
  auto m3 = member_ideal_plus_subring(ring.quotient, parse_poly("1", c), gens, sub);
  CHECK(m3.member);
  CHECK(m3.ideal_part->is_zero());
  CHECK(*m3.subring_part == parse_poly("1", c));
}

TEST_CASE("specialize_irreducibility examples") {
  auto c = xyz();
  auto v1 = specialize_irreducibility(parse_poly("X^2 + Y^2 + 1", c), {1}, 0);
  CHECK(v1.status == IrreducibilityStatus::irreducible_certified);
  CHECK(*v1.specialized == parse_poly("X^2 + 1", c));
  auto v2 = specialize_irreducibility(parse_poly("X^2 - Y^2", c), {}, 0);
  CHECK(v2.status == IrreducibilityStatus::reducible);
  REQUIRE(v2.factor.has_value());
  CHECK((*v2.factor == parse_poly("X - Y", c) || *v2.factor == parse_poly("X + Y", c)));
  CHECK(exact_quotient(parse_poly("X^2 - Y^2", c), *v2.factor).has_value());
  // Degree in the main variable drops under the specialization.
  auto v3 = specialize_irreducibility(parse_poly("X^2*Y + Z", c), {1}, 0);
  CHECK(v3.status == IrreducibilityStatus::unknown);
  CHECK_THROWS_AS(specialize_irreducibility(parse_poly("X", c), {0}, 0), DomainError);
  // A content factor in the main variable is never certified.
  CHECK(specialize_irreducibility(parse_poly("Y*X^2 + Y", c), {}, 0).status != IrreducibilityStatus::irreducible_certified);
}

TEST_CASE("property: normal form canonicity") {
  oracle::Rng rng(31);
  auto c = xyz();
  std::vector<QuotientRing> rings = {
      QuotientRing(parse_poly("X^2 + Y^2 + Z^2", c), MonomialOrder::lex(3)),
      QuotientRing(parse_poly("X*Y - Z^3 + 1", c), MonomialOrder::weighted_graded_lex({1, 1, 1})),
  };
  for (const auto& q : rings)
    for (int i = 0; i < 100; ++i) {
      auto f = oracle::random_poly(rng, c, 5, 5), g = oracle::random_poly(rng, c, 5, 5);
      auto nf = normal_form(q, f);
      CHECK(normal_form(q, nf) == nf);
      CHECK(normal_form(q, f + g * q.modulus()) == nf);
      CHECK(normal_form(q, f * g) == normal_form(q, nf * normal_form(q, g)));
      CHECK(normal_form(q, f * Rational(2) - g) == normal_form(q, nf * Rational(2) - normal_form(q, g)));
      CHECK(exact_quotient(f - nf, q.modulus()).has_value());
      for (const auto& t : nf.terms()) CHECK_FALSE(q.modulus_lead().mono.divides(t.mono));
    }
}

TEST_CASE("property: induced derivations for several exponent vectors") {
  for (unsigned d : {2u, 3u, 7u}) {
    auto r = build_section4({d, d + 1, d, 2, 3, 2});
    CHECK(induces_derivation(r.quotient, r.derivation));
    auto ex = build_example1(3, {d, d, d + 1}, {2, d});
    CHECK(induces_derivation(ex.quotient, ex.derivation));
  }
}

TEST_CASE("oracle: membership agrees with the ambient linear-system oracle") {
  oracle::Rng rng(32);
  auto c = RingContext::make({"A", "B", "C", "D"});
  const auto order = MonomialOrder::weighted_graded_lex({1, 1, 1, 1});
  int members = 0;
  for (int i = 0; i < 50; ++i) {
    auto [p, gens, sub, f] = oracle::random_membership_instance(rng, c);
    QuotientRing q(p, order);
    if (f.is_zero()) continue;
    auto got = member_ideal_plus_subring(q, f, gens, sub);
    CHECK(got.member == oracle::homogeneous_membership(f, p, gens, sub));
    members += got.member ? 1 : 0;
  }
  CHECK(members > 5);
  CHECK(members < 50);
}

TEST_CASE("oracle: univariate certification never contradicts factor search") {
  oracle::Rng rng(33);
  int certified = 0;
  for (int i = 0; i < 400; ++i) {
    const int deg = rng.uniform(1, 5);
    oracle::IntPoly a(static_cast<std::size_t>(deg) + 1);
    for (auto& x : a) x = rng.uniform(-4, 4);
    if (a.back() == 0) a.back() = 1;
    DenseUnivariate d(a.begin(), a.end());
    std::string how;
    if (certify_univariate_irreducible(d, &how)) {
      ++certified;
      CHECK_MESSAGE(!oracle::has_small_factor(a), how);
    }
    if (deg <= 3 && a[0] != 0 && !oracle::has_small_factor(a)) CHECK(certify_univariate_irreducible(d, &how));
  }
  CHECK(certified > 50);
}

TEST_CASE("oracle: multivariate verdicts are consistent with factor search") {
  oracle::Rng rng(34);
  auto c = RingContext::make({"X", "Y", "Z"});
  for (int i = 0; i < 60; ++i) {
    auto f = oracle::random_poly(rng, c, 3, 2) + Polynomial::variable(c, "X");
    auto g = oracle::random_poly(rng, c, 3, 2) + Polynomial::variable(c, "X");
    if (f.degree_in(0).value() < 1 || g.degree_in(0).value() < 1) continue;
    auto prod = f * g;
    for (std::vector<std::size_t> kill : {std::vector<std::size_t>{}, {1}, {2}, {1, 2}}) {
      auto v = specialize_irreducibility(prod, kill, 0);
      CHECK(v.status != IrreducibilityStatus::irreducible_certified);
      if (v.status == IrreducibilityStatus::reducible) CHECK(exact_quotient(prod, *v.factor).has_value());
    }
  }
  // Example ring with small exponents: whenever a certificate is issued, the
  // killed polynomial must specialize to a univariate with no small factor.
  for (unsigned e3 : {2u, 3u, 4u}) {
    auto ex = build_example1(3, {2, 3, 2}, {3, e3});
    const auto& cx = ex.quotient.ambient();
    auto v = specialize_irreducibility(ex.quotient.modulus(), ex.plan.kill, ex.plan.main);
    if (v.status != IrreducibilityStatus::irreducible_certified) continue;
    bool confirmed = false;
    for (int x1 = 1; x1 <= 3 && !confirmed; ++x1)
      for (int x2 = -2; x2 <= 2 && !confirmed; ++x2)
        for (int x3 = -2; x3 <= 2 && !confirmed; ++x3) {
          std::map<std::string, Polynomial> b = {{"X1", Polynomial::constant(cx, x1)},
                                                 {"X2", Polynomial::constant(cx, x2)},
                                                 {"X3", Polynomial::constant(cx, x3)}};
          auto u = substitute(*v.specialized, b);
          auto dense = to_dense(u, ex.plan.main);
          if (static_cast<long>(dense.size()) - 1 != v.specialized->degree_in(ex.plan.main).value()) continue;
          oracle::IntPoly ip;
          for (const auto& q : dense) ip.push_back(q.get_num());
          confirmed = !oracle::has_small_factor(ip);
        }
    CHECK(confirmed);
  }
}
