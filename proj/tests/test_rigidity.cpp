#include <doctest.h>

#include <cstdlib>

#include "lndlab/errors.hpp"
#include "lndlab/parse.hpp"
#include "lndlab/rigidity.hpp"
#include "lndlab/univariate.hpp"
#include "oracles.hpp"

using namespace lndlab;

namespace {

ContextPtr s_ring() { return RingContext::make({"S"}); }
Polynomial P(const std::string& s) { return parse_poly(s, s_ring()); }

}  // namespace

TEST_CASE("mason_check examples") {
  auto c = s_ring();
  auto r1 = mason_check(parse_poly("2*S", c), parse_poly("S^2+1", c));
  CHECK(r1.applicable());
  CHECK(r1.deg_h == Degree(2));
  CHECK(r1.deg_radical == Degree(4));
  CHECK(r1.slack == 1);
  CHECK(r1.holds);
  auto r2 = mason_check(parse_poly("1", c), parse_poly("-1", c));
  CHECK(r2.all_constant);
  CHECK_FALSE(r2.applicable());
  auto r3 = mason_check(parse_poly("S", c), parse_poly("-S", c));
  CHECK(r3.degenerate);
  CHECK_FALSE(r3.coprime);
  CHECK_FALSE(r3.applicable());
  auto cx = RingContext::make({"S", "X"});
  CHECK_THROWS_AS(mason_check(parse_poly("S", cx), parse_poly("X", cx)), DomainError);
}

TEST_CASE("mini_mason_eval examples") {
  auto c = s_ring();
  CHECK(mini_mason_eval(parse_poly("S", c), parse_poly("S", c), 2, 3) == MiniMasonVerdict::nonconstant_sum);
  CHECK(mini_mason_eval(parse_poly("1", c), parse_poly("0", c), 2, 2) == MiniMasonVerdict::constant_sum_forces_constants);
  CHECK_THROWS_AS(mini_mason_eval(parse_poly("S", c), parse_poly("S", c), 1, 3), DomainError);
  CHECK(to_string(MiniMasonVerdict::nonconstant_sum) == "nonconstant-sum");
}

TEST_CASE("mini_mason_eval random search") {
  oracle::Rng rng(41);
  auto c = s_ring();
  for (int i = 0; i < 10000; ++i) {
    auto f = oracle::random_poly(rng, c, 5, 4, 3), g = oracle::random_poly(rng, c, 5, 4, 3);
    if (f.is_constant() && g.is_constant()) continue;
    const unsigned a = static_cast<unsigned>(rng.uniform(2, 3)), b = static_cast<unsigned>(rng.uniform(2, 3));
    CHECK_NOTHROW(mini_mason_eval(f, g, a, b));
  }
}

TEST_CASE("catalan_bound_check examples") {
  auto b1 = catalan_bound_check({16, 16, 16, 16, 16, 16});
  CHECK_FALSE(b1.satisfied);
  CHECK(b1.reciprocal_sum == Rational(3, 8));
  auto b2 = catalan_bound_check({25, 25, 25, 25, 25, 25});
  CHECK(b2.satisfied);
  CHECK(b2.reciprocal_sum == Rational(6, 25));
  CHECK(b2.bound == Rational(1, 4));
  auto b3 = catalan_bound_check({2, 3, 5});
  CHECK_FALSE(b3.satisfied);
  CHECK(b3.reciprocal_sum == Rational(31, 30));
  CHECK(catalan_bound_check({3, 3, 3}).satisfied);  // equality counts
  CHECK_THROWS_AS(catalan_bound_check({2, 2}), DomainError);
  CHECK_THROWS_AS(catalan_bound_check({2, 0, 2}), DomainError);
}

TEST_CASE("rigidity certificate for the first example") {
  auto ex = build_example1(3, {25, 25, 25}, {25, 25});
  auto cert = build_rigidity_certificate(ex.quotient.ambient(), ex.power_terms, ex.plan);
  CHECK(cert.bound.satisfied);
  CHECK(cert.bound.reciprocal_sum == Rational(1, 5));
  CHECK(cert.bound.bound == Rational(1, 3));
  CHECK(cert.subsums.size() == 30);
  for (const auto& s : cert.subsums) CHECK_FALSE(s.vanishes);
  CHECK(cert.primality.status == IrreducibilityStatus::irreducible_certified);
  CHECK(cert.complete());
  // The automatic plan search finds a certificate too.
  CHECK(build_rigidity_certificate(ex.quotient.ambient(), ex.power_terms).complete());
}

TEST_CASE("engineered vanishing subsum makes the certificate incomplete") {
  auto c = RingContext::make({"X", "Y", "Z"});
  std::vector<std::pair<Polynomial, unsigned>> terms = {
      {parse_poly("X", c), 3}, {parse_poly("-X", c), 3}, {parse_poly("Y", c), 2}, {parse_poly("Z", c), 2}};
  auto cert = build_rigidity_certificate(c, terms);
  CHECK_FALSE(cert.complete());
  bool found = false;
  for (const auto& s : cert.subsums)
    if (s.vanishes) found = found || s.indices == std::vector<std::size_t>{0, 1};
  CHECK(found);
}

TEST_CASE("rigidity certificate for the seven-variable ring") {
  auto r = build_section4();
  auto cert = build_rigidity_certificate(r.quotient.ambient(), r.power_terms, r.plan);
  CHECK(cert.bound.satisfied);
  CHECK(cert.bound.reciprocal_sum == Rational(6, 25));
  CHECK(cert.subsums.size() == 62);
  CHECK(cert.complete());
  auto r16 = build_section4({16, 16, 16, 16, 16, 16});
  CHECK_FALSE(build_rigidity_certificate(r16.quotient.ambient(), r16.power_terms, r16.plan).complete());
}

TEST_CASE("build_example1 examples and properties") {
  auto ex = build_example1(3, {25, 25, 25}, {25, 25});
  CHECK(ex.quotient.ambient()->size() == 6);
  CHECK(ex.power_terms.size() == 5);
  CHECK(certify_triangular(ex.derivation).status == NilpotencyStatus::certified_nilpotent);
  CHECK(ex.derivation(ex.quotient.modulus()).is_zero());
  CHECK(ex.derivation(ex.element("y1")) == ex.element("x1"));
  for (unsigned n : {3u, 4u})
    for (unsigned d : {2u, 5u}) {
      auto r = build_example1(n, std::vector<unsigned>(n, d), std::vector<unsigned>(n - 1, d + 1));
      for (unsigned i = 1; i <= n; ++i) {
        auto s = std::to_string(i);
        CHECK(r.derivation(r.element("x" + s)).is_zero());
        CHECK(r.derivation(r.element("y" + s)) == r.element("x" + s));
        if (i >= 2) CHECK(r.derivation(r.element("l" + s)).is_zero());
      }
      CHECK(r.derivation(r.element("P")).is_zero());
      CHECK(certify_triangular(r.derivation).status == NilpotencyStatus::certified_nilpotent);
    }
  CHECK_THROWS_AS(build_example1(2, {2, 2}, {2}), DomainError);
  CHECK_THROWS_AS(build_example1(3, {2, 2}, {2, 2}), DomainError);
  CHECK_THROWS_AS(build_example1(3, {2, 2, 2}, {2}), DomainError);
}

TEST_CASE("build_section4 examples and properties") {
  auto r = build_section4();
  for (const char* k : {"x", "y", "z", "s", "t", "u", "v", "l1", "l2", "l3"}) CHECK(r.named.count(k) == 1);
  for (const char* k : {"x", "y", "z", "l1", "l2", "l3", "P"}) CHECK(r.derivation(r.element(k)).is_zero());
  CHECK(nilpotency_order(r.derivation, r.element("v"), 64).order == 2u);
  CHECK_THROWS_AS(build_section4({1, 2, 2, 2, 2, 2}), DomainError);
  CHECK_THROWS_AS(build_section4({2, 2, 2}), DomainError);
}

TEST_CASE("property: completeness of the bound is monotone in the exponents") {
  oracle::Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    std::vector<unsigned> e(static_cast<std::size_t>(rng.uniform(3, 7)));
    for (auto& x : e) x = static_cast<unsigned>(rng.uniform(1, 30));
    auto before = catalan_bound_check(e).satisfied;
    e[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(e.size()) - 1))] += static_cast<unsigned>(rng.uniform(1, 5));
    if (before) CHECK(catalan_bound_check(e).satisfied);
  }
}

TEST_CASE("property: Mason-Stothers on random coprime pairs") {
  oracle::Rng rng(43);
  auto c = s_ring();
  int applicable = 0;
  for (int i = 0; i < 2000; ++i) {
    auto f = oracle::random_poly(rng, c, 4, 8, 4), g = oracle::random_poly(rng, c, 4, 8, 4);
    if (f.is_zero() && g.is_zero()) continue;
    auto r = mason_check(f, g);
    if (r.applicable()) {
      ++applicable;
      CHECK(r.holds);
      CHECK(r.slack >= 0);
    }
  }
  CHECK(applicable > 300);
}

TEST_CASE("brute_search_catalan_solutions") {
  std::vector<Rational> pool = {-1, 0, 1};
  auto fermat = brute_search_catalan_solutions(3, {3, 3, 3}, 2, pool);
  CHECK(fermat.bound.satisfied);
  for (const auto& s : fermat.solutions) CHECK(s.all_constant);
  // 1 + (-1) + 0 is rejected: the lone zero is a vanishing subsum with gcd 0.
  CHECK(fermat.candidates == 19683u);
  auto pyth = brute_search_catalan_solutions(3, {2, 2, 1}, 2, pool);
  CHECK_FALSE(pyth.bound.satisfied);
  bool nonconstant = false;
  for (const auto& s : pyth.solutions) nonconstant = nonconstant || !s.all_constant;
  CHECK(nonconstant);
  CHECK_THROWS_AS(brute_search_catalan_solutions(3, {3, 3, 3}, 6, pool, 1000), DomainError);
}

TEST_CASE("search guard honours the environment") {
  ::setenv("LNDLAB_MAX_SEARCH", "1234", 1);
  CHECK(default_search_guard() == 1234u);
  ::unsetenv("LNDLAB_MAX_SEARCH");
  CHECK(default_search_guard() == 10000000u);
}
