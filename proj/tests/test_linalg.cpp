#include <doctest.h>

#include "lndlab/linalg.hpp"
#include "lndlab/parse.hpp"
#include "oracles.hpp"

using namespace lndlab;
using namespace lndlab::linalg;

namespace {

std::vector<Rational> times(const IntMatrix& m, const RationalVector& x) {
  std::vector<Rational> out;
  for (const auto& row : m) {
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += Rational(row[j]) * x[j];
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("bareiss echelon on a small matrix") {
  IntMatrix m = {{2, 4, 6}, {1, 2, 4}, {3, 6, 9}};
  auto e = bareiss_echelon(m, 3);
  CHECK(e.rank() == 2);
  CHECK(e.pivot_cols == std::vector<std::size_t>{0, 2});
  auto ns = nullspace(m, 3);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == RationalVector{-2, 1, 0});
  CHECK(nullspace(IntMatrix{}, 2).size() == 2);
}

TEST_CASE("property: nullspace vectors annihilate and count correctly") {
  oracle::Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 6)), c = static_cast<std::size_t>(rng.uniform(1, 7));
    IntMatrix m(r, std::vector<Integer>(c));
    for (auto& row : m)
      for (auto& x : row) x = rng.uniform(-3, 3) * (rng.uniform(0, 2) ? 1 : 0);
    auto ns = nullspace(m, c);
    for (const auto& v : ns)
      for (const auto& y : times(m, v)) CHECK(y == 0);
    // Oracle rank by rational elimination.
    std::vector<oracle::Dense> rows;
    for (const auto& row : m) {
      oracle::Dense d;
      for (std::size_t j = 0; j < c; ++j)
        if (row[j] != 0) d[{static_cast<unsigned>(j)}] = mpq_class(row[j]);
      rows.push_back(d);
    }
    CHECK(ns.size() == c - oracle::rank(rows));
    CHECK(bareiss_echelon(m, c).rank() == oracle::rank(rows));
  }
}

TEST_CASE("reduced row echelon form") {
  auto r = reduced_row_echelon({{2, 4, 0}, {1, 2, 1}, {0, 0, 0}});
  REQUIRE(r.size() == 2);
  CHECK(r[0] == RationalVector{1, 2, 0});
  CHECK(r[1] == RationalVector{0, 0, 1});
}

TEST_CASE("sparse span tracks tags") {
  auto c = RingContext::make({"A", "B"});
  SparseSpan span(MonomialOrder::lex(2), 1);
  CHECK(span.insert(parse_poly("A + B", c), {parse_poly("A", c)}));
  CHECK(span.insert(parse_poly("A - B", c), {parse_poly("B", c)}));
  CHECK_FALSE(span.insert(parse_poly("3*A", c), {parse_poly("1", c)}));
  CHECK(span.rank() == 2);
  auto red = span.reduce(parse_poly("2*A", c), c);
  CHECK(red.member);
  CHECK(red.tags[0] == parse_poly("A + B", c));  // 2A = (A+B) + (A-B)
  auto miss = span.reduce(parse_poly("A^2", c), c);
  CHECK_FALSE(miss.member);
  CHECK(miss.residual == parse_poly("A^2", c));
}
