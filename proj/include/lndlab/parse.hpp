#pragma once

#include <string>
#include <string_view>

#include "lndlab/monomial_order.hpp"
#include "lndlab/polynomial.hpp"

namespace lndlab {

/// Parses a polynomial expression over `ctx`.
///
/// Grammar (whitespace insignificant):
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor (['*'] factor)*
///   factor  := primary ['^' integer]
///   primary := integer ['/' integer] | identifier | '(' expr ')'
///
/// Throws ParseError (with byte offset) or UnknownVariable.
Polynomial parse_poly(std::string_view text, const ContextPtr& ctx);

std::string format_rational(const Rational& q);
std::string format_monomial(const Monomial& m, const RingContext& ctx);

/// Canonical text: terms descending under `order`, no leading '+'.
std::string format_poly(const Polynomial& p, const MonomialOrder& order);
/// Canonical text under lex in declared variable order.
std::string format_poly(const Polynomial& p);

}  // namespace lndlab
