#include "lndlab/monomial_order.hpp"

#include <algorithm>
#include <numeric>

#include "lndlab/errors.hpp"

namespace lndlab {

namespace {

void check_permutation(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw DomainError("variable priority is not a permutation");
}

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

}  // namespace

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> priority,
                             std::vector<std::uint32_t> weights)
    : kind_(kind), priority_(std::move(priority)), weights_(std::move(weights)) {
  check_permutation(priority_);
}

MonomialOrder MonomialOrder::lex(std::size_t nvars) { return {OrderKind::lex, identity(nvars), {}}; }

MonomialOrder MonomialOrder::lex(std::vector<std::size_t> priority) {
  return {OrderKind::lex, std::move(priority), {}};
}

MonomialOrder MonomialOrder::weighted_graded_lex(std::vector<std::uint32_t> weights,
                                                 std::vector<std::size_t> priority) {
  if (priority.empty()) priority = identity(weights.size());
  if (priority.size() != weights.size()) throw DomainError("weight count does not match priority");
  if (std::any_of(weights.begin(), weights.end(), [](auto w) { return w == 0; }))
    throw DomainError("order weights must be positive");
  return {OrderKind::weighted_graded_lex, std::move(priority), std::move(weights)};
}

MonomialOrder MonomialOrder::lex_by_names(const RingContext& ctx, const std::vector<std::string>& first) {
  std::vector<std::size_t> p;
  std::vector<bool> used(ctx.size(), false);
  for (const auto& name : first) {
    auto i = ctx.require(name);
    if (used[i]) throw DomainError("variable listed twice in order: " + name);
    used[i] = true;
    p.push_back(i);
  }
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (!used[i]) p.push_back(i);
  return lex(std::move(p));
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind_ == OrderKind::weighted_graded_lex) {
    auto wa = a.weighted_degree(weights_);
    auto wb = b.weighted_degree(weights_);
    if (wa != wb) return wa <=> wb;
  }
  for (auto v : priority_)
    if (a[v] != b[v]) return a[v] <=> b[v];
  return std::strong_ordering::equal;
}

std::string MonomialOrder::describe() const {
  return kind_ == OrderKind::lex ? "lex" : "wgrlex";
}

}  // namespace lndlab
