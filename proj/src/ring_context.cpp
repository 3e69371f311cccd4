#include "lndlab/ring_context.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lndlab/errors.hpp"

namespace lndlab {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

ContextPtr RingContext::make(std::vector<std::string> names, std::vector<std::uint32_t> weights) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!valid_name(n)) throw DomainError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw DomainError("duplicate variable name '" + n + "'");
  }
  if (!weights.empty()) {
    if (weights.size() != names.size())
      throw DomainError("weight count does not match variable count");
    if (std::any_of(weights.begin(), weights.end(), [](std::uint32_t w) { return w == 0; }))
      throw DomainError("variable weights must be positive");
  }
  return ContextPtr(new RingContext(std::move(names), std::move(weights)));
}

std::optional<std::size_t> RingContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t RingContext::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw UnknownVariable(std::string(name));
}

ContextPtr RingContext::extended(const std::string& name, std::uint32_t weight) const {
  auto names = names_;
  names.push_back(name);
  auto weights = weights_;
  if (!weights.empty()) weights.push_back(weight);
  return make(std::move(names), std::move(weights));
}

}  // namespace lndlab
