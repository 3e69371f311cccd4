#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lndlab {

class RingContext;
using ContextPtr = std::shared_ptr<const RingContext>;

/// Ordered list of variable names, optionally with positive integer weights.
/// Contexts are immutable and shared by every polynomial built over them.
class RingContext {
 public:
  static ContextPtr make(std::vector<std::string> names, std::vector<std::uint32_t> weights = {});

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Like index_of, but throws UnknownVariable.
  std::size_t require(std::string_view name) const;

  bool has_weights() const noexcept { return !weights_.empty(); }
  /// Weight of variable i; 1 when the context carries no weights.
  std::uint32_t weight(std::size_t i) const { return weights_.empty() ? 1 : weights_.at(i); }
  const std::vector<std::uint32_t>& weights() const noexcept { return weights_; }

  /// A new context with `name` appended as the last variable.
  ContextPtr extended(const std::string& name, std::uint32_t weight = 1) const;

  bool operator==(const RingContext& other) const {
    return names_ == other.names_ && weights_ == other.weights_;
  }

 private:
  RingContext(std::vector<std::string> names, std::vector<std::uint32_t> weights)
      : names_(std::move(names)), weights_(std::move(weights)) {}

  std::vector<std::string> names_;
  std::vector<std::uint32_t> weights_;
};

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace lndlab
