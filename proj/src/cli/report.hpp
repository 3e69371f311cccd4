#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lndlab::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { exit_ok = 0, exit_verification_failed = 1, exit_invalid_input = 2 };

/// 64-bit FNV-1a, used to fingerprint command inputs.
class InputDigest {
 public:
  void add(std::string_view label, std::string_view value);
  std::string hex() const;

 private:
  void feed(std::string_view bytes);
  std::uint64_t state_ = 14695981039346656037ull;
};

struct Check {
  std::string name;
  bool passed = false;
};

/// Outcome of one command: echo, input digest, payload and the assertions
/// that were re-checked after the computation.
struct Report {
  std::string command;
  std::string digest;
  std::string headline;  // short human summary printed first in text mode
  Json result = Json::object();
  std::vector<Check> verification;

  void check(std::string name, bool passed) { verification.push_back({std::move(name), passed}); }
  bool passed() const;
  int exit_status() const { return passed() ? exit_ok : exit_verification_failed; }

  Json to_json() const;
  std::string to_text() const;
  void write(std::ostream& out, bool json) const;
};

}  // namespace lndlab::cli
