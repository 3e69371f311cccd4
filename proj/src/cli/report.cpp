#include "cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <utility>

namespace lndlab::cli {

void InputDigest::feed(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 1099511628211ull;
  }
}

void InputDigest::add(std::string_view label, std::string_view value) {
  // Length prefixes keep ("ab","c") and ("a","bc") apart.
  feed(std::to_string(label.size()));
  feed(":");
  feed(label);
  feed(std::to_string(value.size()));
  feed(":");
  feed(value);
}

std::string InputDigest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
  return std::string("fnv1a64:") + buf;
}

bool Report::passed() const {
  return std::all_of(verification.begin(), verification.end(), [](const Check& c) { return c.passed; });
}

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["inputs_digest"] = digest;
  j["result"] = result;
  Json v = Json::array();
  for (const auto& c : verification) v.push_back({{"check", c.name}, {"passed", c.passed}});
  j["verification"] = std::move(v);
  j["exit_status"] = exit_status();
  return j;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const Json& v, const std::string& key, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), key.empty() ? it.key() : key + "." + it.key(), rows);
  } else if (v.is_array()) {
    const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
    if (flat) {
      std::string joined = "[";
      for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? ", " : "") + scalar_text(v[i]);
      rows.emplace_back(key, joined + "]");
    } else {
      for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], key + "[" + std::to_string(i) + "]", rows);
    }
  } else {
    rows.emplace_back(key, scalar_text(v));
  }
}

}  // namespace

std::string Report::to_text() const {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("command", command);
  rows.emplace_back("inputs_digest", digest);
  flatten(result, "", rows);
  for (const auto& c : verification) rows.emplace_back("check " + c.name, c.passed ? "ok" : "FAILED");
  rows.emplace_back("exit_status", std::to_string(exit_status()));

  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::ostringstream os;
  if (!headline.empty()) os << headline << '\n';
  for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return os.str();
}

void Report::write(std::ostream& out, bool json) const {
  if (json)
    out << to_json().dump(2) << '\n';
  else
    out << to_text();
}

}  // namespace lndlab::cli
