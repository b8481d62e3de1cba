#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace laxfact {

enum class Outcome { Pass, Fail, Vacuous };

std::string_view outcome_name(Outcome o) noexcept;

// Result of one checker. `failures` keeps the first kMaxListed messages;
// `failure_count` is the full number.
struct Verdict {
  static constexpr std::size_t kMaxListed = 64;

  std::string name;
  Outcome outcome = Outcome::Vacuous;
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  std::vector<std::string> failures;
  nlohmann::json detail = nlohmann::json::object();

  explicit Verdict(std::string n = {}) : name(std::move(n)) {}

  bool ok() const noexcept { return outcome != Outcome::Fail; }

  void count(std::size_t n = 1) noexcept { checked += n; }
  void fail(std::string message);
  // Pass/Vacuous from `checked` unless something failed.
  Verdict& finish();
  // Folds a sub-verdict in: counts add, failures are prefixed with its name.
  void absorb(const Verdict& sub);

  nlohmann::json to_json() const;
};

}  // namespace laxfact
