#include "laxfact/verdict.hpp"

namespace laxfact {

std::string_view outcome_name(Outcome o) noexcept {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::Vacuous:
      return "vacuous";
  }
  return "?";
}

void Verdict::fail(std::string message) {
  ++failure_count;
  outcome = Outcome::Fail;
  if (failures.size() < kMaxListed) failures.push_back(std::move(message));
}

Verdict& Verdict::finish() {
  if (failure_count > 0) {
    outcome = Outcome::Fail;
  } else {
    outcome = checked > 0 ? Outcome::Pass : Outcome::Vacuous;
  }
  return *this;
}

void Verdict::absorb(const Verdict& sub) {
  checked += sub.checked;
  failure_count += sub.failure_count;
  for (const auto& m : sub.failures) {
    if (failures.size() >= kMaxListed) break;
    failures.push_back(sub.name + ": " + m);
  }
  if (sub.outcome == Outcome::Fail) outcome = Outcome::Fail;
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["verdict"] = std::string(outcome_name(outcome));
  j["checked"] = checked;
  j["failure_count"] = failure_count;
  j["failures"] = failures;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

}  // namespace laxfact
