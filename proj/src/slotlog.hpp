#pragma once

#include <string>
#include <vector>

#include "laxfact/verdict.hpp"

namespace laxfact::detail {

// Per-slot log merged in index order after a parallel loop.
struct SlotLog {
  static constexpr std::size_t kKeep = 4;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> messages;

  void fail(std::string m) {
    ++failed;
    if (messages.size() < kKeep) messages.push_back(std::move(m));
  }
};

inline void fold(Verdict& v, const std::vector<SlotLog>& logs) {
  for (const auto& log : logs) {
    v.count(log.checked);
    for (const auto& m : log.messages) v.fail(m);
    for (std::size_t i = log.messages.size(); i < log.failed; ++i) {
      ++v.failure_count;
      v.outcome = Outcome::Fail;
    }
  }
}

}  // namespace laxfact::detail
