#pragma once

#include <cstddef>
#include <functional>

namespace laxfact {

// Worker count used by every parallel loop; 1 runs inline.
void set_jobs(unsigned jobs) noexcept;
unsigned jobs() noexcept;

// Runs fn(i) for i in [0, count). Each index is visited exactly once; callers
// write results into slot i so aggregation order never depends on scheduling.
// The first exception thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace laxfact
