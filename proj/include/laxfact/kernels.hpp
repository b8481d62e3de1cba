#pragma once

// Word-level bitset kernels used by the filler search and order closure.
// Each kernel has a portable scalar version and an AVX2 version; the active
// table is picked once at startup from CPUID (override with LAXFACT_KERNEL=scalar).

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace laxfact::kernels {

using Word = std::uint64_t;

struct KernelTable {
  std::string_view name;
  // true iff (a & b) has a set bit in the first `words` words
  bool (*intersects)(const Word* a, const Word* b, std::size_t words);
  // true iff every bit of a is set in b
  bool (*subset)(const Word* a, const Word* b, std::size_t words);
  // dst |= src
  void (*or_assign)(Word* dst, const Word* src, std::size_t words);
  // dst &= src
  void (*and_assign)(Word* dst, const Word* src, std::size_t words);
  std::size_t (*popcount)(const Word* a, std::size_t words);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table() noexcept;

bool cpu_has_avx2() noexcept;

// The dispatched table.
const KernelTable& active() noexcept;

}  // namespace laxfact::kernels
