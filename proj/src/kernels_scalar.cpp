#include "laxfact/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>

namespace laxfact::kernels {

namespace {

bool intersects_scalar(const Word* a, const Word* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

bool subset_scalar(const Word* a, const Word* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

void or_assign_scalar(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

void and_assign_scalar(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] &= src[i];
}

std::size_t popcount_scalar(const Word* a, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

constexpr KernelTable kScalar{"scalar",          intersects_scalar, subset_scalar,
                              or_assign_scalar, and_assign_scalar, popcount_scalar};

const KernelTable& choose() noexcept {
  const char* forced = std::getenv("LAXFACT_KERNEL");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return kScalar;
  if (const KernelTable* t = avx2_table(); t != nullptr && cpu_has_avx2()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& table = choose();
  return table;
}

}  // namespace laxfact::kernels
