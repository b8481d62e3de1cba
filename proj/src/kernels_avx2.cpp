// Compiled with -mavx2 when the toolchain targets x86; otherwise exports a null table.
#include "laxfact/kernels.hpp"

#if defined(LAXFACT_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

namespace laxfact::kernels {

namespace {

bool intersects_avx2(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(va, vb)) return true;
  }
  for (; i < words; ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

bool subset_avx2(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // testc(vb, va) is 1 iff (~vb & va) == 0
    if (!_mm256_testc_si256(vb, va)) return false;
  }
  for (; i < words; ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

void or_assign_avx2(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(vd, vs));
  }
  for (; i < words; ++i) dst[i] |= src[i];
}

void and_assign_avx2(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i vd = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(vd, vs));
  }
  for (; i < words; ++i) dst[i] &= src[i];
}

// No AVX2 popcount instruction; the hardware popcnt per word is already optimal here.
std::size_t popcount_avx2(const Word* a, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += static_cast<std::size_t>(std::popcount(a[i]));
  return n;
}

constexpr KernelTable kAvx2{"avx2",         intersects_avx2, subset_avx2,
                            or_assign_avx2, and_assign_avx2, popcount_avx2};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace laxfact::kernels

#else

namespace laxfact::kernels {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace laxfact::kernels

#endif
