#include <doctest.h>

#include <random>
#include <vector>

#include "laxfact/bits.hpp"
#include "laxfact/kernels.hpp"

using laxfact::kernels::Word;

namespace {

std::vector<Word> random_words(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<Word> out(n);
  std::bernoulli_distribution bit(density);
  for (auto& w : out) {
    for (int b = 0; b < 64; ++b) {
      if (bit(rng)) w |= Word{1} << b;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("scalar and avx2 kernels agree") {
  const auto& scalar = laxfact::kernels::scalar_table();
  const auto* simd = laxfact::kernels::avx2_table();
  if (simd == nullptr || !laxfact::kernels::cpu_has_avx2()) {
    MESSAGE("avx2 kernels unavailable, equivalence skipped");
    return;
  }
  std::mt19937_64 rng(20261018);
  for (std::size_t words : {0U, 1U, 3U, 4U, 5U, 8U, 13U, 32U, 33U}) {
    for (double density : {0.0, 0.02, 0.5, 0.98, 1.0}) {
      for (int rep = 0; rep < 20; ++rep) {
        auto a = random_words(rng, words, density);
        auto b = random_words(rng, words, density);
        if (rep % 4 == 0) {
          for (std::size_t i = 0; i < words; ++i) a[i] &= b[i];
        }
        CHECK(scalar.intersects(a.data(), b.data(), words) == simd->intersects(a.data(), b.data(), words));
        CHECK(scalar.subset(a.data(), b.data(), words) == simd->subset(a.data(), b.data(), words));
        CHECK(scalar.popcount(a.data(), words) == simd->popcount(a.data(), words));
        auto s = a, v = a;
        scalar.or_assign(s.data(), b.data(), words);
        simd->or_assign(v.data(), b.data(), words);
        CHECK(s == v);
        s = a;
        v = a;
        scalar.and_assign(s.data(), b.data(), words);
        simd->and_assign(v.data(), b.data(), words);
        CHECK(s == v);
      }
    }
  }
}

TEST_CASE("bits basics") {
  laxfact::Bits b(130);
  CHECK(b.none());
  b.set(0);
  b.set(64);
  b.set(129);
  CHECK(b.count() == 3);
  CHECK(b.find_first() == 0);
  CHECK(b.find_next(1) == 64);
  CHECK(b.find_next(65) == 129);
  CHECK(b.find_next(130) == 130);
  auto c = ~b;
  CHECK(c.count() == 127);
  CHECK_FALSE(c.intersects(b));
  laxfact::Bits d(130);
  d.set(64);
  CHECK(d.is_subset_of(b));
  CHECK_FALSE(b.is_subset_of(d));
  std::vector<std::size_t> seen;
  b.for_each([&](std::size_t i) { seen.push_back(i); });
  CHECK(seen == std::vector<std::size_t>{0, 64, 129});
}
