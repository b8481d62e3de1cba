#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "laxfact/kernels.hpp"

namespace laxfact {

// Fixed-width dynamic bitset; the set operations go through the dispatched kernels.
class Bits {
 public:
  using Word = kernels::Word;
  static constexpr std::size_t kWordBits = 64;

  Bits() = default;
  explicit Bits(std::size_t nbits) : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {}

  std::size_t size() const noexcept { return nbits_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const Word* data() const noexcept { return words_.data(); }
  Word* data() noexcept { return words_.data(); }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void assign(std::size_t i, bool value) noexcept { value ? set(i) : reset(i); }

  void set_all() noexcept {
    for (auto& w : words_) w = ~Word{0};
    trim();
  }
  void clear() noexcept {
    for (auto& w : words_) w = 0;
  }

  bool any() const noexcept {
    for (Word w : words_) {
      if (w != 0) return true;
    }
    return false;
  }
  bool none() const noexcept { return !any(); }

  std::size_t count() const noexcept { return kernels::active().popcount(words_.data(), words_.size()); }

  bool intersects(const Bits& other) const noexcept {
    return kernels::active().intersects(words_.data(), other.words_.data(), words_.size());
  }
  bool is_subset_of(const Bits& other) const noexcept {
    return kernels::active().subset(words_.data(), other.words_.data(), words_.size());
  }

  Bits& operator|=(const Bits& other) noexcept {
    kernels::active().or_assign(words_.data(), other.words_.data(), words_.size());
    return *this;
  }
  Bits& operator&=(const Bits& other) noexcept {
    kernels::active().and_assign(words_.data(), other.words_.data(), words_.size());
    return *this;
  }
  Bits operator~() const {
    Bits out(*this);
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
  }

  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend bool operator==(const Bits&, const Bits&) = default;

  // Index of the first set bit at or after `from`, or size() when none.
  std::size_t find_next(std::size_t from) const noexcept {
    if (from >= nbits_) return nbits_;
    std::size_t wi = from / kWordBits;
    Word w = words_[wi] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w != 0) {
        const std::size_t idx = wi * kWordBits + static_cast<std::size_t>(__builtin_ctzll(w));
        return idx < nbits_ ? idx : nbits_;
      }
      if (++wi >= words_.size()) return nbits_;
      w = words_[wi];
    }
  }
  std::size_t find_first() const noexcept { return find_next(0); }

  template <typename F>
  void for_each(F&& fn) const {
    for (std::size_t i = find_first(); i < nbits_; i = find_next(i + 1)) fn(i);
  }

 private:
  void trim() noexcept {
    if (nbits_ % kWordBits != 0 && !words_.empty()) {
      words_.back() &= (Word{1} << (nbits_ % kWordBits)) - 1;
    }
  }

  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

}  // namespace laxfact
