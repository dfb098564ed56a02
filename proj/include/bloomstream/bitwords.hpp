#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace bloomstream::bitwords {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

constexpr bool test(std::span<const Word> words, std::size_t bit) {
  return (words[bit / kWordBits] >> (bit % kWordBits)) & 1U;
}

constexpr void set(std::span<Word> words, std::size_t bit) {
  words[bit / kWordBits] |= Word{1} << (bit % kWordBits);
}

constexpr void reset(std::span<Word> words, std::size_t bit) {
  words[bit / kWordBits] &= ~(Word{1} << (bit % kWordBits));
}

constexpr std::size_t popcount(std::span<const Word> words) {
  std::size_t n = 0;
  for (Word w : words) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

constexpr bool any(std::span<const Word> words) {
  for (Word w : words) {
    if (w != 0) return true;
  }
  return false;
}

// Calls fn(bit) for every set bit, ascending.
template <typename Fn>
constexpr void for_each_set_bit(std::span<const Word> words, Fn&& fn) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word word = words[w];
    while (word != 0) {
      const auto low = static_cast<std::size_t>(std::countr_zero(word));
      fn(w * kWordBits + low);
      word &= word - 1;
    }
  }
}

}  // namespace bloomstream::bitwords
