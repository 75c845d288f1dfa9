#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace grassclique {

/// Fixed-size dynamic bitset tuned for clique search: word-parallel
/// intersections and lowest-set-bit iteration.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }

  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }

  void set_all() noexcept {
    for (auto &w : words_)
      w = ~std::uint64_t{0};
    trim();
  }
  void clear() noexcept {
    for (auto &w : words_)
      w = 0;
  }

  bool any() const noexcept {
    for (auto w : words_)
      if (w)
        return true;
    return false;
  }
  bool none() const noexcept { return !any(); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Index of the lowest set bit, or size() when empty.
  std::size_t first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i])
        return (i << 6) + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return size_;
  }

  /// Lowest set bit strictly after `i`, or size().
  std::size_t next(std::size_t i) const noexcept {
    ++i;
    if (i >= size_)
      return size_;
    std::size_t w = i >> 6;
    std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (i & 63));
    while (!bits) {
      if (++w == words_.size())
        return size_;
      bits = words_[w];
    }
    return (w << 6) + static_cast<std::size_t>(std::countr_zero(bits));
  }

  Bitset &operator&=(const Bitset &o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= o.words_[i];
    return *this;
  }
  Bitset &operator|=(const Bitset &o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= o.words_[i];
    return *this;
  }
  /// this &= ~o
  Bitset &and_not(const Bitset &o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= ~o.words_[i];
    return *this;
  }

  std::size_t intersection_count(const Bitset &o) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }

  /// Keeps only bits with index > i.
  void keep_above(std::size_t i) noexcept {
    const std::size_t w = i >> 6;
    for (std::size_t j = 0; j < w && j < words_.size(); ++j)
      words_[j] = 0;
    if (w < words_.size()) {
      const unsigned b = static_cast<unsigned>(i & 63);
      words_[w] &= b == 63 ? 0 : (~std::uint64_t{0} << (b + 1));
    }
  }

  bool operator==(const Bitset &) const = default;

  template <class F> void for_each(F &&f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f((i << 6) + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

private:
  void trim() noexcept {
    if (size_ & 63)
      words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace grassclique
