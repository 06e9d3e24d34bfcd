#ifndef BIL_WORLD_SET_HPP
#define BIL_WORLD_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace bil {

// Fixed-size bitset over world indices [0, size).  Bits past size() are
// always zero so equality and hashing work on the raw words.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static WorldSet full(std::size_t size) {
    WorldSet s(size);
    for (std::size_t i = 0; i < size; ++i) s.set(i);
    return s;
  }

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool value) noexcept {
    if (value) {
      set(i);
    } else {
      reset(i);
    }
  }

  bool none() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  bool any() const noexcept { return !none(); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  WorldSet& operator&=(const WorldSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  WorldSet& operator|=(const WorldSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // this := this \ o
  WorldSet& subtract(const WorldSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend WorldSet operator&(WorldSet a, const WorldSet& b) noexcept { return a &= b; }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) noexcept { return a |= b; }

  bool intersects(const WorldSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }
  bool is_subset_of(const WorldSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  // Calls f(i) for every member in increasing order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<std::uint64_t>& words() noexcept { return words_; }

  friend bool operator==(const WorldSet& a, const WorldSet& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct WorldSetHash {
  std::size_t operator()(const WorldSet& s) const noexcept { return s.hash(); }
};

}  // namespace bil

#endif  // BIL_WORLD_SET_HPP
