#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace edlab {

/// Dense indicator set over the element indices of one group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : size_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return size_; }
  bool contains(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void insert(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool is_subset_of(const ElementSet& other) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }
  ElementSet operator&(const ElementSet& other) const {
    ElementSet out(size_);
    for (std::size_t k = 0; k < words_.size(); ++k) out.words_[k] = words_[k] & other.words_[k];
    return out;
  }
  ElementSet operator|(const ElementSet& other) const {
    ElementSet out(size_);
    for (std::size_t k = 0; k < words_.size(); ++k) out.words_[k] = words_[k] | other.words_[k];
    return out;
  }
  std::vector<int> members() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        out.push_back(static_cast<int>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
    return out;
  }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  /// Lexicographic order on the sorted member lists.
  friend bool operator<(const ElementSet& a, const ElementSet& b) { return a.members() < b.members(); }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : s.words()) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace edlab
