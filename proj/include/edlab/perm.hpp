#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace edlab {

using Point = std::uint16_t;

/// A permutation of {0, ..., degree-1}, stored as its image list.
///
/// Products follow the right-action convention used by most computer algebra
/// systems: `(a * b)[x] == b[a[x]]`, i.e. `a` is applied first.
class Perm {
 public:
  Perm() = default;
  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  /// Builds a permutation from disjoint cycles of 0-based points.
  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<std::size_t>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t x) const noexcept { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  bool is_identity() const noexcept;
  /// Pads with fixed points up to `degree` (which must be >= current degree).
  Perm extended(std::size_t degree) const;
  /// Relabels points by adding `offset` and pads to `degree`.
  Perm shifted(std::size_t offset, std::size_t degree) const;

  /// Disjoint-cycle notation, e.g. "(0 1 2)(3 4)"; identity prints as "()".
  std::vector<std::vector<std::size_t>> cycles() const;
  std::string to_string() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace edlab
