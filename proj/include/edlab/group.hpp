#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "edlab/element_set.hpp"
#include "edlab/perm.hpp"

namespace edlab {

/// A fully materialized finite permutation group.
///
/// Elements are indexed 0..order-1 in breadth-first order from the identity
/// (index 0), multiplying on the right by the generators in the order given.
/// The full Cayley table is stored, so products, inverses and conjugates are
/// table lookups. Conjugacy classes and element orders are computed once at
/// construction; the object is immutable afterwards.
class GroupTable {
 public:
  static constexpr std::size_t kMaxOrder = 2500;

  /// Throws ClosureBudgetExceeded when the closure would exceed `budget`.
  static GroupTable close_generators(const std::vector<Perm>& gens,
                                     std::size_t budget = kMaxOrder);

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t degree() const noexcept { return degree_; }
  const Perm& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  const std::vector<Perm>& elements() const noexcept { return elements_; }
  /// Element indices of the generators, in the order they were supplied.
  const std::vector<int>& generators() const noexcept { return generators_; }
  std::vector<Perm> generator_perms() const;
  std::optional<int> index_of(const Perm& p) const;

  int mul(int a, int b) const noexcept {
    return table_[static_cast<std::size_t>(a) * order() + static_cast<std::size_t>(b)];
  }
  int inv(int a) const noexcept { return inverse_[static_cast<std::size_t>(a)]; }
  /// g^-1 x g
  int conj(int x, int g) const noexcept { return mul(mul(inv(g), x), g); }
  int pow(int a, long long k) const;
  int commutator(int a, int b) const noexcept { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  int element_order(int a) const noexcept { return orders_[static_cast<std::size_t>(a)]; }

  /// Conjugacy classes: identity first, then sorted by (representative order,
  /// size, smallest element index). Each class is a sorted index list and its
  /// representative is the smallest index.
  const std::vector<std::vector<int>>& classes() const noexcept { return classes_; }
  int class_of(int a) const noexcept { return class_of_[static_cast<std::size_t>(a)]; }
  int class_rep(std::size_t c) const { return classes_[c].front(); }
  std::size_t centralizer_order(int a) const {
    return order() / classes_[static_cast<std::size_t>(class_of(a))].size();
  }

  bool is_abelian() const noexcept { return classes_.size() == order(); }
  ElementSet full_set() const;
  ElementSet trivial_set() const;

 private:
  GroupTable() = default;
  void build_classes();

  std::size_t degree_ = 0;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, int, PermHash> index_;
  std::vector<int> generators_;
  std::vector<std::uint16_t> table_;
  std::vector<int> inverse_;
  std::vector<int> orders_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
};

/// Subgroup of a GroupTable given by an indicator over the parent's elements.
/// Holds a non-owning reference; the parent must outlive it.
class Subgroup {
 public:
  Subgroup(const GroupTable& parent, ElementSet members);

  const GroupTable& parent() const noexcept { return *parent_; }
  const ElementSet& mask() const noexcept { return mask_; }
  const std::vector<int>& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool contains(int g) const noexcept { return mask_.contains(static_cast<std::size_t>(g)); }
  bool is_subgroup_of(const Subgroup& other) const { return mask_.is_subset_of(other.mask_); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.mask_ == b.mask_;
  }

 private:
  const GroupTable* parent_;
  ElementSet mask_;
  std::vector<int> members_;
};

}  // namespace edlab
