#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "edlab/group.hpp"

namespace edlab {

struct StructuralInvariants {
  std::size_t order = 0;
  std::size_t exponent = 0;
  std::map<int, std::size_t> element_order_histogram;
  std::vector<std::size_t> class_sizes;  // sorted ascending
  /// Prime-power cyclic factors, sorted ascending; empty iff non-abelian.
  std::vector<std::size_t> abelian_invariants;
  std::size_t center_order = 0;
  std::size_t derived_order = 0;
  std::optional<int> p_group_prime;  // set for nontrivial p-groups

  friend bool operator==(const StructuralInvariants&, const StructuralInvariants&) = default;
};

const std::vector<std::vector<int>>& conjugacy_classes(const GroupTable& G);
StructuralInvariants structural_invariants(const GroupTable& G);

/// Primary decomposition of an abelian group; throws std::invalid_argument on
/// non-abelian input.
std::vector<std::size_t> abelian_invariants(const GroupTable& G);
/// Minimal number of generators of an abelian group given by its primary
/// invariants: the largest number of factors sharing a prime.
int rank_from_invariants(std::span<const std::size_t> invariants);
/// Rank of the abelian subgroup `A` (computed on its elements, no copy).
int abelian_rank(const Subgroup& A);

/// Smallest subgroup containing `elements`.
Subgroup generated_subgroup(const GroupTable& G, std::span<const int> elements);
/// Subgroup generated by `base` together with `extra`.
Subgroup join(const Subgroup& base, std::span<const int> extra);

Subgroup trivial_subgroup(const GroupTable& G);
Subgroup whole_group(const GroupTable& G);
Subgroup center(const GroupTable& G);
Subgroup centralizer(const GroupTable& G, int g);
Subgroup derived_subgroup(const GroupTable& G);
/// Throws NotADivisor when p does not divide |G|.
Subgroup sylow_subgroup(const GroupTable& G, int p);

bool is_normal(const Subgroup& N);
bool is_abelian(const Subgroup& H);
/// Conjugate subgroup g^-1 H g.
Subgroup conjugate(const Subgroup& H, int g);
/// Normal closure of a subset.
Subgroup normal_closure(const GroupTable& G, std::span<const int> elements);

struct NormalSubgroup {
  Subgroup group;
  bool minimal = false;
};
/// All normal subgroups, sorted by (order, member list). The trivial
/// subgroup is included and never flagged minimal.
std::vector<NormalSubgroup> normal_subgroups(const GroupTable& G);
std::vector<Subgroup> minimal_normal_subgroups(const GroupTable& G);

struct Quotient {
  GroupTable group;
  std::vector<int> projection;  // element of G -> element of G/N
};
/// G/N acting regularly on the cosets of N. Throws NotNormal.
Quotient quotient_group(const GroupTable& G, const Subgroup& N);

/// The subgroup as a standalone GroupTable over the same permutations.
GroupTable subgroup_as_group(const Subgroup& H);
/// A short generating sequence: greedy over elements by decreasing order.
std::vector<int> small_generating_set(const Subgroup& H);
std::vector<int> small_generating_set(const GroupTable& G);

/// Every subgroup of G (|G| <= 63), built as joins of at most three cyclic
/// subgroups. Sorted by (order, member list). Throws ScopeExceeded.
std::vector<Subgroup> all_subgroups(const GroupTable& G);
/// One representative per conjugacy class of subgroups: the class member
/// with the lexicographically least member list. Sorted by (order, members).
std::vector<Subgroup> subgroups_up_to_conjugacy(const GroupTable& G);
/// True if some sequence of at most three elements generates G.
bool is_three_generated(const GroupTable& G);

constexpr std::size_t kSubgroupScope = 63;

std::vector<int> prime_factors(std::size_t n);
bool is_prime(std::size_t n);

}  // namespace edlab
