#pragma once

#include <cstddef>
#include <vector>

#include "edlab/chartab.hpp"
#include "edlab/group.hpp"

namespace edlab {

/// A multiplicity-free set of irreducible characters whose sum is faithful.
struct FaithfulWitness {
  std::vector<int> characters;  // ascending row indices into the character table
  int total_degree = 0;
  std::size_t kernel_intersection_order = 1;
};

struct RepresentationDimension {
  int rd = 0;
  FaithfulWitness witness;
};

/// Minimal degree of a faithful complex representation. Among optimal
/// character sets the lexicographically least index set is returned.
RepresentationDimension representation_dimension(const GroupTable& G, const CharacterTable& table);
RepresentationDimension representation_dimension(const GroupTable& G);

/// True when no proper subset of the witness has trivial kernel intersection.
bool is_irredundant(const GroupTable& G, const CharacterTable& table, const FaithfulWitness& w);

/// Rank of an abelian group, cross-checked against representation_dimension.
/// Throws RankMismatch if they disagree, std::invalid_argument if G is not abelian.
int abelian_rd_check(const GroupTable& G);

}  // namespace edlab
