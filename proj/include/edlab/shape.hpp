#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edlab/group.hpp"

namespace edlab {

/// Structural shape tags, each proven by explicit elements or counts.
struct ShapeTags {
  bool cyclic = false;
  bool abelian = false;
  std::optional<int> dihedral_order;  // |G| = 2n with n >= 3
  bool odd_dihedral = false;
  bool generalized_quaternion = false;
  std::optional<int> p_group;
  /// q when G is C_q semidirect Aut(C_q) with q a prime power.
  std::optional<int> holomorph_q;

  std::vector<std::string> tags() const;
};

ShapeTags recognize_shape(const GroupTable& G);

/// Dihedral test for |G| = 2n, n >= 3: a cyclic subgroup of order n and an
/// involution outside it inverting its generator. Returns (r, s) on success.
std::optional<std::pair<int, int>> dihedral_generators(const GroupTable& G);
/// Holomorph test; returns q on success.
std::optional<int> cyclic_holomorph_q(const GroupTable& G);

}  // namespace edlab
