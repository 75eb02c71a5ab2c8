#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edlab/group.hpp"

namespace edlab {

/// Prime used for the modular character computation.
struct DixonPrime {
  std::uint64_t p = 0;
  /// Element of multiplicative order `root_order` modulo p.
  std::uint64_t primitive_root = 0;
  std::uint64_t root_order = 0;  // exponent of the group
};

/// Smallest prime p with p = 1 (mod exponent) and p > 2 * ceil(sqrt(|G|)).
DixonPrime dixon_prime(const GroupTable& G);

/// a[i][j][k] = #{(x, y) : x in class i, y in class j, x*y = rep of class k}.
using ClassConstants = std::vector<std::vector<std::vector<std::uint32_t>>>;
ClassConstants class_algebra_constants(const GroupTable& G);

using ModpMatrix = std::vector<std::vector<std::uint64_t>>;

/// Irreducible character values mod p, one row per character, columns in
/// class order. Rows are sorted by (degree, values). Throws SplittingFailure.
ModpMatrix irreducible_characters_mod_p(const GroupTable& G, const DixonPrime& dp);

/// Eigenvalue multiplicities: [character][class][k] counts eigenvalue
/// zeta^k, zeta = primitive_root^(exponent / m) of order m = order of the
/// class representative. Throws LiftInconsistency.
using Multiplicities = std::vector<std::vector<std::vector<int>>>;
Multiplicities lift_eigenvalue_multiplicities(const GroupTable& G, const DixonPrime& dp,
                                              const ModpMatrix& values);

struct CharacterTable {
  DixonPrime prime;
  ModpMatrix values;
  std::vector<int> degrees;
  Multiplicities multiplicities;
  /// Kernel of each character as an element mask.
  std::vector<ElementSet> kernels;
};

/// Kernels from multiplicities: classes where all eigenvalues are 1.
std::vector<ElementSet> character_kernels(const GroupTable& G, const Multiplicities& mu,
                                          const std::vector<int>& degrees);

CharacterTable character_table(const GroupTable& G);

/// Text dump: degrees and kernel orders, one character per line.
std::string format_chartab(const GroupTable& G, const CharacterTable& t);

}  // namespace edlab
