#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edlab/element_set.hpp"
#include "edlab/group.hpp"
#include "edlab/morphism.hpp"

namespace edlab {

using IntMatrix2 = std::array<std::array<int, 2>, 2>;

/// The four torus-semidirect targets of the ED=2 classification. A matrix A
/// acts on the torus row-wise, t -> tA.
enum class TorusFamily { ii, iii, iv, v };

struct DuncanFamily {
  TorusFamily id;
  std::string label;                  // "ii", ..., "v"
  std::vector<IntMatrix2> generators;
  std::vector<int> forbidden_primes;  // |G n T| must avoid these
  std::size_t actor_order;
};

const std::array<DuncanFamily, 4>& duncan_families();
const DuncanFamily& duncan_family(TorusFamily id);

/// The finite matrix group generated by a family's generators, with the
/// integer matrix of every element.
struct ActorGroup {
  GroupTable table;
  std::vector<IntMatrix2> matrices;  // indexed by element of `table`
};
const ActorGroup& actor_group(TorusFamily id);

struct TorusOvergroup {
  TorusFamily family;
  int modulus = 1;
  GroupTable group;
  ElementSet torus;  // the translation subgroup (Z/m)^2
};

/// (Z/m x Z/m) semidirect the family's actor group, acting affinely on m^2
/// points, with the actor's regular representation appended when the
/// reduction mod m is not faithful. Throws ForbiddenModulus when a prime of
/// m is forbidden, RealizationTooLarge above GroupTable::kMaxOrder.
TorusOvergroup torus_family_overgroup(TorusFamily family, int m);

/// Case labels follow the classification: "i" GL2, "ii".."v" torus
/// families, "vi" PSL(2,7), "vii" S5.
struct DuncanWitness {
  std::string case_label;
  std::optional<TorusFamily> family;
  int modulus = 0;
  std::optional<EmbeddingWitness> embedding;  // absent for case i
  std::size_t torus_intersection = 0;
};

struct DuncanOptions {
  std::uint64_t budget = 10'000'000;
};

/// First embedding found, trying i, vii, vi, then torus overgroups with m
/// ascending and, for each m, families iv, v, iii, ii. `rd` is rd(G).
std::optional<DuncanWitness> duncan_upper(const GroupTable& G, int rd, const DuncanOptions& options = {});

struct CaseCertificate {
  std::string case_label;
  bool excluded = false;
  std::string reason;
};

enum class ExclusionVerdict { Excluded, Inconclusive };

struct ExclusionResult {
  ExclusionVerdict verdict = ExclusionVerdict::Inconclusive;
  std::vector<CaseCertificate> cases;  // i..vii in order
};

/// Sound exclusion from every case of the classification. Torus cases are
/// ruled out through a necessary condition on G n T; a budget-cut search
/// never counts as exclusion.
ExclusionResult duncan_exclusion(const GroupTable& G, int rd, const DuncanOptions& options = {});

/// Rebuilds the target of a witness and checks the embedding.
bool verify_duncan_witness(const GroupTable& G, int rd, const DuncanWitness& w);

}  // namespace edlab
