#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edlab/group.hpp"
#include "edlab/structure.hpp"

namespace edlab {

/// An injective homomorphism given by images of a generating sequence.
struct EmbeddingWitness {
  std::vector<int> source_generators;  // element indices in the source group
  std::vector<int> images;             // element indices in the target group
};

enum class SearchStatus { Found, NotFound, BudgetExhausted };

struct MonomorphismResult {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<EmbeddingWitness> witness;
  std::uint64_t nodes = 0;
};

struct MonomorphismOptions {
  std::uint64_t budget = 10'000'000;
  /// Require equal centralizer orders (isomorphism search between groups of
  /// equal order); otherwise only divisibility is required.
  bool exact_centralizers = false;
  /// Restrict the first generator's image to conjugacy class representatives
  /// of the target. Valid when only existence matters.
  bool reduce_by_conjugacy = true;
};

/// Backtracking over images of a fixed generating sequence of `source`.
/// BudgetExhausted means inconclusive, never "no embedding".
MonomorphismResult find_monomorphism(const GroupTable& source, const GroupTable& target,
                                     const MonomorphismOptions& options = {});

/// Every injective homomorphism source -> target, as images of
/// `small_generating_set(source)`. Stops after `limit` results.
std::vector<EmbeddingWitness> all_monomorphisms(const GroupTable& source, const GroupTable& target,
                                                std::size_t limit = 1'000'000);

/// Extends a witness to the full element map; nullopt unless it is a
/// well-defined injective homomorphism.
std::optional<std::vector<int>> extend_witness(const GroupTable& source, const GroupTable& target,
                                               const EmbeddingWitness& w);
/// Extends generator images to a homomorphism (every Cayley-graph edge is
/// checked); nullopt if inconsistent, or not injective when `injective`.
std::optional<std::vector<int>> extend_homomorphism(const GroupTable& source,
                                                    const GroupTable& target,
                                                    const std::vector<int>& source_generators,
                                                    const std::vector<int>& images,
                                                    bool injective = false);
bool verify_witness(const GroupTable& source, const GroupTable& target, const EmbeddingWitness& w);

/// Cheap isomorphism-invariant data used to prune candidates.
struct GroupFingerprint {
  StructuralInvariants invariants;
  /// Sorted multiset of (element order, class size, order of the class's
  /// square's class) per conjugacy class.
  std::vector<std::tuple<int, std::size_t, std::size_t>> class_profile;
  friend bool operator==(const GroupFingerprint&, const GroupFingerprint&) = default;
};
GroupFingerprint fingerprint(const GroupTable& G);

/// Decides isomorphism; returns a witness G -> H when isomorphic.
std::optional<EmbeddingWitness> is_isomorphic(const GroupTable& G, const GroupTable& H);
std::optional<EmbeddingWitness> is_isomorphic(const GroupTable& G, const GroupFingerprint& fg,
                                              const GroupTable& H, const GroupFingerprint& fh);

}  // namespace edlab
