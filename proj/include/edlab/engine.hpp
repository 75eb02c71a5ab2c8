#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edlab/duncan.hpp"
#include "edlab/manifest.hpp"
#include "edlab/morphism.hpp"

namespace edlab {

enum class RuleId {
  R1 = 1,  // ed <= rd
  R2,      // trivial center: ed <= rd - 1
  R3,      // abelian: ed = rank
  R4,      // subgroup monotonicity
  R5,      // ed(G) <= [G:H] ed(H)
  R6,      // ed(A x B) <= ed(A) + ed(B)
  R7,      // central subgroup meeting [G,G] trivially
  R8,      // p-groups: ed = rd
  R9,      // ed = 1 exactly for cyclic and odd dihedral groups
  R10,     // embeds in an ED=2 target
  R11,     // excluded from every ED=2 target
  R12,     // nontrivial center and rd >= 3
  R13,     // holomorph of C_q
  R14,     // order 48 with normal Sylow 3-subgroup
};

struct RuleInfo {
  RuleId id;
  std::string_view code;       // "R1"
  std::string_view name;       // "rd-upper"
  std::string_view anchor;     // attribution of the underlying result
  std::string_view statement;  // the bound in one line
};

const std::array<RuleInfo, 14>& rule_catalogue();
const RuleInfo& rule_info(RuleId id);

enum class BoundSide { Lower, Upper };

/// A bound of another group that a step relied on.
struct Premise {
  GapId id;
  BoundSide side;
  int value;
};

struct TraceStep {
  RuleId rule;
  std::optional<int> lo;  // conclusion
  std::optional<int> hi;
  std::vector<Premise> premises;
  /// Rule-specific numbers, e.g. an index, a rank shift, q or m.
  std::vector<int> parameters;
  /// Generators of the subgroup the rule used, as elements of the group the
  /// subgroup lives in.
  std::vector<int> elements;
  std::optional<EmbeddingWitness> embedding;
  std::string label;   // case label or similar short tag
  std::string detail;  // human-readable summary
};

struct EdFact {
  GapId id;
  int rd = 0;
  int lo = 1;
  int hi = 1;
  std::vector<TraceStep> traces;
};

using FactTable = std::map<GapId, EdFact>;

struct EngineOptions {
  std::uint64_t budget = 10'000'000;  // node cap per embedding search
};

struct InferenceResult {
  FactTable facts;
  std::size_t passes = 0;
};

/// Fixed-point propagation over every database group (auxiliary entries
/// included). Throws InconsistentBounds if a lower bound overtakes an upper
/// bound, CertificateFailure if an order-48 embedding cannot be certified.
InferenceResult run_inference(const Database& db, const EngineOptions& options = {});
/// Same, seeded with an earlier fact table (used to check idempotence).
InferenceResult run_inference(const Database& db, FactTable seed, const EngineOptions& options = {});

/// Re-derives the conclusion of `step`, recorded on the fact of `owner`,
/// from its premises and a fresh structural check.
bool replay_step(const Database& db, const FactTable& facts, GapId owner, const TraceStep& step);

// Individual rule evaluators, exposed for reporting and tests.

struct LotscherApplication {
  std::vector<int> central_generators;  // generators of A in G
  std::size_t central_order = 1;
  GapId quotient;
  int center_rank = 0;           // rank Z(G)
  int quotient_center_rank = 0;  // rank Z(G/A)
  /// ed(G) = ed(G/A) + shift.
  int shift() const { return center_rank - quotient_center_rank; }
};
/// Nontrivial central A with A n [G,G] = 1 whose quotient is in the database.
std::vector<LotscherApplication> lotscher_reduction(const GroupTable& G, const Database& db);

/// phi(p-1) p^(n-1) when G is C_q semidirect Aut(C_q), q = p^n.
std::optional<int> ledet_bound(const GroupTable& G);
int ledet_formula(int q);

struct Order48Certificate {
  GapId sylow2;  // id of G/G_3
  EmbeddingWitness embedding;  // G -> G/G_3 x S3
};
/// Present when |G| = 48 and the Sylow 3-subgroup is normal. Throws
/// CertificateFailure if the embedding into G/G_3 x S3 is not found.
std::optional<Order48Certificate> order48_certificate(const GroupTable& G, const Database& db,
                                                      const EngineOptions& options = {});

struct AlphaReport {
  long numerator = 1;
  long denominator = 1;
  GapId attained_by;
  bool exact = false;
};
/// min ed/rd over groups of order <= n, from the engine's bounds.
AlphaReport alpha_ratio(const FactTable& facts, int n);

/// Rule applications in firing order, one line each.
std::string format_trace(const EdFact& fact);
std::string format_step(const TraceStep& step);

}  // namespace edlab
