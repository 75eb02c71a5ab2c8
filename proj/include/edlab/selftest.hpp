#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "edlab/chartab.hpp"
#include "edlab/engine.hpp"
#include "edlab/manifest.hpp"

namespace edlab {

/// Outcome of one verification suite.
struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

enum class SelftestLevel { Fast, Full };

/// Largest group order a level covers.
std::size_t level_order_limit(SelftestLevel level);

// Oracles, written independently of the modules they check.

/// sum of squared degrees, row and column orthogonality mod p, and one
/// irreducible per class. Empty when the table passes.
std::vector<std::string> character_table_failures(const GroupTable& G, const CharacterTable& t);
/// Minimal total degree over all character subsets with trivial kernel
/// intersection; exponential in the number of classes.
int brute_force_rd(const GroupTable& G, const CharacterTable& t);
/// Every subgroup, grown one element at a time from the trivial subgroup.
std::vector<ElementSet> brute_force_subgroups(const GroupTable& G);

SuiteResult character_table_suite(const Database& db, std::size_t max_order);
SuiteResult rd_oracle_suite(const Database& db, std::size_t max_order, std::size_t max_classes = 12);
SuiteResult subgroup_oracle_suite(const Database& db, std::size_t max_order);
/// Engine output against the manifest's rd and ed columns.
SuiteResult regression_suite(const Database& db, const FactTable& facts, std::size_t max_order);
SuiteResult replay_suite(const Database& db, const FactTable& facts, std::size_t max_order);
SuiteResult idempotence_suite(const Database& db, const FactTable& facts, const EngineOptions& options);

std::vector<SuiteResult> run_selftest(const Database& db, SelftestLevel level, const EngineOptions& options = {});

}  // namespace edlab
