#pragma once

#include <compare>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edlab/dsl.hpp"
#include "edlab/group.hpp"
#include "edlab/morphism.hpp"

namespace edlab {

/// Small-groups catalogue label (order, index).
struct GapId {
  int order = 0;
  int index = 0;
  friend auto operator<=>(const GapId&, const GapId&) = default;
  std::string to_string() const;
};

struct ManifestEntry {
  GapId id;
  std::string structure;
  std::string expr;
  int rd = 0;
  int ed_lo = 0;
  int ed_hi = 0;
  std::string tag;  // catalogue rule id of the principal explanation, e.g. "R9"
  bool auxiliary = false;
};

/// Parses manifest lines `order|index|structure|expr|rd|edLo|edHi|tag|aux`.
/// Blank lines and lines starting with '#' are skipped. Throws
/// ManifestConflict on malformed lines.
std::vector<ManifestEntry> parse_manifest(std::istream& in);

struct DatabaseGroup {
  ManifestEntry entry;
  GroupTable group;
  GroupFingerprint fingerprint;
};

/// Immutable collection of realized manifest groups.
class Database {
 public:
  explicit Database(std::vector<DatabaseGroup> groups);

  const std::vector<DatabaseGroup>& groups() const noexcept { return groups_; }
  const DatabaseGroup* find(GapId id) const;
  const DatabaseGroup& at(GapId id) const;  // throws UnknownId
  /// The entry isomorphic to G, if any.
  std::optional<GapId> identify(const GroupTable& G) const;
  std::optional<GapId> identify(const GroupTable& G, const GroupFingerprint& f) const;

 private:
  std::vector<DatabaseGroup> groups_;
  std::map<GapId, std::size_t> by_id_;
  std::multimap<std::size_t, std::size_t> by_order_;
};

/// Realizes every entry and checks ids: duplicate ids, order mismatches and
/// isomorphic entries raise ManifestConflict naming the offending ids.
Database build_database(const std::vector<ManifestEntry>& entries);
Database load_and_verify_manifest(const std::string& path);
/// EDLAB_MANIFEST if set, else the bundled manifest.
std::string default_manifest_path();

}  // namespace edlab
