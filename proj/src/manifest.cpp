#include "edlab/manifest.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "edlab/errors.hpp"
#include "edlab/parallel.hpp"

namespace edlab {

std::string GapId::to_string() const {
  return "(" + std::to_string(order) + "," + std::to_string(index) + ")";
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

int to_int(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw ManifestConflict("manifest line " + std::to_string(line) + ": bad integer '" + s + "'");
  return v;
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(std::istream& in) {
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, '|');
    if (f.size() != 9)
      throw ManifestConflict("manifest line " + std::to_string(lineno) + ": expected 9 fields, got " +
                             std::to_string(f.size()));
    ManifestEntry e;
    e.id = {to_int(f[0], lineno), to_int(f[1], lineno)};
    e.structure = f[2];
    e.expr = f[3];
    e.rd = to_int(f[4], lineno);
    e.ed_lo = to_int(f[5], lineno);
    e.ed_hi = to_int(f[6], lineno);
    e.tag = f[7];
    if (f[8] != "0" && f[8] != "1")
      throw ManifestConflict("manifest line " + std::to_string(lineno) + ": aux flag must be 0 or 1");
    e.auxiliary = f[8] == "1";
    if (!(1 <= e.ed_lo && e.ed_lo <= e.ed_hi && e.ed_hi <= e.rd))
      throw ManifestConflict("manifest line " + std::to_string(lineno) + ": expected values violate 1 <= lo <= hi <= rd");
    if (!e.auxiliary && e.id.order > 63)
      throw ManifestConflict("manifest line " + std::to_string(lineno) + ": table entries must have order <= 63");
    out.push_back(std::move(e));
  }
  return out;
}

Database::Database(std::vector<DatabaseGroup> groups) : groups_(std::move(groups)) {
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    by_id_.emplace(groups_[i].entry.id, i);
    by_order_.emplace(groups_[i].group.order(), i);
  }
}

const DatabaseGroup* Database::find(GapId id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &groups_[it->second];
}

const DatabaseGroup& Database::at(GapId id) const {
  const auto* g = find(id);
  if (!g) throw UnknownId("no group " + id.to_string() + " in the manifest");
  return *g;
}

std::optional<GapId> Database::identify(const GroupTable& G) const {
  if (by_order_.find(G.order()) == by_order_.end()) return std::nullopt;
  return identify(G, fingerprint(G));
}

std::optional<GapId> Database::identify(const GroupTable& G, const GroupFingerprint& f) const {
  const auto [lo, hi] = by_order_.equal_range(G.order());
  for (auto it = lo; it != hi; ++it) {
    const auto& cand = groups_[it->second];
    if (!(cand.fingerprint == f)) continue;
    if (is_isomorphic(G, f, cand.group, cand.fingerprint)) return cand.entry.id;
  }
  return std::nullopt;
}

Database build_database(const std::vector<ManifestEntry>& entries) {
  std::map<GapId, std::size_t> seen;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (!seen.emplace(entries[i].id, i).second)
      throw ManifestConflict("duplicate manifest id " + entries[i].id.to_string());

  auto realize_entry = [](const ManifestEntry& e) {
    GroupTable G = [&] {
      try {
        return realize(e.expr);
      } catch (const Error& err) {
        throw ManifestConflict("manifest entry " + e.id.to_string() + ": " + err.what());
      }
    }();
    if (G.order() != static_cast<std::size_t>(e.id.order))
      throw ManifestConflict("manifest entry " + e.id.to_string() + " realizes a group of order " +
                             std::to_string(G.order()));
    auto f = fingerprint(G);
    return DatabaseGroup{e, std::move(G), std::move(f)};
  };

  std::vector<std::optional<DatabaseGroup>> slots(entries.size());
  parallel_for(entries.size(), [&](std::size_t i) { slots[i] = realize_entry(entries[i]); });
  std::vector<DatabaseGroup> groups;
  for (auto& s : slots) groups.push_back(std::move(*s));

  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const auto& a = groups[i];
      const auto& b = groups[j];
      if (a.group.order() != b.group.order() || !(a.fingerprint == b.fingerprint)) continue;
      if (is_isomorphic(a.group, a.fingerprint, b.group, b.fingerprint))
        throw ManifestConflict("manifest entries " + a.entry.id.to_string() + " and " +
                               b.entry.id.to_string() + " are isomorphic");
    }
  return Database(std::move(groups));
}

Database load_and_verify_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestConflict("cannot open manifest " + path);
  return build_database(parse_manifest(in));
}

std::string default_manifest_path() {
  if (const char* env = std::getenv("EDLAB_MANIFEST"); env && *env) return env;
  return EDLAB_DEFAULT_MANIFEST;
}

}  // namespace edlab
