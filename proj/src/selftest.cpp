#include "edlab/selftest.hpp"

#include <limits>
#include <set>

#include "edlab/repdim.hpp"
#include "edlab/structure.hpp"

namespace edlab {

namespace {

std::string interval(int lo, int hi) { return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }

// Closure of a subset under multiplication; finite, so a subgroup.
ElementSet close_subset(const GroupTable& G, ElementSet s) {
  std::vector<int> members = s.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (int p : {G.mul(members[i], members[j]), G.mul(members[j], members[i])})
        if (!s.contains(static_cast<std::size_t>(p))) {
          s.insert(static_cast<std::size_t>(p));
          members.push_back(p);
        }
  return s;
}

}  // namespace

std::size_t level_order_limit(SelftestLevel level) {
  return level == SelftestLevel::Fast ? 24 : std::numeric_limits<std::size_t>::max();
}

std::vector<std::string> character_table_failures(const GroupTable& G, const CharacterTable& t) {
  std::vector<std::string> out;
  const auto& cls = G.classes();
  const std::size_t r = cls.size();
  const std::uint64_t p = t.prime.p;
  if (t.values.size() != r || t.degrees.size() != r) {
    out.push_back(std::to_string(t.values.size()) + " irreducibles for " + std::to_string(r) + " classes");
    return out;
  }
  std::size_t sum = 0;
  for (int d : t.degrees) sum += static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  if (sum != G.order()) out.push_back("sum of squared degrees " + std::to_string(sum));

  std::vector<std::size_t> inverse(r);
  for (std::size_t j = 0; j < r; ++j) inverse[j] = static_cast<std::size_t>(G.class_of(G.inv(G.class_rep(j))));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < r; ++j) s = (s + cls[j].size() % p * t.values[i][j] % p * t.values[k][inverse[j]]) % p;
      if (s != (i == k ? G.order() % p : 0))
        out.push_back("rows " + std::to_string(i) + "," + std::to_string(k) + " not orthogonal");
    }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < r; ++i) s = (s + t.values[i][j] * t.values[i][inverse[k]]) % p;
      if (s != (j == k ? G.order() / cls[j].size() % p : 0))
        out.push_back("columns " + std::to_string(j) + "," + std::to_string(k) + " not orthogonal");
    }
  return out;
}

int brute_force_rd(const GroupTable& G, const CharacterTable& t) {
  const std::size_t r = t.degrees.size();
  int best = std::numeric_limits<int>::max();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    ElementSet meet = G.full_set();
    int cost = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1U) {
        cost += t.degrees[i];
        meet = meet & t.kernels[i];
      }
    if (meet.count() == 1) best = std::min(best, cost);
  }
  return best;
}

std::vector<ElementSet> brute_force_subgroups(const GroupTable& G) {
  std::set<ElementSet> found{G.trivial_set()};
  std::vector<ElementSet> queue{G.trivial_set()};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t g = 0; g < G.order(); ++g) {
      if (queue[q].contains(g)) continue;
      ElementSet s = queue[q];
      s.insert(g);
      auto H = close_subset(G, std::move(s));
      if (found.insert(H).second) queue.push_back(std::move(H));
    }
  return {found.begin(), found.end()};
}

SuiteResult character_table_suite(const Database& db, std::size_t max_order) {
  SuiteResult r{"character tables", 0, {}};
  for (const auto& g : db.groups()) {
    if (g.group.order() > max_order) continue;
    ++r.checked;
    for (const auto& f : character_table_failures(g.group, character_table(g.group)))
      r.failures.push_back(g.entry.id.to_string() + ": " + f);
  }
  return r;
}

SuiteResult rd_oracle_suite(const Database& db, std::size_t max_order, std::size_t max_classes) {
  SuiteResult r{"rd brute-force oracle", 0, {}};
  for (const auto& g : db.groups()) {
    if (g.group.order() > max_order || g.group.classes().size() > max_classes) continue;
    ++r.checked;
    const auto t = character_table(g.group);
    const int fast = representation_dimension(g.group, t).rd;
    const int slow = brute_force_rd(g.group, t);
    if (fast != slow)
      r.failures.push_back(g.entry.id.to_string() + ": rd " + std::to_string(fast) + ", oracle " + std::to_string(slow));
  }
  return r;
}

SuiteResult subgroup_oracle_suite(const Database& db, std::size_t max_order) {
  SuiteResult r{"subgroup enumeration oracle", 0, {}};
  for (const auto& g : db.groups()) {
    const auto& G = g.group;
    if (G.order() > std::min(max_order, kSubgroupScope)) continue;
    ++r.checked;
    const auto oracle = brute_force_subgroups(G);
    std::set<ElementSet> listed;
    for (const auto& H : all_subgroups(G)) listed.insert(H.mask());
    if (listed != std::set<ElementSet>(oracle.begin(), oracle.end())) {
      r.failures.push_back(g.entry.id.to_string() + ": " + std::to_string(listed.size()) + " subgroups, oracle " +
                           std::to_string(oracle.size()));
      continue;
    }
    // Conjugacy classes of subgroups: orbits under g^-1 H g.
    std::set<ElementSet> remaining(oracle.begin(), oracle.end());
    std::size_t classes = 0;
    while (!remaining.empty()) {
      const ElementSet H = *remaining.begin();
      ++classes;
      for (std::size_t x = 0; x < G.order(); ++x) {
        ElementSet c(G.order());
        for (int h : H.members()) c.insert(static_cast<std::size_t>(G.conj(h, static_cast<int>(x))));
        remaining.erase(c);
      }
    }
    const auto reps = subgroups_up_to_conjugacy(G).size();
    if (reps != classes)
      r.failures.push_back(g.entry.id.to_string() + ": " + std::to_string(reps) + " conjugacy classes, oracle " +
                           std::to_string(classes));
  }
  return r;
}

SuiteResult regression_suite(const Database& db, const FactTable& facts, std::size_t max_order) {
  SuiteResult r{"expected-results regression", 0, {}};
  for (const auto& g : db.groups()) {
    const auto& e = g.entry;
    if (static_cast<std::size_t>(e.id.order) > max_order) continue;
    ++r.checked;
    auto it = facts.find(e.id);
    if (it == facts.end()) {
      r.failures.push_back(e.id.to_string() + ": no fact");
      continue;
    }
    const auto& f = it->second;
    if (f.rd != e.rd) r.failures.push_back(e.id.to_string() + ": rd " + std::to_string(f.rd) + " expected " + std::to_string(e.rd));
    if (f.lo != e.ed_lo || f.hi != e.ed_hi)
      r.failures.push_back(e.id.to_string() + ": ed " + interval(f.lo, f.hi) + " expected " + interval(e.ed_lo, e.ed_hi));
  }
  return r;
}

SuiteResult replay_suite(const Database& db, const FactTable& facts, std::size_t max_order) {
  SuiteResult r{"trace replay", 0, {}};
  for (const auto& [id, f] : facts) {
    if (static_cast<std::size_t>(id.order) > max_order) continue;
    for (const auto& step : f.traces) {
      ++r.checked;
      if (!replay_step(db, facts, id, step)) r.failures.push_back(id.to_string() + ": " + format_step(step));
    }
  }
  return r;
}

SuiteResult idempotence_suite(const Database& db, const FactTable& facts, const EngineOptions& options) {
  SuiteResult r{"inference idempotence", 0, {}};
  const auto again = run_inference(db, facts, options);
  for (const auto& [id, f] : facts) {
    ++r.checked;
    const auto& g = again.facts.at(id);
    if (g.lo != f.lo || g.hi != f.hi || g.traces.size() != f.traces.size())
      r.failures.push_back(id.to_string() + ": " + interval(f.lo, f.hi) + " became " + interval(g.lo, g.hi));
  }
  if (again.passes != 1) r.failures.push_back("rerun took " + std::to_string(again.passes) + " passes");
  return r;
}

std::vector<SuiteResult> run_selftest(const Database& db, SelftestLevel level, const EngineOptions& options) {
  const auto limit = level_order_limit(level);
  std::vector<SuiteResult> out;
  out.push_back(character_table_suite(db, limit));
  out.push_back(rd_oracle_suite(db, limit));
  out.push_back(subgroup_oracle_suite(db, 24));
  const auto result = run_inference(db, options);
  out.push_back(regression_suite(db, result.facts, limit));
  out.push_back(replay_suite(db, result.facts, limit));
  out.push_back(idempotence_suite(db, result.facts, options));
  return out;
}

}  // namespace edlab
