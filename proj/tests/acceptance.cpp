// One pass/fail line per acceptance criterion; exit status 1 if any fails.

#include <edlab/duncan.hpp>
#include <edlab/engine.hpp>
#include <edlab/errors.hpp>
#include <edlab/manifest.hpp>
#include <edlab/morphism.hpp>
#include <edlab/repdim.hpp>
#include <edlab/selftest.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace edlab;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::string cli_output(const std::string& args) {
  const std::string cmd = std::string(EDLAB_CLI_PATH) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

std::string range_text(int lo, int hi) { return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const Database db = load_and_verify_manifest(default_manifest_path());
  const InferenceResult inference = run_inference(db);
  const FactTable& facts = inference.facts;
  auto fact = [&](int o, int i) -> const EdFact& { return facts.at({o, i}); };
  auto non_abelian_table_rows = [&](auto&& fn) {
    for (const auto& g : db.groups())
      if (!g.entry.auxiliary && !g.group.is_abelian()) fn(g);
  };

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;

  criteria.emplace_back("rd regression over every tabulated non-abelian group", [&] {
    Outcome o;
    std::size_t n = 0;
    const auto t0 = std::chrono::steady_clock::now();
    non_abelian_table_rows([&](const DatabaseGroup& g) {
      ++n;
      const int rd = representation_dimension(g.group).rd;
      o.require(rd == g.entry.rd, g.entry.id.to_string() + " rd " + std::to_string(rd) + " expected " +
                                      std::to_string(g.entry.rd));
    });
    const std::pair<GapId, int> anchors[] = {{{12, 3}, 3}, {{32, 27}, 4}, {{42, 1}, 6},
                                             {{48, 50}, 6}, {{54, 5}, 6}, {{56, 11}, 7}};
    for (auto [id, rd] : anchors)
      o.require(representation_dimension(db.at(id).group).rd == rd, id.to_string() + " anchor");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < 600, "runtime above 10 minutes");
    o.notes.insert(o.notes.begin(), std::to_string(n) + " groups");
    return o;
  });

  criteria.emplace_back("ed regression, exact intervals including the three open cases", [&] {
    Outcome o;
    std::size_t n = 0;
    non_abelian_table_rows([&](const DatabaseGroup& g) {
      ++n;
      const auto& f = facts.at(g.entry.id);
      o.require(f.lo == g.entry.ed_lo && f.hi == g.entry.ed_hi,
                g.entry.id.to_string() + " " + range_text(f.lo, f.hi) + " expected " +
                    range_text(g.entry.ed_lo, g.entry.ed_hi));
    });
    const std::tuple<GapId, int, int> named[] = {{{36, 7}, 3, 3},  {{48, 38}, 3, 3}, {{54, 7}, 2, 2},
                                                 {{60, 7}, 3, 3},  {{54, 5}, 3, 5},  {{55, 1}, 3, 4},
                                                 {{56, 11}, 3, 6}};
    for (auto [id, lo, hi] : named) {
      const auto& f = facts.at(id);
      o.require(f.lo == lo && f.hi == hi, id.to_string() + " " + range_text(f.lo, f.hi));
    }
    o.notes.insert(o.notes.begin(), std::to_string(n) + " groups");
    return o;
  });

  criteria.emplace_back("order 32 block has ed = rd", [&] {
    Outcome o;
    std::size_t n = 0;
    non_abelian_table_rows([&](const DatabaseGroup& g) {
      if (g.entry.id.order != 32) return;
      ++n;
      const auto& f = facts.at(g.entry.id);
      o.require(f.lo == f.rd && f.hi == f.rd && f.rd == g.entry.rd, g.entry.id.to_string());
    });
    o.require(n == 44, std::to_string(n) + " non-abelian groups of order 32");
    o.require(fact(32, 2).lo == 4 && fact(32, 2).hi == 4, "(32,2)");
    o.require(fact(32, 11).lo == 2 && fact(32, 11).hi == 2, "(32,11)");
    o.require(fact(32, 50).lo == 4 && fact(32, 50).hi == 4, "(32,50)");
    o.notes.insert(o.notes.begin(), std::to_string(n) + " groups");
    return o;
  });

  criteria.emplace_back("alpha(63) = 1/3 attained by (42,1), exact", [&] {
    Outcome o;
    const auto a = alpha_ratio(facts, 63);
    o.require(a.numerator == 1 && a.denominator == 3,
              "value " + std::to_string(a.numerator) + "/" + std::to_string(a.denominator));
    o.require(a.attained_by == GapId{42, 1}, "attained by " + a.attained_by.to_string());
    o.require(a.exact, "certainty");
    return o;
  });

  criteria.emplace_back("embedding certificates and the (60,7) exclusion", [&] {
    Outcome o;
    const std::pair<GapId, GapId> embeddings[] = {
        {{48, 50}, {144, 184}}, {{54, 14}, {216, 162}}, {{54, 7}, {108, 16}}, {{21, 1}, {168, 42}}};
    for (auto [src, tgt] : embeddings) {
      const auto& S = db.at(src).group;
      const auto& T = db.at(tgt).group;
      const auto r = find_monomorphism(S, T);
      o.require(r.status == SearchStatus::Found && verify_witness(S, T, *r.witness),
                src.to_string() + " into " + db.at(tgt).entry.structure);
    }
    const auto& G39 = db.at({39, 1}).group;
    const int rd39 = representation_dimension(G39).rd;
    const auto w = duncan_upper(G39, rd39);
    o.require(w && w->family == TorusFamily::iv && w->modulus == 13 && verify_duncan_witness(G39, rd39, *w),
              "(39,1) into the family iv overgroup at m = 13");
    const auto& G60 = db.at({60, 7}).group;
    const auto ex = duncan_exclusion(G60, representation_dimension(G60).rd);
    bool all_cases = ex.cases.size() == 7;
    for (const auto& c : ex.cases) all_cases = all_cases && c.excluded;
    o.require(ex.verdict == ExclusionVerdict::Excluded && all_cases, "(60,7) exclusion");
    return o;
  });

  criteria.emplace_back("property suites", [&] {
    Outcome o;
    const SuiteResult suites[] = {
        character_table_suite(db, level_order_limit(SelftestLevel::Full)),
        rd_oracle_suite(db, level_order_limit(SelftestLevel::Full), 12),
        subgroup_oracle_suite(db, 24),
        replay_suite(db, facts, level_order_limit(SelftestLevel::Full)),
        idempotence_suite(db, facts, {}),
    };
    for (const auto& s : suites) {
      o.notes.push_back(s.name + " " + std::to_string(s.checked));
      o.require(s.passed() && s.checked > 0, s.name + ": " + (s.failures.empty() ? "nothing checked" : s.failures[0]));
    }
    return o;
  });

  criteria.emplace_back("Ledet bound at q = 7 and the ratio demonstration", [&] {
    Outcome o;
    o.require(ledet_formula(7) == 2, "formula at q = 7");
    o.require(ledet_bound(db.at({42, 1}).group) == 2, "bound for (42,1)");
    const auto out = cli_output("alpha 63");
    o.require(out.find("1/3 attained by (42,1) [exact]") != std::string::npos, "alpha headline");
    o.require(out.find("ratio 2/6 = 1/3 for (42,1)") != std::string::npos, "ratio line");
    return o;
  });

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first;
    if (!o.notes.empty()) {
      std::cout << " (";
      for (std::size_t k = 0; k < o.notes.size() && k < 6; ++k) std::cout << (k ? "; " : "") << o.notes[k];
      if (o.notes.size() > 6) std::cout << "; ...";
      std::cout << ")";
    }
    std::cout << "\n";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (all ? "all criteria pass" : "some criteria fail") << " in " << static_cast<int>(secs) << " s\n";
  return all ? 0 : 1;
}
