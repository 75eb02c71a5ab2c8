#include <doctest.h>

#include <edlab/engine.hpp>
#include <edlab/errors.hpp>
#include <edlab/manifest.hpp>
#include <edlab/shape.hpp>
#include <edlab/structure.hpp>

#include <algorithm>
#include <numeric>
#include <set>

using namespace edlab;

namespace {

const Database& database() {
  static const Database db = load_and_verify_manifest(default_manifest_path());
  return db;
}

const InferenceResult& inference() {
  static const InferenceResult r = run_inference(database());
  return r;
}

const EdFact& fact(int order, int index) { return inference().facts.at({order, index}); }

bool fired(const EdFact& f, RuleId rule) {
  return std::any_of(f.traces.begin(), f.traces.end(), [&](const TraceStep& s) { return s.rule == rule; });
}

int totient_by_counting(int n) {
  int c = 0;
  for (int k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

}  // namespace

TEST_CASE("rule catalogue is fixed") {
  const auto& cat = rule_catalogue();
  const char* names[] = {"rd-upper", "center-trivial-upper", "abelian", "subgroup-lower", "index-upper",
                         "product-upper", "lotscher", "km-p-group", "ed1-classification", "duncan-upper",
                         "duncan-exclusion", "center-nontrivial-lower", "ledet", "order48"};
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(static_cast<std::size_t>(cat[i].id) == i + 1);
    CHECK(cat[i].code == "R" + std::to_string(i + 1));
    CHECK(cat[i].name == names[i]);
    CHECK(!cat[i].anchor.empty());
    CHECK(&rule_info(cat[i].id) == &cat[i]);
  }
}

TEST_CASE("ledet formula") {
  // phi(p-1) p^(n-1), oracle from counting.
  const std::pair<int, std::pair<int, int>> cases[] = {{3, {3, 1}}, {5, {5, 1}}, {7, {7, 1}}, {9, {3, 2}},
                                                      {8, {2, 3}}, {25, {5, 2}}, {13, {13, 1}}};
  for (auto [q, pn] : cases) {
    auto [p, n] = pn;
    int power = 1;
    for (int i = 1; i < n; ++i) power *= p;
    CHECK(ledet_formula(q) == totient_by_counting(p - 1) * power);
  }
  CHECK(ledet_formula(7) == 2);
  CHECK_THROWS(ledet_formula(12));

  const auto& db = database();
  CHECK(ledet_bound(db.at({42, 1}).group) == 2);
  CHECK(ledet_bound(db.at({20, 3}).group) == 2);
  CHECK(ledet_bound(db.at({6, 1}).group) == 1);
  CHECK(ledet_bound(db.at({54, 6}).group) == 3);
  CHECK_FALSE(ledet_bound(db.at({12, 3}).group));
  CHECK_FALSE(ledet_bound(db.at({40, 3}).group));
}

TEST_CASE("shape of a metacyclic group whose exponent equals its order") {
  // C5 : C8 with a -> a^2 has elements of order 8 and 5 but none of order 40.
  const auto s = recognize_shape(database().at({40, 3}).group);
  CHECK_FALSE(s.cyclic);
  CHECK(recognize_shape(database().at({40, 2}).group).cyclic);
}

TEST_CASE("lotscher reduction") {
  const auto& db = database();
  auto apps = lotscher_reduction(db.at({36, 7}).group, db);
  auto it = std::find_if(apps.begin(), apps.end(), [](const auto& a) { return a.quotient == GapId{18, 4}; });
  REQUIRE(it != apps.end());
  CHECK(it->central_order == 2);
  CHECK(it->shift() == 1);

  apps = lotscher_reduction(db.at({48, 42}).group, db);
  it = std::find_if(apps.begin(), apps.end(), [](const auto& a) { return a.quotient == GapId{12, 1}; });
  REQUIRE(it != apps.end());
  CHECK(it->central_order == 4);
  CHECK(it->center_rank == 3);
  CHECK(it->quotient_center_rank == 1);
  CHECK(fact(12, 1).lo == 2);
  CHECK(fact(12, 1).hi - it->quotient_center_rank + it->center_rank == 4);

  CHECK(lotscher_reduction(db.at({6, 1}).group, db).empty());
  CHECK(lotscher_reduction(db.at({60, 5}).group, db).empty());
}

TEST_CASE("order 48 certificates") {
  const auto& db = database();
  const std::pair<GapId, GapId> cases[] = {{{48, 15}, {16, 7}}, {{48, 18}, {16, 9}}, {{48, 39}, {16, 13}}};
  for (auto [g, g2] : cases) {
    CAPTURE(g.to_string());
    const auto cert = order48_certificate(db.at(g).group, db);
    REQUIRE(cert);
    CHECK(cert->sylow2 == g2);
    CHECK(fact(g2.order, g2.index).hi + 1 == 3);
  }
  // GL(2,3): the Sylow 3-subgroup is not normal.
  CHECK_FALSE(order48_certificate(db.at({48, 29}).group, db));
  CHECK_FALSE(order48_certificate(db.at({24, 12}).group, db));
}

TEST_CASE("inference reproduces the tabulated intervals") {
  std::size_t checked = 0;
  for (const auto& g : database().groups()) {
    CAPTURE(g.entry.id.to_string());
    const auto& f = inference().facts.at(g.entry.id);
    CHECK(f.rd == g.entry.rd);
    CHECK(f.lo == g.entry.ed_lo);
    CHECK(f.hi == g.entry.ed_hi);
    ++checked;
  }
  CHECK(checked == database().groups().size());
  CHECK(fact(36, 7).lo == 3);
  CHECK(fact(36, 7).hi == 3);
  CHECK(fact(48, 38).hi == 3);
  CHECK(fact(54, 7).hi == 2);
  CHECK(fact(60, 7).lo == 3);
  CHECK((fact(54, 5).lo == 3 && fact(54, 5).hi == 5));
  CHECK((fact(55, 1).lo == 3 && fact(55, 1).hi == 4));
  CHECK((fact(56, 11).lo == 3 && fact(56, 11).hi == 6));
}

TEST_CASE("named derivations") {
  CHECK(fired(fact(6, 1), RuleId::R9));

  const auto& f545 = fact(54, 5);
  CHECK(fired(f545, RuleId::R2));
  const auto r4 = std::find_if(f545.traces.begin(), f545.traces.end(),
                               [](const TraceStep& s) { return s.rule == RuleId::R4 && s.lo == 3; });
  REQUIRE(r4 != f545.traces.end());
  CHECK(r4->premises.at(0).id.order == 27);

  const auto& f421 = fact(42, 1);
  const auto r13 = std::find_if(f421.traces.begin(), f421.traces.end(),
                                [](const TraceStep& s) { return s.rule == RuleId::R13; });
  REQUIRE(r13 != f421.traces.end());
  CHECK(r13->parameters.at(0) == 7);
  CHECK(r13->hi == 2);

  CHECK(fired(fact(55, 1), RuleId::R11));
  CHECK(fired(fact(55, 1), RuleId::R2));
  CHECK((fact(8, 4).lo == 2 && fact(8, 4).hi == 2 && fired(fact(8, 4), RuleId::R8)));
  CHECK(fired(fact(48, 15), RuleId::R14));
  CHECK(fired(fact(36, 7), RuleId::R7));
}

TEST_CASE("fact invariants") {
  for (const auto& [id, f] : inference().facts) {
    CAPTURE(id.to_string());
    CHECK(1 <= f.lo);
    CHECK(f.lo <= f.hi);
    CHECK(f.hi <= f.rd);
    REQUIRE(!f.traces.empty());
    CHECK(f.traces.front().rule == RuleId::R1);
    if (recognize_shape(database().at(id).group).p_group) {
      CHECK(f.lo == f.rd);
      CHECK(f.hi == f.rd);
    }
  }
}

TEST_CASE("lotscher equation holds in both directions at the fixed point") {
  const auto& db = database();
  for (const auto& g : db.groups()) {
    for (const auto& app : lotscher_reduction(g.group, db)) {
      CAPTURE(g.entry.id.to_string());
      CAPTURE(app.quotient.to_string());
      const auto& big = inference().facts.at(g.entry.id);
      const auto& q = inference().facts.at(app.quotient);
      CHECK(big.lo == q.lo + app.shift());
      CHECK(big.hi == q.hi + app.shift());
    }
  }
}

TEST_CASE("every trace step replays") {
  const auto& facts = inference().facts;
  std::size_t steps = 0;
  for (const auto& [id, f] : facts)
    for (const auto& s : f.traces) {
      CAPTURE(format_step(s));
      CHECK(replay_step(database(), facts, id, s));
      ++steps;
    }
  CHECK(steps > facts.size());

  // A tampered conclusion does not replay.
  auto step = facts.at({42, 1}).traces.back();
  REQUIRE(step.rule == RuleId::R13);
  step.hi = 1;
  CHECK_FALSE(replay_step(database(), facts, {42, 1}, step));
  auto r4 = *std::find_if(facts.at({54, 5}).traces.begin(), facts.at({54, 5}).traces.end(),
                          [](const TraceStep& s) { return s.rule == RuleId::R4; });
  r4.premises[0].id = GapId{27, 5};
  CHECK_FALSE(replay_step(database(), facts, {54, 5}, r4));
}

TEST_CASE("inference is idempotent") {
  const auto again = run_inference(database(), inference().facts);
  CHECK(again.passes == 1);
  for (const auto& [id, f] : inference().facts) {
    const auto& g = again.facts.at(id);
    CHECK(g.lo == f.lo);
    CHECK(g.hi == f.hi);
    CHECK(g.traces.size() == f.traces.size());
  }
}

TEST_CASE("contradictory seed raises InconsistentBounds") {
  FactTable seed = inference().facts;
  seed.at({6, 1}).lo = 2;
  seed.at({6, 1}).hi = 2;
  CHECK_THROWS_AS(run_inference(database(), seed), InconsistentBounds);
  seed = inference().facts;
  seed.at({6, 1}).rd = 3;
  CHECK_THROWS_AS(run_inference(database(), seed), InconsistentBounds);
}

TEST_CASE("alpha ratio") {
  // Oracle: minimum of tabulated ed_lo / rd, compared by cross-multiplication.
  const auto oracle = [](int n) {
    std::pair<int, int> best{1, 1};
    for (const auto& g : database().groups()) {
      const auto& e = g.entry;
      if (e.id.order > n) continue;
      if (e.ed_lo * best.second < best.first * e.rd) best = {e.ed_lo, e.rd};
    }
    const int d = std::gcd(best.first, best.second);
    return std::pair<long, long>{best.first / d, best.second / d};
  };
  for (int n : {5, 8, 12, 31, 47, 63}) {
    CAPTURE(n);
    const auto a = alpha_ratio(inference().facts, n);
    CHECK(std::pair<long, long>{a.numerator, a.denominator} == oracle(n));
  }
  const auto a63 = alpha_ratio(inference().facts, 63);
  CHECK(a63.numerator == 1);
  CHECK(a63.denominator == 3);
  CHECK(a63.attained_by == GapId{42, 1});
  CHECK(a63.exact);

  const auto a8 = alpha_ratio(inference().facts, 8);
  CHECK(a8.numerator == 1);
  CHECK(a8.denominator == 2);
  CHECK(a8.attained_by == GapId{6, 1});

  const auto a5 = alpha_ratio(inference().facts, 5);
  CHECK(a5.numerator == 1);
  CHECK(a5.denominator == 1);
  CHECK(a5.exact);
}

TEST_CASE("trace text") {
  const auto text = format_trace(fact(42, 1));
  CHECK(text.rfind("(42,1) rd 6 ed [2,2]\n", 0) == 0);
  CHECK(text.find("R13 ledet: ed <= 2") != std::string::npos);
  CHECK(text.find(std::string(rule_info(RuleId::R13).anchor)) != std::string::npos);
}
