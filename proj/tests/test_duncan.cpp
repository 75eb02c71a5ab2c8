#include <doctest.h>

#include <edlab/dsl.hpp>
#include <edlab/duncan.hpp>
#include <edlab/errors.hpp>
#include <edlab/manifest.hpp>
#include <edlab/repdim.hpp>
#include <edlab/shape.hpp>
#include <edlab/structure.hpp>

#include <algorithm>

using namespace edlab;

namespace {

const Database& database() {
  static const Database db = load_and_verify_manifest(default_manifest_path());
  return db;
}

const GroupTable& group(int order, int index) { return database().at({order, index}).group; }

int rd_of(const GroupTable& G) { return representation_dimension(G).rd; }

// Integer 2x2 product, row-vector convention.
IntMatrix2 times(const IntMatrix2& a, const IntMatrix2& b) {
  IntMatrix2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

// Closure of the generators under integer multiplication.
std::size_t integer_closure_order(const std::vector<IntMatrix2>& gens) {
  std::vector<IntMatrix2> seen{{{{1, 0}, {0, 1}}}};
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (const auto& g : gens) {
      auto p = times(seen[i], g);
      if (std::find(seen.begin(), seen.end(), p) == seen.end()) seen.push_back(p);
    }
  return seen.size();
}

}  // namespace

TEST_CASE("family generators and actor orders") {
  using M = IntMatrix2;
  const auto& ii = duncan_family(TorusFamily::ii);
  CHECK(ii.generators == std::vector<M>{{{{1, -1}, {1, 0}}}, {{{0, 1}, {1, 0}}}});
  CHECK(ii.forbidden_primes == std::vector<int>{2, 3});
  const auto& iii = duncan_family(TorusFamily::iii);
  CHECK(iii.generators == std::vector<M>{{{{-1, 0}, {0, 1}}}, {{{0, 1}, {1, 0}}}});
  CHECK(iii.forbidden_primes == std::vector<int>{2});
  const auto& iv = duncan_family(TorusFamily::iv);
  CHECK(iv.generators == std::vector<M>{{{{0, -1}, {1, -1}}}, {{{0, -1}, {-1, 0}}}});
  CHECK(iv.forbidden_primes == std::vector<int>{3});
  const auto& v = duncan_family(TorusFamily::v);
  CHECK(v.generators == std::vector<M>{{{{0, -1}, {1, -1}}}, {{{0, 1}, {1, 0}}}});
  CHECK(v.forbidden_primes == std::vector<int>{3});

  const std::pair<TorusFamily, std::size_t> orders[] = {
      {TorusFamily::ii, 12}, {TorusFamily::iii, 8}, {TorusFamily::iv, 6}, {TorusFamily::v, 6}};
  for (auto [id, n] : orders) {
    CAPTURE(duncan_family(id).label);
    CHECK(duncan_family(id).actor_order == n);
    CHECK(actor_group(id).table.order() == n);
    CHECK(integer_closure_order(duncan_family(id).generators) == n);
  }
  CHECK(recognize_shape(actor_group(TorusFamily::ii).table).dihedral_order == 12);
  CHECK(recognize_shape(actor_group(TorusFamily::iii).table).dihedral_order == 8);
  CHECK(!actor_group(TorusFamily::iv).table.is_abelian());
}

TEST_CASE("torus overgroups") {
  const auto iii3 = torus_family_overgroup(TorusFamily::iii, 3);
  CHECK(iii3.group.order() == 72);
  CHECK(iii3.torus.count() == 9);
  CHECK(find_monomorphism(group(36, 9), iii3.group).status == SearchStatus::Found);

  const auto ii5 = torus_family_overgroup(TorusFamily::ii, 5);
  CHECK(ii5.group.order() == 300);
  CHECK(find_monomorphism(group(50, 4), ii5.group).status == SearchStatus::Found);

  const auto iv4 = torus_family_overgroup(TorusFamily::iv, 4);
  CHECK(iv4.group.order() == 96);
  CHECK(find_monomorphism(group(48, 3), iv4.group).status == SearchStatus::Found);

  CHECK(torus_family_overgroup(TorusFamily::v, 1).group.order() == 6);
  CHECK_THROWS_AS(torus_family_overgroup(TorusFamily::ii, 5 * 3), ForbiddenModulus);
  CHECK_THROWS_AS(torus_family_overgroup(TorusFamily::iii, 4), ForbiddenModulus);
  CHECK_THROWS_AS(torus_family_overgroup(TorusFamily::iv, 3), ForbiddenModulus);
  CHECK_NOTHROW(torus_family_overgroup(TorusFamily::iii, 3));
}

TEST_CASE("membership witnesses") {
  const auto check = [](GapId id, const std::string& label, int modulus) {
    CAPTURE(id.to_string());
    const auto& G = group(id.order, id.index);
    const int rd = rd_of(G);
    const auto w = duncan_upper(G, rd);
    REQUIRE(w);
    CHECK(w->case_label == label);
    if (modulus) CHECK(w->modulus == modulus);
    CHECK(verify_duncan_witness(G, rd, *w));
  };
  check({21, 1}, "vi", 0);
  check({39, 1}, "iv", 13);
  check({48, 3}, "iv", 4);
  check({36, 9}, "iii", 3);
  check({52, 3}, "iii", 13);
  check({12, 3}, "vii", 0);
  check({6, 1}, "i", 0);

  // For (39,1) the torus part of the image is T[13].
  const auto& G39 = group(39, 1);
  auto w = *duncan_upper(G39, rd_of(G39));
  CHECK(w.torus_intersection == 13);
  w.torus_intersection = 39;
  CHECK_FALSE(verify_duncan_witness(G39, rd_of(G39), w));
}

TEST_CASE("exclusion certificates") {
  for (GapId id : {GapId{55, 1}, GapId{60, 7}}) {
    CAPTURE(id.to_string());
    const auto& G = group(id.order, id.index);
    const int rd = rd_of(G);
    CHECK_FALSE(duncan_upper(G, rd));
    const auto ex = duncan_exclusion(G, rd);
    CHECK(ex.verdict == ExclusionVerdict::Excluded);
    REQUIRE(ex.cases.size() == 7);
    for (const auto& c : ex.cases) CHECK(c.excluded);
  }
  const auto& G60 = group(60, 7);
  const auto ex = duncan_exclusion(G60, rd_of(G60));
  const auto iii = std::find_if(ex.cases.begin(), ex.cases.end(), [](const auto& c) { return c.case_label == "iii"; });
  REQUIRE(iii != ex.cases.end());
  CHECK(iii->reason.find("-1") != std::string::npos);
  CHECK(iii->reason.find("order 3") != std::string::npos);

  const auto A4 = realize("A(4)");
  CHECK(duncan_exclusion(A4, rd_of(A4)).verdict == ExclusionVerdict::Inconclusive);
  CHECK(duncan_upper(A4, rd_of(A4)));
}

TEST_CASE("membership and exclusion never both fire") {
  for (const auto& g : database().groups()) {
    CAPTURE(g.entry.id.to_string());
    const auto w = duncan_upper(g.group, g.entry.rd);
    const auto ex = duncan_exclusion(g.group, g.entry.rd);
    CHECK_FALSE((w && ex.verdict == ExclusionVerdict::Excluded));
    if (w) CHECK(verify_duncan_witness(g.group, g.entry.rd, *w));
    // Both directions agree with the tabulated values wherever those settle ed <= 2.
    if (g.entry.ed_hi <= 2 && g.entry.rd > 2) CHECK(ex.verdict == ExclusionVerdict::Inconclusive);
    if (g.entry.ed_lo >= 3) CHECK_FALSE(w);
    if (g.entry.ed_hi <= 2) CHECK(w);
  }
}
