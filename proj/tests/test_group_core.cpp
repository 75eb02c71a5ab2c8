#include <algorithm>
#include <set>

#include "doctest.h"
#include "edlab/errors.hpp"
#include "edlab/manifest.hpp"
#include "edlab/morphism.hpp"
#include "edlab/selftest.hpp"
#include "edlab/shape.hpp"
#include "edlab/structure.hpp"

using namespace edlab;

namespace {

Perm cyc(std::size_t n, std::vector<std::vector<std::size_t>> c) { return Perm::from_cycles(n, c); }

GroupTable sym3() { return GroupTable::close_generators({cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}); }
GroupTable sym5() { return GroupTable::close_generators({cyc(5, {{0, 1}}), cyc(5, {{0, 1, 2, 3, 4}})}); }
GroupTable alt4() { return GroupTable::close_generators({cyc(4, {{0, 1, 2}}), cyc(4, {{0, 1}, {2, 3}})}); }
GroupTable quat8() {
  // Left-regular action of Q8 = {±1, ±i, ±j, ±k}
  return GroupTable::close_generators({cyc(8, {{0, 2, 1, 3}, {4, 6, 5, 7}}), cyc(8, {{0, 4, 1, 5}, {2, 7, 3, 6}})});
}
GroupTable dihedral8() { return GroupTable::close_generators({cyc(4, {{0, 1, 2, 3}}), cyc(4, {{1, 3}})}); }
GroupTable cyclic(std::size_t n) {
  std::vector<std::size_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = i;
  return GroupTable::close_generators({n == 1 ? Perm::identity(1) : Perm::from_cycles(n, {c})});
}
GroupTable klein_power(std::size_t k) {
  std::vector<Perm> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(cyc(2 * k, {{2 * i, 2 * i + 1}}));
  return GroupTable::close_generators(gens);
}

// Independent brute force: size of conjugacy class of each element by
// conjugating with every element.
std::multiset<std::size_t> brute_class_sizes(const GroupTable& G) {
  std::multiset<std::size_t> out;
  std::vector<char> done(G.order(), 0);
  for (std::size_t x = 0; x < G.order(); ++x) {
    if (done[x]) continue;
    std::set<int> orbit;
    for (std::size_t g = 0; g < G.order(); ++g) {
      const Perm c = G.element(static_cast<int>(g)).inverse() * G.element(static_cast<int>(x)) *
                     G.element(static_cast<int>(g));
      orbit.insert(*G.index_of(c));
    }
    for (int y : orbit) done[static_cast<std::size_t>(y)] = 1;
    out.insert(orbit.size());
  }
  return out;
}

}  // namespace

TEST_CASE("close_generators") {
  CHECK(sym3().order() == 6);
  CHECK(cyclic(1).order() == 1);
  CHECK(sym5().order() == 120);
  const auto S3 = sym3();
  CHECK(S3.element(0).is_identity());
  for (std::size_t a = 0; a < S3.order(); ++a)
    for (std::size_t b = 0; b < S3.order(); ++b)
      CHECK(S3.element(S3.mul(static_cast<int>(a), static_cast<int>(b))) ==
            S3.element(static_cast<int>(a)) * S3.element(static_cast<int>(b)));
  CHECK_THROWS_AS(GroupTable::close_generators({cyc(7, {{0, 1}}), cyc(7, {{0, 1, 2, 3, 4, 5, 6}})}),
                  ClosureBudgetExceeded);
  CHECK_THROWS_AS(GroupTable::close_generators({cyc(5, {{0, 1}}), cyc(5, {{0, 1, 2, 3, 4}})}, 100),
                  ClosureBudgetExceeded);
}

TEST_CASE("conjugacy classes") {
  const auto S3 = sym3();
  REQUIRE(S3.classes().size() == 3);
  CHECK(S3.classes()[0] == std::vector<int>{0});
  CHECK(brute_class_sizes(S3) == std::multiset<std::size_t>{1, 2, 3});
  const auto Q8 = quat8();
  CHECK(Q8.order() == 8);
  CHECK(Q8.classes().size() == 5);
  CHECK(brute_class_sizes(Q8).size() == 5);
  const auto C6 = cyclic(6);
  CHECK(C6.classes().size() == 6);
  for (const auto* G : {&S3, &Q8}) {
    std::multiset<std::size_t> sizes;
    for (const auto& c : G->classes()) sizes.insert(c.size());
    CHECK(sizes == brute_class_sizes(*G));
    for (std::size_t i = 1; i < G->classes().size(); ++i) {
      const auto& a = G->classes()[i - 1];
      const auto& b = G->classes()[i];
      CHECK(std::make_tuple(G->element_order(a[0]), a.size(), a[0]) <
            std::make_tuple(G->element_order(b[0]), b.size(), b[0]));
    }
  }
}

TEST_CASE("structural invariants") {
  CHECK(rank_from_invariants(structural_invariants(klein_power(3)).abelian_invariants) == 3);
  const auto inv6 = structural_invariants(cyclic(6));
  CHECK(inv6.abelian_invariants == std::vector<std::size_t>{2, 3});
  CHECK(rank_from_invariants(inv6.abelian_invariants) == 1);
  const auto d8 = structural_invariants(dihedral8());
  CHECK(d8.center_order == 2);
  CHECK(d8.derived_order == 2);
  CHECK(d8.abelian_invariants.empty());
  CHECK(d8.p_group_prime == 2);
  // Brute-force center of D8.
  const auto D8 = dihedral8();
  int central = 0;
  for (std::size_t a = 0; a < 8; ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < 8; ++b)
      ok = ok && D8.mul(static_cast<int>(a), static_cast<int>(b)) == D8.mul(static_cast<int>(b), static_cast<int>(a));
    central += ok;
  }
  CHECK(central == 2);
  const auto c4xc4 = GroupTable::close_generators({cyc(8, {{0, 1, 2, 3}}), cyc(8, {{4, 5, 6, 7}})});
  CHECK(structural_invariants(c4xc4).abelian_invariants == std::vector<std::size_t>{4, 4});
  for (const auto* G : {&D8}) {
    const auto inv = structural_invariants(*G);
    std::size_t s = 0, h = 0;
    for (auto c : inv.class_sizes) s += c;
    for (const auto& [o, c] : inv.element_order_histogram) h += c;
    CHECK(s == inv.order);
    CHECK(h == inv.order);
  }
}

TEST_CASE("center, derived subgroup, sylow") {
  CHECK(center(quat8()).order() == 2);
  CHECK(derived_subgroup(alt4()).order() == 4);
  const auto S5 = sym5();
  CHECK(sylow_subgroup(S5, 2).order() == 8);
  CHECK(sylow_subgroup(S5, 5).order() == 5);
  CHECK_THROWS_AS(sylow_subgroup(S5, 7), NotADivisor);
}

TEST_CASE("normal subgroups") {
  std::vector<std::size_t> orders;
  for (const auto& n : normal_subgroups(sym3())) orders.push_back(n.group.order());
  CHECK(orders == std::vector<std::size_t>{1, 3, 6});
  const auto Q8 = quat8();
  const auto nq = normal_subgroups(Q8);
  CHECK(nq.size() == 6);  // 1, Z, three C4, Q8
  const auto mins = minimal_normal_subgroups(Q8);
  REQUIRE(mins.size() == 1);
  CHECK(mins.front().order() == 2);
  CHECK(normal_subgroups(klein_power(2)).size() == 5);
  for (const auto& n : nq) CHECK(is_normal(n.group));
}

TEST_CASE("quotient group") {
  const auto C4 = cyclic(4);
  const int sq = C4.mul(C4.generators()[0], C4.generators()[0]);
  const auto N = generated_subgroup(C4, std::span<const int>(&sq, 1));
  const auto Q = quotient_group(C4, N);
  CHECK(Q.group.order() == 2);
  // Surjective homomorphism with kernel N.
  const auto S4 = GroupTable::close_generators({cyc(4, {{0, 1}}), cyc(4, {{0, 1, 2, 3}})});
  const auto V = derived_subgroup(alt4());
  (void)V;
  for (const auto& ns : normal_subgroups(S4)) {
    const auto q = quotient_group(S4, ns.group);
    CHECK(q.group.order() * ns.group.order() == S4.order());
    std::set<int> image(q.projection.begin(), q.projection.end());
    CHECK(image.size() == q.group.order());
    for (std::size_t a = 0; a < S4.order(); ++a) {
      CHECK((q.projection[a] == 0) == ns.group.contains(static_cast<int>(a)));
      for (std::size_t b = 0; b < S4.order(); ++b)
        CHECK(q.projection[static_cast<std::size_t>(S4.mul(static_cast<int>(a), static_cast<int>(b)))] ==
              q.group.mul(q.projection[a], q.projection[b]));
    }
  }
  const auto S3 = sym3();
  const int t = S3.classes()[1].front();  // an involution
  CHECK_THROWS_AS(quotient_group(S3, generated_subgroup(S3, std::span<const int>(&t, 1))), NotNormal);
}

TEST_CASE("subgroups up to conjugacy") {
  std::vector<std::size_t> orders;
  for (const auto& H : subgroups_up_to_conjugacy(sym3())) orders.push_back(H.order());
  CHECK(orders == std::vector<std::size_t>{1, 2, 3, 6});
  CHECK(all_subgroups(sym3()).size() == 6);
  CHECK(all_subgroups(klein_power(2)).size() == 5);
  CHECK(all_subgroups(quat8()).size() == 6);
  CHECK(all_subgroups(klein_power(4)).size() == 67);
  CHECK_THROWS_AS(all_subgroups(sym5()), ScopeExceeded);
  CHECK(is_three_generated(klein_power(3)));
  CHECK_FALSE(is_three_generated(klein_power(4)));
}

TEST_CASE("monomorphisms and isomorphism") {
  const auto A4 = alt4();
  const auto S5 = sym5();
  const auto r = find_monomorphism(A4, S5);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(verify_witness(A4, S5, *r.witness));
  CHECK(find_monomorphism(quat8(), S5).status == SearchStatus::NotFound);
  CHECK_FALSE(is_isomorphic(cyclic(6), sym3()));
  CHECK(is_isomorphic(sym3(), sym3()));
  CHECK(is_isomorphic(dihedral8(), GroupTable::close_generators({cyc(8, {{0, 1, 2, 3}, {4, 5, 6, 7}}),
                                                                  cyc(8, {{0, 4}, {1, 7}, {2, 6}, {3, 5}})})));
  CHECK_FALSE(is_isomorphic(dihedral8(), quat8()));
  MonomorphismOptions tight;
  tight.budget = 1;
  CHECK(find_monomorphism(quat8(), quat8(), tight).status != SearchStatus::NotFound);
  CHECK(all_monomorphisms(sym3(), sym3()).size() == 6);
}

TEST_CASE("shape recognition") {
  auto t = recognize_shape(sym3());
  CHECK(t.dihedral_order == 6);
  CHECK(t.odd_dihedral);
  CHECK(t.holomorph_q == 3);
  auto q = recognize_shape(quat8());
  CHECK(q.generalized_quaternion);
  CHECK(q.p_group == 2);
  CHECK_FALSE(q.dihedral_order);
  CHECK_FALSE(q.holomorph_q);
  auto d = recognize_shape(dihedral8());
  CHECK(d.dihedral_order == 8);
  CHECK_FALSE(d.odd_dihedral);
  CHECK(d.holomorph_q == 4);
  CHECK(recognize_shape(cyclic(6)).cyclic);
}

TEST_CASE("subgroup enumeration matches the grow-by-one-element oracle up to order 24") {
  const auto db = load_and_verify_manifest(default_manifest_path());
  const auto r = subgroup_oracle_suite(db, 24);
  CHECK(r.checked == 73);
  for (const auto& f : r.failures) FAIL_CHECK(f);
  CHECK(brute_force_subgroups(sym3()).size() == 6);
  CHECK(brute_force_subgroups(klein_power(4)).size() == 67);
}
