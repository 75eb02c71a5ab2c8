#include "edlab/shape.hpp"

#include <numeric>

#include "edlab/structure.hpp"

namespace edlab {

namespace {

int euler_phi(int n) {
  int r = n;
  for (int p : prime_factors(static_cast<std::size_t>(n))) r = r / p * (p - 1);
  return r;
}

}  // namespace

std::optional<std::pair<int, int>> dihedral_generators(const GroupTable& G) {
  const auto order = G.order();
  if (order < 6 || order % 2 != 0) return std::nullopt;
  const int n = static_cast<int>(order / 2);
  for (std::size_t r = 1; r < order; ++r) {
    const int ri = static_cast<int>(r);
    if (G.element_order(ri) != n) continue;
    const auto R = generated_subgroup(G, std::span<const int>(&ri, 1));
    for (std::size_t s = 1; s < order; ++s) {
      const int si = static_cast<int>(s);
      if (G.element_order(si) != 2 || R.contains(si)) continue;
      // s r s = r^-1
      if (G.mul(G.mul(si, ri), si) == G.inv(ri)) return std::make_pair(ri, si);
    }
    return std::nullopt;  // all cyclic subgroups of order n behave alike up to the test below
  }
  return std::nullopt;
}

std::optional<int> cyclic_holomorph_q(const GroupTable& G) {
  const auto order = static_cast<int>(G.order());
  for (int q = 2; q < order; ++q) {
    const auto primes = prime_factors(static_cast<std::size_t>(q));
    if (primes.size() != 1 || q * euler_phi(q) != order) continue;
    // Normal cyclic A of order q with C_G(A) = A, and a complement.
    for (std::size_t a = 1; a < G.order(); ++a) {
      const int ai = static_cast<int>(a);
      if (G.element_order(ai) != q) continue;
      const auto A = generated_subgroup(G, std::span<const int>(&ai, 1));
      if (!is_normal(A) || centralizer(G, ai).order() != static_cast<std::size_t>(q)) continue;
      const int phi = euler_phi(q);
      // Aut(C_q) is generated by at most two elements.
      for (std::size_t x = 0; x < G.order(); ++x) {
        const int xi = static_cast<int>(x);
        if (phi % G.element_order(xi) != 0) continue;
        const auto K1 = generated_subgroup(G, std::span<const int>(&xi, 1));
        if ((K1.mask() & A.mask()).count() != 1) continue;
        if (K1.order() == static_cast<std::size_t>(phi)) return q;
        for (std::size_t y = x + 1; y < G.order(); ++y) {
          const int xy[2] = {xi, static_cast<int>(y)};
          const auto K = generated_subgroup(G, xy);
          if (K.order() == static_cast<std::size_t>(phi) && (K.mask() & A.mask()).count() == 1) return q;
        }
      }
    }
  }
  return std::nullopt;
}

ShapeTags recognize_shape(const GroupTable& G) {
  ShapeTags t;
  const auto inv = structural_invariants(G);
  t.abelian = G.is_abelian();
  t.cyclic = inv.element_order_histogram.contains(static_cast<int>(inv.order));
  t.p_group = inv.p_group_prime;
  if (auto d = dihedral_generators(G)) {
    t.dihedral_order = static_cast<int>(G.order());
    t.odd_dihedral = (G.order() / 2) % 2 == 1;
  }
  if (t.p_group == 2 && G.order() >= 8 && !t.cyclic) {
    auto it = inv.element_order_histogram.find(2);
    t.generalized_quaternion = it != inv.element_order_histogram.end() && it->second == 1;
  }
  if (!t.abelian) t.holomorph_q = cyclic_holomorph_q(G);
  return t;
}

std::vector<std::string> ShapeTags::tags() const {
  std::vector<std::string> out;
  if (abelian) out.emplace_back("abelian");
  if (cyclic) out.emplace_back("cyclic");
  if (dihedral_order) out.push_back("dihedral(" + std::to_string(*dihedral_order) + ")");
  if (odd_dihedral) out.emplace_back("odd-dihedral");
  if (generalized_quaternion) out.emplace_back("generalized-quaternion");
  if (p_group) out.push_back("p-group(" + std::to_string(*p_group) + ")");
  if (holomorph_q) out.push_back("full-holomorph-of-C_q(" + std::to_string(*holomorph_q) + ")");
  return out;
}

}  // namespace edlab
