#include "edlab/structure.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "edlab/errors.hpp"

namespace edlab {

namespace {

ElementSet closure_of(const GroupTable& G, std::span<const int> gens) {
  ElementSet mask(G.order());
  mask.insert(0);
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int g : gens) {
      const int y = G.mul(queue[head], g);
      if (!mask.contains(static_cast<std::size_t>(y))) {
        mask.insert(static_cast<std::size_t>(y));
        queue.push_back(y);
      }
    }
  }
  return mask;
}

std::size_t count_if_power_trivial(const GroupTable& G, std::span<const int> elems, long long e) {
  std::size_t c = 0;
  for (int x : elems)
    if (G.pow(x, e) == 0) ++c;
  return c;
}

int log_base(std::size_t n, std::size_t p) {
  int k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

bool by_order_then_members(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.members() < b.members();
}

}  // namespace

std::vector<int> prime_factors(std::size_t n) {
  std::vector<int> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(static_cast<int>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(static_cast<int>(n));
  return out;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

const std::vector<std::vector<int>>& conjugacy_classes(const GroupTable& G) { return G.classes(); }

Subgroup generated_subgroup(const GroupTable& G, std::span<const int> elements) {
  return Subgroup(G, closure_of(G, elements));
}

Subgroup join(const Subgroup& base, std::span<const int> extra) {
  std::vector<int> gens = small_generating_set(base);
  gens.insert(gens.end(), extra.begin(), extra.end());
  return generated_subgroup(base.parent(), gens);
}

Subgroup trivial_subgroup(const GroupTable& G) { return Subgroup(G, G.trivial_set()); }
Subgroup whole_group(const GroupTable& G) { return Subgroup(G, G.full_set()); }

Subgroup centralizer(const GroupTable& G, int g) {
  ElementSet mask(G.order());
  for (std::size_t x = 0; x < G.order(); ++x)
    if (G.mul(static_cast<int>(x), g) == G.mul(g, static_cast<int>(x))) mask.insert(x);
  return Subgroup(G, std::move(mask));
}

Subgroup center(const GroupTable& G) {
  ElementSet mask(G.order());
  for (const auto& cls : G.classes())
    if (cls.size() == 1) mask.insert(static_cast<std::size_t>(cls.front()));
  return Subgroup(G, std::move(mask));
}

Subgroup derived_subgroup(const GroupTable& G) {
  std::vector<int> comms;
  ElementSet seen(G.order());
  for (std::size_t a = 0; a < G.order(); ++a) {
    for (std::size_t b = 0; b < G.order(); ++b) {
      const int c = G.commutator(static_cast<int>(a), static_cast<int>(b));
      if (!seen.contains(static_cast<std::size_t>(c))) {
        seen.insert(static_cast<std::size_t>(c));
        comms.push_back(c);
      }
    }
  }
  return generated_subgroup(G, comms);
}

Subgroup sylow_subgroup(const GroupTable& G, int p) {
  const auto n = G.order();
  if (p < 2 || n % static_cast<std::size_t>(p) != 0) {
    throw NotADivisor("prime " + std::to_string(p) + " does not divide " + std::to_string(n));
  }
  std::size_t target = 1;
  for (std::size_t m = n; m % static_cast<std::size_t>(p) == 0; m /= static_cast<std::size_t>(p))
    target *= static_cast<std::size_t>(p);
  auto is_p_power = [p](std::size_t k) {
    while (k % static_cast<std::size_t>(p) == 0) k /= static_cast<std::size_t>(p);
    return k == 1;
  };
  Subgroup P = trivial_subgroup(G);
  for (std::size_t x = 1; x < n && P.order() < target; ++x) {
    if (P.contains(static_cast<int>(x)) || !is_p_power(static_cast<std::size_t>(G.element_order(static_cast<int>(x)))))
      continue;
    const int xi = static_cast<int>(x);
    Subgroup Q = join(P, std::span<const int>(&xi, 1));
    if (is_p_power(Q.order())) P = std::move(Q);
  }
  return P;
}

bool is_normal(const Subgroup& N) {
  const auto& G = N.parent();
  for (int g : G.generators())
    for (int h : N.members())
      if (!N.contains(G.conj(h, g))) return false;
  return true;
}

bool is_abelian(const Subgroup& H) {
  const auto& G = H.parent();
  const auto gens = small_generating_set(H);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (G.mul(gens[i], gens[j]) != G.mul(gens[j], gens[i])) return false;
  return true;
}

Subgroup conjugate(const Subgroup& H, int g) {
  const auto& G = H.parent();
  ElementSet mask(G.order());
  for (int h : H.members()) mask.insert(static_cast<std::size_t>(G.conj(h, g)));
  return Subgroup(G, std::move(mask));
}

Subgroup normal_closure(const GroupTable& G, std::span<const int> elements) {
  std::vector<int> gens;
  ElementSet seen(G.order());
  for (int x : elements) {
    for (int y : G.classes()[static_cast<std::size_t>(G.class_of(x))]) {
      if (!seen.contains(static_cast<std::size_t>(y))) {
        seen.insert(static_cast<std::size_t>(y));
        gens.push_back(y);
      }
    }
  }
  return generated_subgroup(G, gens);
}

std::vector<NormalSubgroup> normal_subgroups(const GroupTable& G) {
  std::vector<Subgroup> found{trivial_subgroup(G)};
  std::unordered_set<ElementSet, ElementSetHash> seen{found.front().mask()};
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& cls : G.classes()) {
      if (found[head].contains(cls.front())) continue;
      std::vector<int> gens = small_generating_set(found[head]);
      gens.insert(gens.end(), cls.begin(), cls.end());
      Subgroup N = generated_subgroup(G, gens);
      if (seen.insert(N.mask()).second) found.push_back(std::move(N));
    }
  }
  std::sort(found.begin(), found.end(), by_order_then_members);
  std::vector<NormalSubgroup> out;
  for (const auto& N : found) {
    bool minimal = N.order() > 1;
    for (const auto& M : found) {
      if (!minimal) break;
      if (M.order() > 1 && M.order() < N.order() && M.is_subgroup_of(N)) minimal = false;
    }
    out.push_back({N, minimal});
  }
  return out;
}

std::vector<Subgroup> minimal_normal_subgroups(const GroupTable& G) {
  std::vector<Subgroup> out;
  for (auto& ns : normal_subgroups(G))
    if (ns.minimal) out.push_back(std::move(ns.group));
  return out;
}

Quotient quotient_group(const GroupTable& G, const Subgroup& N) {
  if (&N.parent() != &G) throw std::invalid_argument("quotient_group: subgroup of another group");
  if (!is_normal(N)) throw NotNormal("quotient_group: subgroup is not normal");
  const std::size_t n = G.order();
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    const int c = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(x));
    for (int h : N.members()) coset_of[static_cast<std::size_t>(G.mul(h, static_cast<int>(x)))] = c;
  }
  const std::size_t k = reps.size();
  auto coset_perm = [&](int g) {
    std::vector<Point> img(k);
    for (std::size_t c = 0; c < k; ++c)
      img[c] = static_cast<Point>(coset_of[static_cast<std::size_t>(G.mul(reps[c], g))]);
    return Perm(std::move(img));
  };
  std::vector<Perm> gens;
  for (int g : G.generators()) gens.push_back(coset_perm(g));
  Quotient Q{GroupTable::close_generators(gens), std::vector<int>(n, -1)};
  for (std::size_t x = 0; x < n; ++x) Q.projection[x] = *Q.group.index_of(coset_perm(static_cast<int>(x)));
  return Q;
}

std::vector<int> small_generating_set(const Subgroup& H) {
  const auto& G = H.parent();
  std::vector<int> order = H.members();
  std::stable_sort(order.begin(), order.end(),
                   [&G](int a, int b) { return G.element_order(a) > G.element_order(b); });
  std::vector<int> gens;
  ElementSet span = G.trivial_set();
  std::size_t span_size = 1;
  for (int x : order) {
    if (span_size == H.order()) break;
    if (span.contains(static_cast<std::size_t>(x))) continue;
    gens.push_back(x);
    span = closure_of(G, gens);
    span_size = span.count();
  }
  return gens;
}

std::vector<int> small_generating_set(const GroupTable& G) { return small_generating_set(whole_group(G)); }

GroupTable subgroup_as_group(const Subgroup& H) {
  const auto& G = H.parent();
  std::vector<Perm> gens;
  for (int g : small_generating_set(H)) gens.push_back(G.element(g));
  if (gens.empty()) gens.push_back(Perm::identity(G.degree()));
  return GroupTable::close_generators(gens);
}

std::vector<Subgroup> all_subgroups(const GroupTable& G) {
  if (G.order() > kSubgroupScope) {
    throw ScopeExceeded("subgroup enumeration is limited to groups of order <= 63");
  }
  // One generator per cyclic subgroup.
  std::vector<int> cyclic_gens;
  std::unordered_set<ElementSet, ElementSetHash> cyclic_seen;
  for (std::size_t x = 1; x < G.order(); ++x) {
    const int xi = static_cast<int>(x);
    if (cyclic_seen.insert(closure_of(G, std::span<const int>(&xi, 1))).second) cyclic_gens.push_back(xi);
  }
  struct Node {
    ElementSet mask;
    std::vector<int> gens;
  };
  std::vector<Node> nodes{{G.trivial_set(), {}}};
  std::unordered_set<ElementSet, ElementSetHash> seen{nodes.front().mask};
  // Join-closure of the lattice under adding one cyclic subgroup; this reaches
  // every subgroup regardless of how many generators it needs.
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (int x : cyclic_gens) {
      if (nodes[head].mask.contains(static_cast<std::size_t>(x))) continue;
      std::vector<int> gens = nodes[head].gens;
      gens.push_back(x);
      ElementSet mask = closure_of(G, gens);
      if (seen.insert(mask).second) nodes.push_back({std::move(mask), std::move(gens)});
    }
  }
  std::vector<Subgroup> out;
  for (auto& node : nodes) out.emplace_back(G, std::move(node.mask));
  std::sort(out.begin(), out.end(), by_order_then_members);
  return out;
}

std::vector<Subgroup> subgroups_up_to_conjugacy(const GroupTable& G) {
  const auto all = all_subgroups(G);
  std::unordered_set<ElementSet, ElementSetHash> covered;
  std::vector<Subgroup> reps;
  // `all` is sorted by (order, members), so the first unseen member of each
  // conjugacy class is its lexicographically least member.
  for (const auto& H : all) {
    if (covered.contains(H.mask())) continue;
    reps.push_back(H);
    for (std::size_t g = 0; g < G.order(); ++g) covered.insert(conjugate(H, static_cast<int>(g)).mask());
  }
  return reps;
}

bool is_three_generated(const GroupTable& G) {
  const auto n = G.order();
  if (n == 1) return true;
  std::vector<int> cands;
  {
    // Elements up to conjugacy suffice for the first generator.
    for (const auto& cls : G.classes()) cands.push_back(cls.front());
  }
  for (int a : cands) {
    const ElementSet A = closure_of(G, std::span<const int>(&a, 1));
    if (A.count() == n) return true;
    for (std::size_t b = 1; b < n; ++b) {
      if (A.contains(b)) continue;
      const int ab[2] = {a, static_cast<int>(b)};
      const ElementSet B = closure_of(G, ab);
      if (B.count() == n) return true;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (B.contains(c)) continue;
        const int abc[3] = {a, static_cast<int>(b), static_cast<int>(c)};
        if (closure_of(G, abc).count() == n) return true;
      }
    }
  }
  return false;
}

std::vector<std::size_t> abelian_invariants(const GroupTable& G) {
  if (!G.is_abelian()) throw std::invalid_argument("abelian_invariants: group is not abelian");
  std::vector<int> all(G.order());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> out;
  for (int p : prime_factors(G.order())) {
    const auto up = static_cast<std::size_t>(p);
    std::vector<int> n_k{0};  // n_k = log_p #{x : x^(p^k) = 1}
    for (long long pk = p;; pk *= p) {
      n_k.push_back(log_base(count_if_power_trivial(G, all, pk), up));
      if (n_k.back() == n_k[n_k.size() - 2]) break;
    }
    // factors of order >= p^k: n_k - n_{k-1}
    for (std::size_t k = 1; k + 1 < n_k.size(); ++k) {
      const int at_least_k = n_k[k] - n_k[k - 1];
      const int at_least_next = n_k[k + 1] - n_k[k];
      std::size_t pk = 1;
      for (std::size_t j = 0; j < k; ++j) pk *= up;
      for (int c = 0; c < at_least_k - at_least_next; ++c) out.push_back(pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int rank_from_invariants(std::span<const std::size_t> invariants) {
  std::map<int, int> per_prime;
  for (auto q : invariants) ++per_prime[prime_factors(q).front()];
  int r = 0;
  for (const auto& [p, c] : per_prime) r = std::max(r, c);
  return r;
}

int abelian_rank(const Subgroup& A) {
  const auto& G = A.parent();
  int r = 0;
  for (int p : prime_factors(A.order())) {
    const auto omega = count_if_power_trivial(G, A.members(), p);
    r = std::max(r, log_base(omega, static_cast<std::size_t>(p)));
  }
  return r;
}

StructuralInvariants structural_invariants(const GroupTable& G) {
  StructuralInvariants inv;
  inv.order = G.order();
  inv.exponent = 1;
  for (std::size_t x = 0; x < G.order(); ++x) {
    const auto o = G.element_order(static_cast<int>(x));
    inv.exponent = std::lcm(inv.exponent, static_cast<std::size_t>(o));
    ++inv.element_order_histogram[o];
  }
  for (const auto& cls : G.classes()) inv.class_sizes.push_back(cls.size());
  std::sort(inv.class_sizes.begin(), inv.class_sizes.end());
  inv.center_order = center(G).order();
  inv.derived_order = derived_subgroup(G).order();
  if (G.is_abelian()) inv.abelian_invariants = abelian_invariants(G);
  const auto primes = prime_factors(G.order());
  if (primes.size() == 1) inv.p_group_prime = primes.front();
  return inv;
}

}  // namespace edlab
