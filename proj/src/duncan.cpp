#include "edlab/duncan.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "edlab/dsl.hpp"
#include "edlab/errors.hpp"
#include "edlab/structure.hpp"

namespace edlab {

namespace {

IntMatrix2 mat(int a, int b, int c, int d) { return {{{a, b}, {c, d}}}; }

int mod(long v, int m) {
  const long r = v % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

// Row-vector action x -> xA on (Z/m)^2, points numbered x0 * m + x1.
Perm matrix_perm(const IntMatrix2& A, int m) {
  std::vector<Point> img(static_cast<std::size_t>(m * m));
  for (int x0 = 0; x0 < m; ++x0)
    for (int x1 = 0; x1 < m; ++x1) {
      const int y0 = mod(x0 * A[0][0] + x1 * A[1][0], m);
      const int y1 = mod(x0 * A[0][1] + x1 * A[1][1], m);
      img[static_cast<std::size_t>(x0 * m + x1)] = static_cast<Point>(y0 * m + y1);
    }
  return Perm(std::move(img));
}

Perm translation_perm(int t0, int t1, int m) {
  std::vector<Point> img(static_cast<std::size_t>(m * m));
  for (int x0 = 0; x0 < m; ++x0)
    for (int x1 = 0; x1 < m; ++x1)
      img[static_cast<std::size_t>(x0 * m + x1)] = static_cast<Point>(mod(x0 + t0, m) * m + mod(x1 + t1, m));
  return Perm(std::move(img));
}

ActorGroup build_actor(const DuncanFamily& f) {
  // Entries of every element lie in {-1, 0, 1}, so the action on (Z/5)^2 is
  // faithful and matrices lift back exactly.
  constexpr int kM = 5;
  std::vector<Perm> gens;
  for (const auto& A : f.generators) gens.push_back(matrix_perm(A, kM));
  ActorGroup a{GroupTable::close_generators(gens), {}};
  for (const auto& p : a.table.elements()) {
    auto lift = [](int v) { return v > kM / 2 ? v - kM : v; };
    const int r0 = p[1 * kM + 0];  // image of e0 = (1, 0)
    const int r1 = p[0 * kM + 1];  // image of e1 = (0, 1)
    a.matrices.push_back(mat(lift(r0 / kM), lift(r0 % kM), lift(r1 / kM), lift(r1 % kM)));
  }
  return a;
}

bool modulus_allowed(const DuncanFamily& f, int m) {
  for (int p : prime_factors(static_cast<std::size_t>(m)))
    if (std::find(f.forbidden_primes.begin(), f.forbidden_primes.end(), p) != f.forbidden_primes.end()) return false;
  return true;
}

bool coprime_to(std::size_t n, const std::vector<int>& primes) {
  return std::all_of(primes.begin(), primes.end(), [n](int p) { return n % static_cast<std::size_t>(p) != 0; });
}

const GroupTable& s5() {
  static const GroupTable g = realize("S(5)");
  return g;
}

const GroupTable& psl27() {
  static const GroupTable g = realize("PSL(2,7)");
  return g;
}

// A candidate intersection G n T together with the actor representation of G/N.
struct TorusCandidate {
  Subgroup N;
  int exponent = 1;
  std::vector<IntMatrix2> action;  // per element of G
};

int subgroup_exponent(const GroupTable& G, const Subgroup& N) {
  int e = 1;
  for (int x : N.members()) e = std::lcm(e, G.element_order(x));
  return e;
}

// Is there an injective homomorphism iota: N -> (Z/e)^2 with
// iota(g^-1 n g) = iota(n) * action[g]?
bool equivariant_embedding_exists(const GroupTable& G, const Subgroup& N, int e,
                                  const std::vector<IntMatrix2>& action) {
  if (N.order() == 1) return true;
  const auto& members = N.members();
  const int n1 = *std::find_if(members.begin(), members.end(), [&](int x) { return G.element_order(x) == e; });
  const int o2 = static_cast<int>(N.order()) / e;
  auto powers = [&](int x, int k) {
    std::vector<int> out{0};
    for (int i = 1; i < k; ++i) out.push_back(G.mul(out.back(), x));
    return out;
  };
  const auto p1 = powers(n1, e);
  int n2 = 0;
  if (o2 > 1) {
    ElementSet c1(G.order());
    for (int x : p1) c1.insert(static_cast<std::size_t>(x));
    for (int x : members) {
      if (G.element_order(x) != o2) continue;
      bool meets = false;
      for (int y = x, k = 1; k < o2; ++k, y = G.mul(y, x)) meets = meets || c1.contains(static_cast<std::size_t>(y));
      if (!meets) {
        n2 = x;
        break;
      }
    }
  }
  const auto p2 = powers(n2, o2);
  // coordinates of every element of N in the basis (n1, n2)
  std::vector<std::pair<int, int>> coord(G.order(), {-1, -1});
  for (int x = 0; x < e; ++x)
    for (int y = 0; y < o2; ++y) coord[static_cast<std::size_t>(G.mul(p1[x], p2[y]))] = {x, y};

  const auto gens = small_generating_set(G);
  struct Constraint {
    int basis;  // 0 or 1
    int x, y;   // coordinates of the conjugate
    IntMatrix2 M;
  };
  std::vector<Constraint> constraints;
  const std::array<int, 2> basis{n1, n2};
  for (int g : gens)
    for (int b = 0; b < (o2 > 1 ? 2 : 1); ++b) {
      const auto [x, y] = coord[static_cast<std::size_t>(G.conj(basis[b], g))];
      constraints.push_back({b, x, y, action[static_cast<std::size_t>(g)]});
    }

  using Vec = std::array<int, 2>;
  auto order_of = [e](const Vec& v) { return e / std::gcd(std::gcd(v[0], v[1]), e); };
  std::vector<Vec> first, second;
  for (int a = 0; a < e; ++a)
    for (int b = 0; b < e; ++b) {
      const Vec v{a, b};
      const int o = order_of(v);
      if (o == e) first.push_back(v);
      if (o == o2) second.push_back(v);
    }
  std::vector<char> seen(static_cast<std::size_t>(e * e));
  for (const auto& v1 : first)
    for (const auto& v2 : second) {
      const std::array<Vec, 2> v{v1, v2};
      bool ok = true;
      for (const auto& c : constraints) {
        const auto& w = v[static_cast<std::size_t>(c.basis)];
        for (int j = 0; j < 2 && ok; ++j) {
          const long lhs = static_cast<long>(c.x) * v1[j] + static_cast<long>(c.y) * v2[j];
          const long rhs = static_cast<long>(w[0]) * c.M[0][j] + static_cast<long>(w[1]) * c.M[1][j];
          ok = mod(lhs - rhs, e) == 0;
        }
        if (!ok) break;
      }
      if (!ok) continue;
      std::fill(seen.begin(), seen.end(), 0);
      std::size_t distinct = 0;
      for (int x = 0; x < e; ++x)
        for (int y = 0; y < o2; ++y) {
          const int a = mod(static_cast<long>(x) * v1[0] + static_cast<long>(y) * v2[0], e);
          const int b = mod(static_cast<long>(x) * v1[1] + static_cast<long>(y) * v2[1], e);
          if (!seen[static_cast<std::size_t>(a * e + b)]++) ++distinct;
        }
      if (distinct == N.order()) return true;
    }
  return false;
}

struct FamilyAnalysis {
  std::vector<TorusCandidate> passing;
  std::vector<std::string> obstructions;
};

FamilyAnalysis analyze_family(const GroupTable& G, const DuncanFamily& f) {
  FamilyAnalysis out;
  const auto& actor = actor_group(f.id);
  for (const auto& ns : normal_subgroups(G)) {
    const Subgroup& N = ns.group;
    if (!coprime_to(N.order(), f.forbidden_primes)) continue;
    if (f.actor_order % (G.order() / N.order()) != 0) continue;
    if (!is_abelian(N) || abelian_rank(N) > 2) continue;
    const int e = subgroup_exponent(G, N);
    const auto Q = quotient_group(G, N);
    const auto psis = all_monomorphisms(Q.group, actor.table);
    if (psis.empty()) {
      out.obstructions.push_back("N of order " + std::to_string(N.order()) + ": G/N does not embed in the actor group");
      continue;
    }
    bool passed = false;
    std::string obstruction;
    for (const auto& w : psis) {
      const auto full = extend_witness(Q.group, actor.table, w);
      if (!full) continue;
      std::vector<IntMatrix2> action(G.order());
      for (std::size_t g = 0; g < G.order(); ++g)
        action[g] = actor.matrices[static_cast<std::size_t>((*full)[static_cast<std::size_t>(Q.projection[g])])];
      if (equivariant_embedding_exists(G, N, e, action)) {
        out.passing.push_back({N, e, std::move(action)});
        passed = true;
        break;
      }
      if (obstruction.empty()) {
        // An element acting as -1 must invert N; record one it centralizes.
        for (std::size_t g = 0; g < G.order() && obstruction.empty(); ++g) {
          if (action[g] != mat(-1, 0, 0, -1)) continue;
          for (int n : N.members())
            if (G.element_order(n) > 2 && G.conj(n, static_cast<int>(g)) == n) {
              std::ostringstream os;
              os << "an element of order " << G.element_order(static_cast<int>(g))
                 << " acts as -1, so it must invert N, yet it centralizes an element of order "
                 << G.element_order(n) << " in N";
              obstruction = os.str();
              break;
            }
        }
      }
    }
    if (!passed) {
      std::ostringstream os;
      os << "N of order " << N.order() << ": no equivariant injection of N into (Z/" << e << ")^2";
      if (!obstruction.empty()) os << " (" << obstruction << ")";
      out.obstructions.push_back(os.str());
    }
  }
  return out;
}

std::size_t torus_intersection(const GroupTable& G, const TorusOvergroup& over, const EmbeddingWitness& w) {
  const auto full = extend_witness(G, over.group, w);
  if (!full) return 0;
  std::size_t n = 0;
  for (int img : *full) n += over.torus.contains(static_cast<std::size_t>(img)) ? 1 : 0;
  return n;
}

constexpr std::array<TorusFamily, 4> kSearchOrder{TorusFamily::iv, TorusFamily::v, TorusFamily::iii,
                                                  TorusFamily::ii};

}  // namespace

const std::array<DuncanFamily, 4>& duncan_families() {
  static const std::array<DuncanFamily, 4> families{{
      {TorusFamily::ii, "ii", {mat(1, -1, 1, 0), mat(0, 1, 1, 0)}, {2, 3}, 12},
      {TorusFamily::iii, "iii", {mat(-1, 0, 0, 1), mat(0, 1, 1, 0)}, {2}, 8},
      {TorusFamily::iv, "iv", {mat(0, -1, 1, -1), mat(0, -1, -1, 0)}, {3}, 6},
      {TorusFamily::v, "v", {mat(0, -1, 1, -1), mat(0, 1, 1, 0)}, {3}, 6},
  }};
  return families;
}

const DuncanFamily& duncan_family(TorusFamily id) {
  return duncan_families()[static_cast<std::size_t>(id)];
}

const ActorGroup& actor_group(TorusFamily id) {
  static const std::array<ActorGroup, 4> actors{build_actor(duncan_family(TorusFamily::ii)),
                                                build_actor(duncan_family(TorusFamily::iii)),
                                                build_actor(duncan_family(TorusFamily::iv)),
                                                build_actor(duncan_family(TorusFamily::v))};
  return actors[static_cast<std::size_t>(id)];
}

TorusOvergroup torus_family_overgroup(TorusFamily family, int m) {
  const auto& f = duncan_family(family);
  if (m < 1 || !modulus_allowed(f, m))
    throw ForbiddenModulus("modulus " + std::to_string(m) + " is not allowed for family " + f.label);
  if (static_cast<std::size_t>(m * m) * f.actor_order > GroupTable::kMaxOrder)
    throw RealizationTooLarge("torus overgroup for family " + f.label + " at m = " + std::to_string(m) +
                              " exceeds the order limit");
  const auto& actor = actor_group(family);
  const std::size_t points = static_cast<std::size_t>(m * m);

  std::vector<IntMatrix2> reduced;
  for (const auto& A : actor.matrices) {
    IntMatrix2 r{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r[i][j] = mod(A[i][j], m);
    if (std::find(reduced.begin(), reduced.end(), r) == reduced.end()) reduced.push_back(r);
  }
  const bool faithful = reduced.size() == actor.matrices.size() && m > 1;
  const std::size_t degree = points + (faithful ? 0 : actor.table.order());

  std::vector<Perm> gens;
  std::vector<Perm> torus_gens;
  if (m > 1) {
    torus_gens = {translation_perm(1, 0, m).extended(degree), translation_perm(0, 1, m).extended(degree)};
    gens = torus_gens;
  }
  const auto& actor_gens = actor.table.generators();
  for (std::size_t k = 0; k < f.generators.size(); ++k) {
    std::vector<Point> img(degree);
    const Perm on_torus = matrix_perm(f.generators[k], m);
    for (std::size_t x = 0; x < points; ++x) img[x] = on_torus[x];
    if (!faithful)
      for (std::size_t a = 0; a < actor.table.order(); ++a)
        img[points + a] = static_cast<Point>(points + static_cast<std::size_t>(actor.table.mul(static_cast<int>(a), actor_gens[k])));
    gens.push_back(Perm(std::move(img)));
  }
  TorusOvergroup out{family, m, GroupTable::close_generators(gens), ElementSet()};
  out.torus = ElementSet(out.group.order());
  if (torus_gens.empty()) {
    out.torus.insert(0);
  } else {
    std::vector<int> t;
    for (const auto& p : torus_gens) t.push_back(*out.group.index_of(p));
    out.torus = generated_subgroup(out.group, t).mask();
  }
  return out;
}

namespace {

const TorusOvergroup& cached_overgroup(TorusFamily family, int m) {
  static std::mutex lock;
  static std::map<std::pair<int, int>, TorusOvergroup> cache;
  std::lock_guard guard(lock);
  const auto key = std::make_pair(static_cast<int>(family), m);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, torus_family_overgroup(family, m)).first;
  return it->second;
}

int max_modulus(const DuncanFamily& f, std::size_t group_order) {
  int m = 1;
  while (static_cast<std::size_t>((m + 1) * (m + 1)) * f.actor_order <= GroupTable::kMaxOrder &&
         static_cast<std::size_t>(m + 1) <= 12 * group_order)
    ++m;
  return m;
}

}  // namespace

std::optional<DuncanWitness> duncan_upper(const GroupTable& G, int rd, const DuncanOptions& options) {
  if (rd <= 2) return DuncanWitness{"i", std::nullopt, 0, std::nullopt, 0};
  const MonomorphismOptions mo{options.budget, false, true};
  for (const auto& [label, target, order] :
       {std::tuple{"vii", &s5(), std::size_t{120}}, std::tuple{"vi", &psl27(), std::size_t{168}}}) {
    if (order % G.order() != 0) continue;
    const auto r = find_monomorphism(G, *target, mo);
    if (r.status == SearchStatus::Found) return DuncanWitness{label, std::nullopt, 0, r.witness, 0};
  }

  std::map<TorusFamily, std::vector<int>> exponents;
  int limit = 0;
  for (auto id : kSearchOrder) {
    const auto& f = duncan_family(id);
    for (const auto& c : analyze_family(G, f).passing) exponents[id].push_back(c.exponent);
    if (!exponents[id].empty()) limit = std::max(limit, max_modulus(f, G.order()));
  }
  for (int m = 1; m <= limit; ++m)
    for (auto id : kSearchOrder) {
      const auto& f = duncan_family(id);
      const auto it = exponents.find(id);
      if (it == exponents.end() || it->second.empty()) continue;
      if (m > max_modulus(f, G.order()) || !modulus_allowed(f, m)) continue;
      if ((static_cast<std::size_t>(m * m) * f.actor_order) % G.order() != 0) continue;
      if (std::none_of(it->second.begin(), it->second.end(), [m](int e) { return m % e == 0; })) continue;
      const auto& over = cached_overgroup(id, m);
      const auto r = find_monomorphism(G, over.group, mo);
      if (r.status != SearchStatus::Found) continue;
      const std::size_t meet = torus_intersection(G, over, *r.witness);
      if (!coprime_to(meet, f.forbidden_primes)) continue;
      return DuncanWitness{f.label, id, m, r.witness, meet};
    }
  return std::nullopt;
}

ExclusionResult duncan_exclusion(const GroupTable& G, int rd, const DuncanOptions& options) {
  ExclusionResult out;
  auto add = [&](std::string label, bool excluded, std::string reason) {
    out.cases.push_back({std::move(label), excluded, std::move(reason)});
  };
  add("i", rd > 2, "rd = " + std::to_string(rd) + (rd > 2 ? " > 2" : " <= 2"));

  for (auto id : {TorusFamily::ii, TorusFamily::iii, TorusFamily::iv, TorusFamily::v}) {
    const auto& f = duncan_family(id);
    const auto a = analyze_family(G, f);
    if (!a.passing.empty()) {
      add(f.label, false,
          "G n T of order " + std::to_string(a.passing.front().N.order()) + " passes the equivariance test");
      continue;
    }
    std::string reason = "every admissible G n T is ruled out";
    if (a.obstructions.empty()) reason = "no normal abelian subgroup of rank <= 2 with admissible order and quotient";
    for (const auto& o : a.obstructions) reason += "; " + o;
    add(f.label, true, reason);
  }

  const MonomorphismOptions mo{options.budget, false, true};
  for (const auto& [label, target, order] :
       {std::tuple{"vi", &psl27(), std::size_t{168}}, std::tuple{"vii", &s5(), std::size_t{120}}}) {
    if (order % G.order() != 0) {
      add(label, true, std::to_string(G.order()) + " does not divide " + std::to_string(order));
      continue;
    }
    const auto r = find_monomorphism(G, *target, mo);
    if (r.status == SearchStatus::NotFound)
      add(label, true, "exhaustive search finds no embedding");
    else
      add(label, false, r.status == SearchStatus::Found ? "embedding found" : "search budget exhausted");
  }
  const bool all = std::all_of(out.cases.begin(), out.cases.end(), [](const auto& c) { return c.excluded; });
  out.verdict = all ? ExclusionVerdict::Excluded : ExclusionVerdict::Inconclusive;
  return out;
}

bool verify_duncan_witness(const GroupTable& G, int rd, const DuncanWitness& w) {
  if (w.case_label == "i") return rd <= 2;
  if (!w.embedding) return false;
  if (w.case_label == "vii") return verify_witness(G, s5(), *w.embedding);
  if (w.case_label == "vi") return verify_witness(G, psl27(), *w.embedding);
  if (!w.family) return false;
  const auto& over = cached_overgroup(*w.family, w.modulus);
  if (!verify_witness(G, over.group, *w.embedding)) return false;
  const auto meet = torus_intersection(G, over, *w.embedding);
  return meet == w.torus_intersection && coprime_to(meet, duncan_family(*w.family).forbidden_primes);
}

}  // namespace edlab
