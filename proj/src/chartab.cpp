#include "edlab/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "edlab/errors.hpp"
#include "edlab/structure.hpp"

namespace edlab {

namespace {

using u64 = std::uint64_t;

struct Field {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
  u64 neg(u64 a) const { return (p - a % p) % p; }
};

using Matrix = std::vector<std::vector<u64>>;

u64 group_exponent(const GroupTable& G) {
  u64 e = 1;
  for (std::size_t x = 0; x < G.order(); ++x) e = std::lcm(e, static_cast<u64>(G.element_order(static_cast<int>(x))));
  return e;
}

u64 primitive_root_mod(u64 p) {
  const auto factors = prime_factors(p - 1);
  const Field F{p};
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors)
      if (F.pow(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;  // p = 2
}

// Characteristic polynomial (coefficients, lowest degree first, monic) via
// reduction to upper Hessenberg form.
std::vector<u64> charpoly(Matrix a, const Field& F) {
  const std::size_t n = a.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && a[piv][m - 1] == 0) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      std::swap(a[piv], a[m]);
      for (auto& row : a) std::swap(row[piv], row[m]);
    }
    const u64 inv = F.inv(a[m][m - 1]);
    for (std::size_t i = m + 1; i < n; ++i) {
      const u64 t = F.mul(a[i][m - 1], inv);
      if (t == 0) continue;
      for (std::size_t j = 0; j < n; ++j) a[i][j] = F.sub(a[i][j], F.mul(t, a[m][j]));
      for (std::size_t j = 0; j < n; ++j) a[j][m] = F.add(a[j][m], F.mul(t, a[j][i]));
    }
  }
  // p_k(x) = characteristic polynomial of the leading k x k block.
  std::vector<std::vector<u64>> poly(n + 1);
  poly[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    // (x - a[k-1][k-1]) p_{k-1}
    std::vector<u64> cur(k + 1, 0);
    for (std::size_t i = 0; i < poly[k - 1].size(); ++i) {
      cur[i + 1] = F.add(cur[i + 1], poly[k - 1][i]);
      cur[i] = F.sub(cur[i], F.mul(a[k - 1][k - 1], poly[k - 1][i]));
    }
    u64 prod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      prod = F.mul(prod, a[i + 1][i]);
      if (prod == 0) break;
      const u64 coef = F.mul(prod, a[i][k - 1]);
      for (std::size_t t = 0; t < poly[i].size(); ++t) cur[t] = F.sub(cur[t], F.mul(coef, poly[i][t]));
    }
    poly[k] = std::move(cur);
  }
  return poly[n];
}

u64 eval(const std::vector<u64>& poly, u64 x, const Field& F) {
  u64 r = 0;
  for (std::size_t i = poly.size(); i-- > 0;) r = F.add(F.mul(r, x), poly[i]);
  return r;
}

// Basis of the nullspace of a (rows x cols), as column vectors.
std::vector<std::vector<u64>> nullspace(Matrix a, const Field& F) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const u64 inv = F.inv(a[r][c]);
    for (auto& v : a[r]) v = F.mul(v, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const u64 t = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = F.sub(a[i][j], F.mul(t, a[r][j]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<u64>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = F.neg(a[i][f]);
    out.push_back(std::move(v));
  }
  return out;
}

// A subspace of F_p^r stored by basis columns with an identity block on
// `pivots`, so restricted operators are read off the pivot rows.
struct Subspace {
  std::vector<std::vector<u64>> basis;  // basis[c] is a vector of length r
  std::vector<std::size_t> pivots;
};

Subspace make_subspace(std::vector<std::vector<u64>> vecs, const Field& F) {
  Subspace s;
  const std::size_t r = vecs.empty() ? 0 : vecs[0].size();
  for (std::size_t row = 0; row < r && s.pivots.size() < vecs.size(); ++row) {
    const std::size_t k = s.pivots.size();
    std::size_t piv = k;
    while (piv < vecs.size() && vecs[piv][row] == 0) ++piv;
    if (piv == vecs.size()) continue;
    std::swap(vecs[piv], vecs[k]);
    const u64 inv = F.inv(vecs[k][row]);
    for (auto& v : vecs[k]) v = F.mul(v, inv);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if (i == k || vecs[i][row] == 0) continue;
      const u64 t = vecs[i][row];
      for (std::size_t j = 0; j < r; ++j) vecs[i][j] = F.sub(vecs[i][j], F.mul(t, vecs[k][j]));
    }
    s.pivots.push_back(row);
  }
  vecs.resize(s.pivots.size());
  s.basis = std::move(vecs);
  return s;
}

}  // namespace

DixonPrime dixon_prime(const GroupTable& G) {
  const u64 e = group_exponent(G);
  u64 root = 1;
  while (root * root < G.order()) ++root;
  const u64 bound = 2 * root;
  u64 p = 1;
  while (p <= bound || !is_prime(p)) p += e;
  const Field F{p};
  return {p, F.pow(primitive_root_mod(p), (p - 1) / e), e};
}

ClassConstants class_algebra_constants(const GroupTable& G) {
  const std::size_t r = G.classes().size();
  ClassConstants a(r, std::vector<std::vector<std::uint32_t>>(r, std::vector<std::uint32_t>(r, 0)));
  for (std::size_t k = 0; k < r; ++k) {
    const int z = G.class_rep(k);
    for (std::size_t x = 0; x < G.order(); ++x) {
      const int y = G.mul(G.inv(static_cast<int>(x)), z);
      ++a[static_cast<std::size_t>(G.class_of(static_cast<int>(x)))][static_cast<std::size_t>(G.class_of(y))][k];
    }
  }
  return a;
}

ModpMatrix irreducible_characters_mod_p(const GroupTable& G, const DixonPrime& dp) {
  const Field F{dp.p};
  const auto& classes = G.classes();
  const std::size_t r = classes.size();
  const auto a = class_algebra_constants(G);

  std::vector<std::vector<u64>> all(r, std::vector<u64>(r, 0));
  for (std::size_t i = 0; i < r; ++i) all[i][i] = 1;
  std::vector<Subspace> spaces{make_subspace(all, F)};

  // Central characters are common right eigenvectors of M_j[i][k] = a[j][i][k].
  for (std::size_t j = 1; j < r; ++j) {
    std::vector<Subspace> next;
    for (auto& W : spaces) {
      const std::size_t d = W.basis.size();
      if (d == 1) {
        next.push_back(std::move(W));
        continue;
      }
      // Restricted operator: A[s][t] = (M_j b_t)[pivot_s].
      Matrix A(d, std::vector<u64>(d, 0));
      std::vector<std::vector<u64>> images(d, std::vector<u64>(r, 0));
      for (std::size_t t = 0; t < d; ++t)
        for (std::size_t i = 0; i < r; ++i) {
          u64 acc = 0;
          for (std::size_t k = 0; k < r; ++k)
            if (a[j][i][k] && W.basis[t][k]) acc = F.add(acc, F.mul(a[j][i][k], W.basis[t][k]));
          images[t][i] = acc;
        }
      for (std::size_t s = 0; s < d; ++s)
        for (std::size_t t = 0; t < d; ++t) A[s][t] = images[t][W.pivots[s]];
      const auto poly = charpoly(A, F);
      std::size_t found = 0;
      for (u64 lambda = 0; lambda < dp.p && found < d; ++lambda) {
        if (eval(poly, lambda, F) != 0) continue;
        Matrix shifted = A;
        for (std::size_t s = 0; s < d; ++s) shifted[s][s] = F.sub(shifted[s][s], lambda);
        const auto ns = nullspace(shifted, F);
        std::vector<std::vector<u64>> vecs;
        for (const auto& c : ns) {
          std::vector<u64> v(r, 0);
          for (std::size_t t = 0; t < d; ++t)
            if (c[t])
              for (std::size_t i = 0; i < r; ++i) v[i] = F.add(v[i], F.mul(c[t], W.basis[t][i]));
          vecs.push_back(std::move(v));
        }
        found += vecs.size();
        next.push_back(make_subspace(std::move(vecs), F));
      }
      if (found != d) throw SplittingFailure("class matrix not diagonalizable mod " + std::to_string(dp.p));
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r)
    throw SplittingFailure("common eigenspaces do not split into lines mod " + std::to_string(dp.p));

  // Class of the inverse of each representative.
  std::vector<std::size_t> inverse_class(r);
  for (std::size_t j = 0; j < r; ++j)
    inverse_class[j] = static_cast<std::size_t>(G.class_of(G.inv(G.class_rep(j))));

  const u64 order = G.order() % dp.p;
  ModpMatrix rows;
  std::vector<int> degrees;
  for (const auto& W : spaces) {
    auto omega = W.basis[0];
    if (omega[0] == 0) throw SplittingFailure("central character vanishes at the identity");
    const u64 inv0 = F.inv(omega[0]);
    for (auto& v : omega) v = F.mul(v, inv0);
    u64 s = 0;
    for (std::size_t j = 0; j < r; ++j)
      s = F.add(s, F.mul(F.mul(omega[j], omega[inverse_class[j]]), F.inv(classes[j].size() % dp.p)));
    const u64 d2 = F.mul(order, F.inv(s));
    int degree = 0;
    for (u64 d = 1; d * d <= G.order(); ++d)
      if (d * d % dp.p == d2) degree = static_cast<int>(d);
    if (degree == 0) throw SplittingFailure("no integer degree matches mod " + std::to_string(dp.p));
    std::vector<u64> chi(r);
    for (std::size_t j = 0; j < r; ++j)
      chi[j] = F.mul(F.mul(omega[j], static_cast<u64>(degree)), F.inv(classes[j].size() % dp.p));
    rows.push_back(std::move(chi));
    degrees.push_back(degree);
  }
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
    return std::tie(degrees[x], rows[x]) < std::tie(degrees[y], rows[y]);
  });
  ModpMatrix sorted;
  for (auto i : perm) sorted.push_back(rows[i]);
  return sorted;
}

Multiplicities lift_eigenvalue_multiplicities(const GroupTable& G, const DixonPrime& dp,
                                              const ModpMatrix& values) {
  const Field F{dp.p};
  const std::size_t r = G.classes().size();
  Multiplicities mu(values.size(), std::vector<std::vector<int>>(r));
  for (std::size_t j = 0; j < r; ++j) {
    const int g = G.class_rep(j);
    const auto m = static_cast<u64>(G.element_order(g));
    const u64 zeta = F.pow(dp.primitive_root, dp.root_order / m);
    const u64 zeta_inv = F.inv(zeta);
    const u64 m_inv = F.inv(m % dp.p);
    std::vector<std::size_t> power_class(m);
    int x = 0;
    for (u64 t = 0; t < m; ++t) {
      power_class[t] = static_cast<std::size_t>(G.class_of(x));
      x = G.mul(x, g);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto degree = values[i][0];
      auto& out = mu[i][j];
      out.assign(m, 0);
      u64 total = 0;
      for (u64 k = 0; k < m; ++k) {
        u64 acc = 0;
        const u64 step = F.pow(zeta_inv, k);
        u64 w = 1;
        for (u64 t = 0; t < m; ++t) {
          acc = F.add(acc, F.mul(values[i][power_class[t]], w));
          w = F.mul(w, step);
        }
        const u64 v = F.mul(acc, m_inv);
        if (v > degree)
          throw LiftInconsistency("multiplicity " + std::to_string(v) + " exceeds degree " +
                                  std::to_string(degree) + " (character " + std::to_string(i) +
                                  ", class " + std::to_string(j) + ")");
        out[k] = static_cast<int>(v);
        total += v;
      }
      if (total != degree)
        throw LiftInconsistency("multiplicities do not sum to the degree (character " + std::to_string(i) +
                                ", class " + std::to_string(j) + ")");
    }
  }
  return mu;
}

std::vector<ElementSet> character_kernels(const GroupTable& G, const Multiplicities& mu,
                                          const std::vector<int>& degrees) {
  std::vector<ElementSet> out;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    ElementSet k(G.order());
    for (std::size_t j = 0; j < mu[i].size(); ++j)
      if (mu[i][j][0] == degrees[i])
        for (int x : G.classes()[j]) k.insert(static_cast<std::size_t>(x));
    out.push_back(std::move(k));
  }
  return out;
}

CharacterTable character_table(const GroupTable& G) {
  CharacterTable t;
  t.prime = dixon_prime(G);
  t.values = irreducible_characters_mod_p(G, t.prime);
  for (const auto& row : t.values) t.degrees.push_back(static_cast<int>(row[0]));
  t.multiplicities = lift_eigenvalue_multiplicities(G, t.prime, t.values);
  t.kernels = character_kernels(G, t.multiplicities, t.degrees);
  return t;
}

std::string format_chartab(const GroupTable& G, const CharacterTable& t) {
  std::ostringstream os;
  os << "order " << G.order() << " classes " << G.classes().size() << " prime " << t.prime.p << '\n';
  for (std::size_t i = 0; i < t.degrees.size(); ++i)
    os << "chi" << i << " degree " << t.degrees[i] << " kernel " << t.kernels[i].count() << '\n';
  return os.str();
}

}  // namespace edlab
