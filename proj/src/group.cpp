#include "edlab/group.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>
#include <string>
#include <tuple>

#include "edlab/errors.hpp"

namespace edlab {

GroupTable GroupTable::close_generators(const std::vector<Perm>& gens, std::size_t budget) {
  if (gens.empty()) throw std::invalid_argument("close_generators: empty generator list");
  const std::size_t degree = gens.front().degree();
  for (const auto& g : gens)
    if (g.degree() != degree) throw std::invalid_argument("close_generators: mixed degrees");
  budget = std::min(budget, kMaxOrder);

  GroupTable G;
  G.degree_ = degree;
  G.elements_.push_back(Perm::identity(degree));
  G.index_.emplace(G.elements_.back(), 0);

  // parent[i], via[i]: element i = element parent[i] * gens[via[i]].
  std::vector<int> parent{-1};
  std::vector<int> via{-1};
  std::vector<std::vector<int>> right;  // right[i][k] = index of elements[i] * gens[k]
  for (std::size_t head = 0; head < G.elements_.size(); ++head) {
    std::vector<int> row(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Perm prod = G.elements_[head] * gens[k];
      auto it = G.index_.find(prod);
      if (it == G.index_.end()) {
        if (G.elements_.size() >= budget) {
          throw ClosureBudgetExceeded("closure exceeds " + std::to_string(budget) + " elements");
        }
        const int idx = static_cast<int>(G.elements_.size());
        G.index_.emplace(prod, idx);
        G.elements_.push_back(std::move(prod));
        parent.push_back(static_cast<int>(head));
        via.push_back(static_cast<int>(k));
        row[k] = idx;
      } else {
        row[k] = it->second;
      }
    }
    right.push_back(std::move(row));
  }

  for (const auto& g : gens) G.generators_.push_back(G.index_.at(g));

  const std::size_t n = G.elements_.size();
  G.table_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    auto* row = &G.table_[a * n];
    row[0] = static_cast<std::uint16_t>(a);
    for (std::size_t b = 1; b < n; ++b) {
      row[b] = static_cast<std::uint16_t>(
          right[row[static_cast<std::size_t>(parent[b])]][static_cast<std::size_t>(via[b])]);
    }
  }

  G.inverse_.assign(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    if (G.inverse_[a] >= 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (G.table_[a * n + b] == 0) {
        G.inverse_[a] = static_cast<int>(b);
        G.inverse_[b] = static_cast<int>(a);
        break;
      }
    }
  }

  G.orders_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    int k = 1;
    for (int x = static_cast<int>(a); x != 0; x = G.mul(x, static_cast<int>(a))) ++k;
    G.orders_[a] = k;
  }
  G.build_classes();
  return G;
}

void GroupTable::build_classes() {
  const std::size_t n = order();
  std::vector<int> raw(n, -1);
  std::vector<std::vector<int>> found;
  for (std::size_t x = 0; x < n; ++x) {
    if (raw[x] >= 0) continue;
    const int id = static_cast<int>(found.size());
    std::vector<int> cls{static_cast<int>(x)};
    raw[x] = id;
    for (std::size_t head = 0; head < cls.size(); ++head) {
      for (int g : generators_) {
        const int y = conj(cls[head], g);
        if (raw[static_cast<std::size_t>(y)] < 0) {
          raw[static_cast<std::size_t>(y)] = id;
          cls.push_back(y);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    found.push_back(std::move(cls));
  }
  std::sort(found.begin(), found.end(), [this](const auto& a, const auto& b) {
    return std::make_tuple(element_order(a.front()), a.size(), a.front()) <
           std::make_tuple(element_order(b.front()), b.size(), b.front());
  });
  classes_ = std::move(found);
  class_of_.assign(n, -1);
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (int x : classes_[c]) class_of_[static_cast<std::size_t>(x)] = static_cast<int>(c);
}

std::vector<Perm> GroupTable::generator_perms() const {
  std::vector<Perm> out;
  for (int g : generators_) out.push_back(element(g));
  return out;
}

std::optional<int> GroupTable::index_of(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int GroupTable::pow(int a, long long k) const {
  const long long m = element_order(a);
  k %= m;
  if (k < 0) k += m;
  int result = 0;
  int base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

ElementSet GroupTable::full_set() const {
  ElementSet s(order());
  for (std::size_t i = 0; i < order(); ++i) s.insert(i);
  return s;
}

ElementSet GroupTable::trivial_set() const {
  ElementSet s(order());
  s.insert(0);
  return s;
}

Subgroup::Subgroup(const GroupTable& parent, ElementSet members)
    : parent_(&parent), mask_(std::move(members)), members_(mask_.members()) {
  if (mask_.universe() != parent.order() || !mask_.contains(0)) {
    throw std::invalid_argument("Subgroup: member set must contain the identity");
  }
  if (parent.order() % members_.size() != 0) {
    throw std::invalid_argument("Subgroup: order does not divide the group order");
  }
#ifndef NDEBUG
  for (int a : members_)
    for (int b : members_) assert(mask_.contains(static_cast<std::size_t>(parent.mul(a, b))));
#endif
}

}  // namespace edlab
