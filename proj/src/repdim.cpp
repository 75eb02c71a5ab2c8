#include "edlab/repdim.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "edlab/errors.hpp"
#include "edlab/structure.hpp"

namespace edlab {

namespace {

ElementSet kernel_meet(const GroupTable& G, const CharacterTable& table, const std::vector<int>& chosen) {
  ElementSet meet(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) meet.insert(g);
  for (int i : chosen) meet = meet & table.kernels[static_cast<std::size_t>(i)];
  return meet;
}

// Cover search: every minimal normal subgroup must escape the kernel of some
// chosen character.
class CoverSearch {
 public:
  CoverSearch(const CharacterTable& table, const std::vector<Subgroup>& minimal)
      : degrees_(table.degrees), targets_(minimal.size()) {
    covers_.resize(degrees_.size());
    for (std::size_t i = 0; i < degrees_.size(); ++i)
      for (std::size_t m = 0; m < targets_; ++m)
        if (!minimal[m].mask().is_subset_of(table.kernels[i]))
          covers_[i].push_back(m);
    cheapest_.assign(targets_, std::numeric_limits<int>::max());
    coverers_.resize(targets_);
    for (std::size_t i = 0; i < degrees_.size(); ++i)
      for (std::size_t m : covers_[i]) {
        cheapest_[m] = std::min(cheapest_[m], degrees_[i]);
        coverers_[m].push_back(static_cast<int>(i));
      }
  }

  FaithfulWitness run() {
    std::vector<int> covered(targets_, 0);
    std::vector<int> chosen;
    descend(covered, chosen, 0);
    FaithfulWitness w;
    w.characters = best_;
    w.total_degree = best_cost_;
    return w;
  }

 private:
  void descend(std::vector<int>& covered, std::vector<int>& chosen, int cost) {
    std::size_t first = targets_;
    int bound = 0;
    for (std::size_t m = 0; m < targets_; ++m)
      if (!covered[m]) {
        if (first == targets_) first = m;
        bound = std::max(bound, cheapest_[m]);
      }
    if (cost + bound > best_cost_) return;
    if (first == targets_) {
      auto sorted = chosen;
      std::sort(sorted.begin(), sorted.end());
      if (cost < best_cost_ || sorted < best_) {
        best_cost_ = cost;
        best_ = std::move(sorted);
      }
      return;
    }
    for (int i : coverers_[first]) {
      if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
      chosen.push_back(i);
      for (std::size_t m : covers_[static_cast<std::size_t>(i)]) ++covered[m];
      descend(covered, chosen, cost + degrees_[static_cast<std::size_t>(i)]);
      for (std::size_t m : covers_[static_cast<std::size_t>(i)]) --covered[m];
      chosen.pop_back();
    }
  }

  const std::vector<int>& degrees_;
  std::size_t targets_;
  std::vector<std::vector<std::size_t>> covers_;
  std::vector<std::vector<int>> coverers_;
  std::vector<int> cheapest_;
  std::vector<int> best_;
  int best_cost_ = std::numeric_limits<int>::max();
};

}  // namespace

RepresentationDimension representation_dimension(const GroupTable& G, const CharacterTable& table) {
  const auto minimal = minimal_normal_subgroups(G);
  FaithfulWitness w = CoverSearch(table, minimal).run();
  w.kernel_intersection_order = kernel_meet(G, table, w.characters).count();
  return {w.total_degree, std::move(w)};
}

RepresentationDimension representation_dimension(const GroupTable& G) {
  return representation_dimension(G, character_table(G));
}

bool is_irredundant(const GroupTable& G, const CharacterTable& table, const FaithfulWitness& w) {
  for (std::size_t skip = 0; skip < w.characters.size(); ++skip) {
    std::vector<int> rest;
    for (std::size_t k = 0; k < w.characters.size(); ++k)
      if (k != skip) rest.push_back(w.characters[k]);
    if (kernel_meet(G, table, rest).count() == 1) return false;
  }
  return true;
}

int abelian_rd_check(const GroupTable& G) {
  const int rank = rank_from_invariants(abelian_invariants(G));
  const int rd = representation_dimension(G).rd;
  if (rank != rd)
    throw RankMismatch("abelian group of rank " + std::to_string(rank) + " has rd " + std::to_string(rd));
  return rank;
}

}  // namespace edlab
