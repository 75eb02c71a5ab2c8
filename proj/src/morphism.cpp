#include "edlab/morphism.hpp"

#include <algorithm>
#include <functional>

namespace edlab {

namespace {

/// Backtracking state for generator-image search.
class ImageSearch {
 public:
  ImageSearch(const GroupTable& source, const GroupTable& target, const MonomorphismOptions& options)
      : src_(source), dst_(target), opt_(options), gens_(small_generating_set(source)) {
    img_.assign(src_.order(), -1);
    used_.assign(dst_.order(), 0);
    img_[0] = 0;
    used_[0] = 1;
    mapped_.push_back(0);
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      const int g = gens_[k];
      std::vector<int> cands;
      auto consider = [&](int t) {
        if (dst_.element_order(t) != src_.element_order(g)) return;
        const auto cs = src_.centralizer_order(g);
        const auto ct = dst_.centralizer_order(t);
        if (opt_.exact_centralizers ? cs != ct : ct % cs != 0) return;
        cands.push_back(t);
      };
      if (k == 0 && opt_.reduce_by_conjugacy) {
        for (const auto& cls : dst_.classes()) consider(cls.front());
      } else {
        for (std::size_t t = 0; t < dst_.order(); ++t) consider(static_cast<int>(t));
      }
      candidates_.push_back(std::move(cands));
    }
    images_.assign(gens_.size(), -1);
  }

  const std::vector<int>& generators() const { return gens_; }

  /// Calls `on_found` for each complete assignment until it returns false.
  /// Returns false if the budget ran out.
  bool run(const std::function<bool(const std::vector<int>&)>& on_found) {
    on_found_ = &on_found;
    stop_ = false;
    exhausted_ = false;
    if (gens_.empty()) {
      on_found(images_);
      return true;
    }
    recurse(0);
    return !exhausted_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void recurse(std::size_t k) {
    for (int t : candidates_[k]) {
      if (stop_ || exhausted_) return;
      if (++nodes_ > opt_.budget) {
        exhausted_ = true;
        return;
      }
      images_[k] = t;
      const std::size_t mark = mapped_.size();
      const bool ok = extend(k);
      if (ok) {
        if (k + 1 == gens_.size()) {
          if (!(*on_found_)(images_)) stop_ = true;
        } else {
          recurse(k + 1);
        }
      }
      for (std::size_t i = mark; i < mapped_.size(); ++i) {
        used_[static_cast<std::size_t>(img_[static_cast<std::size_t>(mapped_[i])])] = 0;
        img_[static_cast<std::size_t>(mapped_[i])] = -1;
      }
      mapped_.resize(mark);
    }
  }

  bool edge(int x, std::size_t j) {
    const int y = src_.mul(x, gens_[j]);
    const int expected = dst_.mul(img_[static_cast<std::size_t>(x)], images_[j]);
    int& slot = img_[static_cast<std::size_t>(y)];
    if (slot >= 0) return slot == expected;
    if (used_[static_cast<std::size_t>(expected)]) return false;
    slot = expected;
    used_[static_cast<std::size_t>(expected)] = 1;
    mapped_.push_back(y);
    return true;
  }

  // Closes the mapped set under generators 0..k, checking consistency.
  bool extend(std::size_t k) {
    const std::size_t old = mapped_.size();
    for (std::size_t i = 0; i < old; ++i)
      if (!edge(mapped_[i], k)) return false;
    for (std::size_t i = old; i < mapped_.size(); ++i)
      for (std::size_t j = 0; j <= k; ++j)
        if (!edge(mapped_[i], j)) return false;
    return true;
  }

  const GroupTable& src_;
  const GroupTable& dst_;
  MonomorphismOptions opt_;
  std::vector<int> gens_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> images_;
  std::vector<int> img_;
  std::vector<char> used_;
  std::vector<int> mapped_;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
  bool exhausted_ = false;
  const std::function<bool(const std::vector<int>&)>* on_found_ = nullptr;
};

}  // namespace

MonomorphismResult find_monomorphism(const GroupTable& source, const GroupTable& target,
                                     const MonomorphismOptions& options) {
  MonomorphismResult result;
  if (target.order() % source.order() != 0) return result;
  ImageSearch search(source, target, options);
  const bool complete = search.run([&](const std::vector<int>& images) {
    result.witness = EmbeddingWitness{search.generators(), images};
    return false;
  });
  result.nodes = search.nodes();
  if (result.witness) {
    result.status = SearchStatus::Found;
  } else {
    result.status = complete ? SearchStatus::NotFound : SearchStatus::BudgetExhausted;
  }
  return result;
}

std::vector<EmbeddingWitness> all_monomorphisms(const GroupTable& source, const GroupTable& target,
                                                std::size_t limit) {
  std::vector<EmbeddingWitness> out;
  if (target.order() % source.order() != 0) return out;
  MonomorphismOptions opt;
  opt.reduce_by_conjugacy = false;
  opt.budget = UINT64_MAX;
  ImageSearch search(source, target, opt);
  search.run([&](const std::vector<int>& images) {
    out.push_back({search.generators(), images});
    return out.size() < limit;
  });
  return out;
}

std::optional<std::vector<int>> extend_homomorphism(const GroupTable& source,
                                                    const GroupTable& target,
                                                    const std::vector<int>& source_generators,
                                                    const std::vector<int>& images,
                                                    bool injective) {
  if (source_generators.size() != images.size()) return std::nullopt;
  std::vector<int> img(source.order(), -1);
  std::vector<char> used(target.order(), 0);
  img[0] = 0;
  used[0] = 1;
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (std::size_t j = 0; j < images.size(); ++j) {
      const int y = source.mul(x, source_generators[j]);
      const int expected = target.mul(img[static_cast<std::size_t>(x)], images[j]);
      if (img[static_cast<std::size_t>(y)] >= 0) {
        if (img[static_cast<std::size_t>(y)] != expected) return std::nullopt;
        continue;
      }
      if (injective && used[static_cast<std::size_t>(expected)]) return std::nullopt;
      used[static_cast<std::size_t>(expected)] = 1;
      img[static_cast<std::size_t>(y)] = expected;
      queue.push_back(y);
    }
  }
  if (queue.size() != source.order()) return std::nullopt;
  return img;
}

std::optional<std::vector<int>> extend_witness(const GroupTable& source, const GroupTable& target,
                                               const EmbeddingWitness& w) {
  return extend_homomorphism(source, target, w.source_generators, w.images, true);
}

bool verify_witness(const GroupTable& source, const GroupTable& target, const EmbeddingWitness& w) {
  const auto img = extend_witness(source, target, w);
  if (!img) return false;
  // Full relation check over the multiplication table.
  for (std::size_t a = 0; a < source.order(); ++a)
    for (std::size_t b = 0; b < source.order(); ++b)
      if ((*img)[static_cast<std::size_t>(source.mul(static_cast<int>(a), static_cast<int>(b)))] !=
          target.mul((*img)[a], (*img)[b]))
        return false;
  return true;
}

GroupFingerprint fingerprint(const GroupTable& G) {
  GroupFingerprint f;
  f.invariants = structural_invariants(G);
  for (const auto& cls : G.classes()) {
    const int x = cls.front();
    const auto sq = G.classes()[static_cast<std::size_t>(G.class_of(G.mul(x, x)))].size();
    f.class_profile.emplace_back(G.element_order(x), cls.size(), sq);
  }
  std::sort(f.class_profile.begin(), f.class_profile.end());
  return f;
}

std::optional<EmbeddingWitness> is_isomorphic(const GroupTable& G, const GroupFingerprint& fg,
                                              const GroupTable& H, const GroupFingerprint& fh) {
  if (G.order() != H.order() || !(fg == fh)) return std::nullopt;
  MonomorphismOptions opt;
  opt.exact_centralizers = true;
  opt.budget = UINT64_MAX;
  auto r = find_monomorphism(G, H, opt);
  return r.witness;
}

std::optional<EmbeddingWitness> is_isomorphic(const GroupTable& G, const GroupTable& H) {
  if (G.order() != H.order()) return std::nullopt;
  return is_isomorphic(G, fingerprint(G), H, fingerprint(H));
}

}  // namespace edlab
