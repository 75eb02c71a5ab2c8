#include "edlab/engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "edlab/dsl.hpp"
#include "edlab/errors.hpp"
#include "edlab/parallel.hpp"
#include "edlab/repdim.hpp"
#include "edlab/shape.hpp"
#include "edlab/structure.hpp"

namespace edlab {

namespace {

constexpr std::array<RuleInfo, 14> kCatalogue{{
    {RuleId::R1, "R1", "rd-upper", "faithful-representation bound", "ed <= rd"},
    {RuleId::R2, "R2", "center-trivial-upper", "compression of a faithful representation with trivial center",
     "Z(G) = 1 => ed <= rd - 1"},
    {RuleId::R3, "R3", "abelian", "essential dimension of abelian groups over C", "G abelian => ed = rank"},
    {RuleId::R4, "R4", "subgroup-lower", "subgroup monotonicity of essential dimension",
     "H <= G => ed(H) <= ed(G)"},
    {RuleId::R5, "R5", "index-upper", "index bound for subgroups", "ed(G) <= [G:H] ed(H)"},
    {RuleId::R6, "R6", "product-upper", "subadditivity over direct products", "ed(A x B) <= ed(A) + ed(B)"},
    {RuleId::R7, "R7", "lotscher", "Loetscher's central-subgroup formula",
     "A central, A n [G,G] = 1 => ed(G) = ed(G/A) - rank Z(G/A) + rank Z(G)"},
    {RuleId::R8, "R8", "km-p-group", "Karpenko-Merkurjev theorem on p-groups", "G a p-group => ed = rd"},
    {RuleId::R9, "R9", "ed1-classification", "classification of groups of essential dimension one",
     "ed = 1 iff G is cyclic or odd dihedral, else ed >= 2"},
    {RuleId::R10, "R10", "duncan-upper", "Duncan's classification of essential dimension two",
     "G embeds in an ed-2 target => ed <= 2"},
    {RuleId::R11, "R11", "duncan-exclusion", "Duncan's classification of essential dimension two",
     "G embeds in no ed-2 target => ed >= 3"},
    {RuleId::R12, "R12", "center-nontrivial-lower", "lower bound for groups with nontrivial center",
     "Z(G) != 1 and rd >= 3 => ed >= 3"},
    {RuleId::R13, "R13", "ledet", "Ledet's bound for the holomorph of a cyclic group",
     "G = C_q : C_q^* with q = p^n => ed <= phi(p-1) p^(n-1)"},
    {RuleId::R14, "R14", "order48", "embedding G -> G/G_3 x S3 for order 48 with normal Sylow 3-subgroup",
     "ed(G) <= ed(G/G_3) + 1"},
}};

constexpr GapId kS3{6, 1};

// Proper nontrivial subgroup class, identified in the database.
struct Link {
  GapId id;
  int index = 0;
  std::vector<int> generators;
};

struct Product {
  GapId first, second;
  std::vector<int> first_generators, second_generators;
};

// Structural data of one group; independent of the bounds.
struct Context {
  const DatabaseGroup* entry = nullptr;
  int rd = 0;
  std::optional<int> abelian_rank;
  bool center_trivial = true;
  ShapeTags shape;
  std::optional<int> ledet;
  std::optional<std::vector<Link>> subgroups;  // absent above the enumeration scope
  std::vector<Product> products;
  std::vector<LotscherApplication> lotscher;
  std::optional<Order48Certificate> order48;
  // Filled lazily by the scheduler.
  bool upper_done = false;
  std::optional<DuncanWitness> upper;
  bool exclusion_done = false;
  ExclusionResult exclusion;
};

std::string join_elements(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

GapId identify_or_throw(const Database& db, const GroupTable& G, const std::string& what) {
  auto id = db.identify(G);
  if (!id) throw CertificateFailure(what + " is not in the database");
  return *id;
}

std::vector<Link> subgroup_inventory(const GroupTable& G, const Database& db) {
  std::vector<Link> out;
  std::set<GapId> seen;
  for (const auto& H : subgroups_up_to_conjugacy(G)) {
    if (H.order() == 1 || H.order() == G.order()) continue;
    const auto id = db.identify(subgroup_as_group(H));
    if (!id || !seen.insert(*id).second) continue;
    out.push_back({*id, static_cast<int>(G.order() / H.order()), small_generating_set(H)});
  }
  return out;
}

std::vector<Product> direct_products(const GroupTable& G, const Database& db) {
  std::vector<Subgroup> normals;
  for (auto& n : normal_subgroups(G))
    if (n.group.order() > 1 && n.group.order() < G.order()) normals.push_back(std::move(n.group));
  std::vector<Product> out;
  std::set<std::pair<GapId, GapId>> seen;
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      const auto& a = normals[i];
      const auto& b = normals[j];
      if (a.order() * b.order() != G.order() || (a.mask() & b.mask()).count() != 1) continue;
      auto ia = db.identify(subgroup_as_group(a));
      auto ib = db.identify(subgroup_as_group(b));
      if (!ia || !ib) continue;
      if (*ib < *ia) {
        if (!seen.insert({*ib, *ia}).second) continue;
        out.push_back({*ib, *ia, small_generating_set(b), small_generating_set(a)});
      } else {
        if (!seen.insert({*ia, *ib}).second) continue;
        out.push_back({*ia, *ib, small_generating_set(a), small_generating_set(b)});
      }
    }
  return out;
}

bool meets_derived_trivially(const Subgroup& A) {
  const auto D = derived_subgroup(A.parent());
  return (A.mask() & D.mask()).count() == 1;
}

bool is_central(const Subgroup& A) {
  const auto& G = A.parent();
  for (int a : A.members())
    for (int g : G.generators())
      if (G.mul(a, g) != G.mul(g, a)) return false;
  return true;
}

std::string bound_text(std::optional<int> lo, std::optional<int> hi) {
  if (lo && hi && *lo == *hi) return "ed = " + std::to_string(*lo);
  std::string s;
  if (lo) s += "ed >= " + std::to_string(*lo);
  if (hi) s += std::string(lo ? ", " : "") + "ed <= " + std::to_string(*hi);
  return s;
}

int euler_phi(int n) {
  int result = n;
  for (int p : prime_factors(static_cast<std::size_t>(n))) result = result / p * (p - 1);
  return result;
}

class Scheduler {
 public:
  Scheduler(const Database& db, FactTable seed, const EngineOptions& options)
      : db_(db), options_(options), facts_(std::move(seed)) {
    for (const auto& g : db.groups()) ids_.push_back(g.entry.id);
    std::sort(ids_.begin(), ids_.end());
    contexts_.resize(ids_.size());
    parallel_for(ids_.size(), [&](std::size_t i) { contexts_[i] = build_context(db.at(ids_[i])); });
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      position_[ids_[i]] = i;
      auto& c = contexts_[i];
      auto it = facts_.find(ids_[i]);
      if (it == facts_.end()) {
        EdFact f{ids_[i], c.rd, 1, c.rd, {}};
        TraceStep step{RuleId::R1, std::nullopt, c.rd, {}, {c.rd}, {}, std::nullopt, {},
                       "rd(G) = " + std::to_string(c.rd)};
        f.traces.push_back(std::move(step));
        if (c.rd < 1) throw InconsistentBounds(ids_[i].to_string() + " has rd " + std::to_string(c.rd));
        facts_.emplace(ids_[i], std::move(f));
      } else if (it->second.rd != c.rd) {
        throw InconsistentBounds("seed fact for " + ids_[i].to_string() + " records rd " +
                                 std::to_string(it->second.rd) + ", computed " + std::to_string(c.rd));
      }
    }
  }

  InferenceResult run() {
    std::size_t passes = 0;
    for (;;) {
      ++passes;
      changed_ = false;
      for (auto id : ids_) direct_rules(id);
      for (auto id : ids_) structural_rules(id);
      if (changed_) continue;
      for (auto id : ids_) classification_rules(id);
      if (!changed_) break;
    }
    return {std::move(facts_), passes};
  }

 private:
  Context build_context(const DatabaseGroup& g) const {
    const auto& G = g.group;
    Context c;
    c.entry = &g;
    c.rd = representation_dimension(G).rd;
    if (G.is_abelian()) c.abelian_rank = rank_from_invariants(abelian_invariants(G));
    const auto Z = center(G);
    c.center_trivial = Z.order() == 1;
    c.shape = recognize_shape(G);
    c.ledet = ledet_bound(G);
    if (G.order() <= kSubgroupScope) c.subgroups = subgroup_inventory(G, db_);
    c.products = direct_products(G, db_);
    c.lotscher = lotscher_reduction(G, db_);
    c.order48 = order48_certificate(G, db_, options_);
    return c;
  }

  Context& ctx(GapId id) { return contexts_[position_.at(id)]; }
  EdFact& fact(GapId id) { return facts_.at(id); }

  void tighten(GapId id, std::optional<int> lo, std::optional<int> hi, TraceStep step) {
    auto& f = fact(id);
    const bool raises = lo && *lo > f.lo;
    const bool lowers = hi && *hi < f.hi;
    if (!raises && !lowers) return;
    if (raises) f.lo = *lo;
    if (lowers) f.hi = *hi;
    step.lo = lo;
    step.hi = hi;
    f.traces.push_back(std::move(step));
    changed_ = true;
    if (f.lo > f.hi)
      throw InconsistentBounds(id.to_string() + ": " + std::string(rule_info(f.traces.back().rule).code) +
                               " gives [" + std::to_string(f.lo) + "," + std::to_string(f.hi) + "]\n" +
                               format_trace(f));
  }

  static TraceStep make_step(RuleId rule, std::vector<Premise> premises = {}, std::vector<int> parameters = {},
                             std::string detail = {}) {
    TraceStep s{};
    s.rule = rule;
    s.premises = std::move(premises);
    s.parameters = std::move(parameters);
    s.detail = std::move(detail);
    return s;
  }

  // R3, R8, R9, R12, R13, R14, R2; R1 is applied when the fact is created.
  void direct_rules(GapId id) {
    auto& c = ctx(id);
    const int rd = c.rd;
    if (c.abelian_rank)
      tighten(id, *c.abelian_rank, *c.abelian_rank,
              make_step(RuleId::R3, {}, {*c.abelian_rank}, "rank " + std::to_string(*c.abelian_rank)));
    if (c.shape.p_group)
      tighten(id, rd, rd,
              make_step(RuleId::R8, {}, {*c.shape.p_group, rd},
                        std::to_string(*c.shape.p_group) + "-group, rd(G) = " + std::to_string(rd)));
    if (c.shape.cyclic || c.shape.odd_dihedral)
      tighten(id, 1, 1, make_step(RuleId::R9, {}, {}, c.shape.cyclic ? "cyclic" : "odd dihedral"));
    else
      tighten(id, 2, std::nullopt, make_step(RuleId::R9, {}, {}, "neither cyclic nor odd dihedral"));
    if (!c.center_trivial && rd >= 3)
      tighten(id, 3, std::nullopt,
              make_step(RuleId::R12, {}, {rd}, "Z(G) != 1, rd(G) = " + std::to_string(rd)));
    if (c.ledet)
      tighten(id, std::nullopt, *c.ledet,
              make_step(RuleId::R13, {}, {*c.shape.holomorph_q, *c.ledet},
                        "q = " + std::to_string(*c.shape.holomorph_q)));
    if (c.order48) {
      const auto& g2 = fact(c.order48->sylow2);
      const auto& s3 = fact(kS3);
      auto step = make_step(RuleId::R14, {{g2.id, BoundSide::Upper, g2.hi}, {kS3, BoundSide::Upper, s3.hi}}, {},
                            "G/G_3 = " + g2.id.to_string());
      step.embedding = c.order48->embedding;
      tighten(id, std::nullopt, g2.hi + s3.hi, std::move(step));
    }
    if (c.center_trivial && rd >= 2)
      tighten(id, std::nullopt, rd - 1, make_step(RuleId::R2, {}, {rd}, "Z(G) = 1, rd(G) = " + std::to_string(rd)));
  }

  void structural_rules(GapId id) {
    auto& c = ctx(id);
    if (c.subgroups) {
      for (const auto& link : *c.subgroups) {
        subgroup_down(id, link);
        subgroup_up(id, link);
      }
      for (const auto& link : *c.subgroups) {
        const auto& h = fact(link.id);
        auto step = make_step(RuleId::R5, {{link.id, BoundSide::Upper, h.hi}}, {link.index},
                              "[G:H] = " + std::to_string(link.index) + " with H = " + link.id.to_string());
        step.elements = link.generators;
        tighten(id, std::nullopt, link.index * h.hi, std::move(step));
      }
    } else {
      embedded_subgroups(id);
    }
    for (const auto& p : c.products) {
      const auto& a = fact(p.first);
      const auto& b = fact(p.second);
      auto step = make_step(RuleId::R6, {{p.first, BoundSide::Upper, a.hi}, {p.second, BoundSide::Upper, b.hi}},
                            {static_cast<int>(p.first_generators.size())},
                            "G = " + p.first.to_string() + " x " + p.second.to_string());
      step.elements = p.first_generators;
      step.elements.insert(step.elements.end(), p.second_generators.begin(), p.second_generators.end());
      tighten(id, std::nullopt, a.hi + b.hi, std::move(step));
    }
    for (const auto& app : c.lotscher) lotscher(id, app);
  }

  void subgroup_down(GapId id, const Link& link) {
    const int lo = fact(link.id).lo;
    auto step = make_step(RuleId::R4, {{link.id, BoundSide::Lower, lo}}, {0},
                          "H = " + link.id.to_string() + " <= G");
    step.elements = link.generators;
    tighten(id, lo, std::nullopt, std::move(step));
  }

  void subgroup_up(GapId id, const Link& link) {
    const int hi = fact(id).hi;
    auto step = make_step(RuleId::R4, {{id, BoundSide::Upper, hi}}, {1},
                          "G <= " + id.to_string());
    step.elements = link.generators;
    tighten(link.id, std::nullopt, hi, std::move(step));
  }

  // R4 for groups beyond the subgroup-enumeration scope: embeddings of
  // smaller database groups found by search, cached per pair.
  void embedded_subgroups(GapId id) {
    const auto& big = ctx(id).entry;
    const auto& hist = big->fingerprint.invariants.element_order_histogram;
    for (auto sid : ids_) {
      if (sid.order >= id.order || id.order % sid.order != 0) continue;
      if (fact(sid).lo <= fact(id).lo && fact(sid).hi <= fact(id).hi) continue;
      const auto& small = ctx(sid).entry;
      bool fits = true;
      for (const auto& [k, n] : small->fingerprint.invariants.element_order_histogram) {
        auto it = hist.find(k);
        if (it == hist.end() || it->second < n) fits = false;
      }
      if (!fits) continue;
      auto key = std::make_pair(sid, id);
      auto it = embeddings_.find(key);
      if (it == embeddings_.end()) {
        auto r = find_monomorphism(small->group, big->group, {.budget = options_.budget});
        it = embeddings_.emplace(key, r.status == SearchStatus::Found ? r.witness : std::nullopt).first;
      }
      if (!it->second) continue;
      const int lo = fact(sid).lo;
      auto down = make_step(RuleId::R4, {{sid, BoundSide::Lower, lo}}, {0},
                            "H = " + sid.to_string() + " embeds in G");
      down.embedding = it->second;
      tighten(id, lo, std::nullopt, std::move(down));
      const int hi = fact(id).hi;
      auto up = make_step(RuleId::R4, {{id, BoundSide::Upper, hi}}, {1}, "G embeds in " + id.to_string());
      up.embedding = it->second;
      tighten(sid, std::nullopt, hi, std::move(up));
    }
  }

  void lotscher(GapId id, const LotscherApplication& app) {
    const int shift = app.shift();
    const std::vector<int> params{0, app.center_rank, app.quotient_center_rank};
    const std::string detail = "|A| = " + std::to_string(app.central_order) + ", G/A = " +
                               app.quotient.to_string() + ", shift " + std::to_string(shift);
    {
      const auto& q = fact(app.quotient);
      auto lo = make_step(RuleId::R7, {{app.quotient, BoundSide::Lower, q.lo}}, params, detail);
      lo.elements = app.central_generators;
      tighten(id, q.lo + shift, std::nullopt, std::move(lo));
      auto hi = make_step(RuleId::R7, {{app.quotient, BoundSide::Upper, q.hi}}, params, detail);
      hi.elements = app.central_generators;
      tighten(id, std::nullopt, q.hi + shift, std::move(hi));
    }
    auto reverse = params;
    reverse[0] = 1;
    const std::string back = "quotient of " + id.to_string() + " by |A| = " + std::to_string(app.central_order) +
                             ", shift " + std::to_string(shift);
    const auto& g = fact(id);
    auto lo = make_step(RuleId::R7, {{id, BoundSide::Lower, g.lo}}, reverse, back);
    lo.elements = app.central_generators;
    tighten(app.quotient, g.lo - shift, std::nullopt, std::move(lo));
    auto hi = make_step(RuleId::R7, {{id, BoundSide::Upper, g.hi}}, reverse, back);
    hi.elements = app.central_generators;
    tighten(app.quotient, std::nullopt, g.hi - shift, std::move(hi));
  }

  void classification_rules(GapId id) {
    auto& c = ctx(id);
    const auto& G = c.entry->group;
    if (fact(id).lo <= 2 && fact(id).hi > 2) {
      if (!c.upper_done) {
        c.upper = duncan_upper(G, c.rd, {.budget = options_.budget});
        c.upper_done = true;
      }
      if (c.upper) {
        const auto& w = *c.upper;
        auto step = make_step(RuleId::R10, {},
                              {w.family ? static_cast<int>(*w.family) : -1, w.modulus,
                               static_cast<int>(w.torus_intersection)},
                              "case " + w.case_label +
                                  (w.family ? ", m = " + std::to_string(w.modulus) + ", |G n T| = " +
                                                  std::to_string(w.torus_intersection)
                                            : std::string{}));
        step.label = w.case_label;
        step.embedding = w.embedding;
        tighten(id, std::nullopt, 2, std::move(step));
      }
    }
    if (fact(id).lo < 3 && fact(id).hi >= 3) {
      if (!c.exclusion_done) {
        c.exclusion = duncan_exclusion(G, c.rd, {.budget = options_.budget});
        c.exclusion_done = true;
      }
      if (c.exclusion.verdict == ExclusionVerdict::Excluded) {
        std::string detail;
        for (const auto& cert : c.exclusion.cases) detail += (detail.empty() ? "" : "; ") + cert.case_label + ": " + cert.reason;
        tighten(id, 3, std::nullopt, make_step(RuleId::R11, {}, {}, detail));
      }
    }
  }

  const Database& db_;
  EngineOptions options_;
  FactTable facts_;
  std::vector<GapId> ids_;
  std::vector<Context> contexts_;
  std::map<GapId, std::size_t> position_;
  std::map<std::pair<GapId, GapId>, std::optional<EmbeddingWitness>> embeddings_;
  bool changed_ = false;
};

bool premises_hold(const FactTable& facts, const TraceStep& step) {
  for (const auto& p : step.premises) {
    auto it = facts.find(p.id);
    if (it == facts.end()) return false;
    if (p.side == BoundSide::Lower ? it->second.lo < p.value : it->second.hi > p.value) return false;
  }
  return true;
}

bool replay_lotscher(const Database& db, GapId big_id, GapId quotient_id, const TraceStep& step) {
  if (step.parameters.size() != 3) return false;
  const auto& big = db.at(big_id).group;
  const auto A = generated_subgroup(big, step.elements);
  if (A.order() == 1 || !is_central(A) || !meets_derived_trivially(A)) return false;
  const auto Q = quotient_group(big, A);
  if (db.identify(Q.group) != quotient_id) return false;
  return abelian_rank(center(big)) == step.parameters[1] && abelian_rank(center(Q.group)) == step.parameters[2];
}

}  // namespace

const std::array<RuleInfo, 14>& rule_catalogue() { return kCatalogue; }

const RuleInfo& rule_info(RuleId id) { return kCatalogue[static_cast<std::size_t>(id) - 1]; }

InferenceResult run_inference(const Database& db, const EngineOptions& options) {
  return run_inference(db, FactTable{}, options);
}

InferenceResult run_inference(const Database& db, FactTable seed, const EngineOptions& options) {
  db.at(kS3);
  Scheduler s(db, std::move(seed), options);
  return s.run();
}

std::vector<LotscherApplication> lotscher_reduction(const GroupTable& G, const Database& db) {
  const auto Z = center(G);
  if (Z.order() == 1 || Z.order() > kSubgroupScope) return {};
  const auto D = derived_subgroup(G);
  const auto Zg = subgroup_as_group(Z);
  const int rank_z = abelian_rank(Z);
  std::vector<LotscherApplication> out;
  std::set<GapId> seen;
  for (const auto& S : all_subgroups(Zg)) {
    if (S.order() == 1) continue;
    std::vector<int> gens;
    for (int x : small_generating_set(S)) gens.push_back(*G.index_of(Zg.element(x)));
    const auto A = generated_subgroup(G, gens);
    if ((A.mask() & D.mask()).count() != 1) continue;
    const auto Q = quotient_group(G, A);
    auto id = db.identify(Q.group);
    if (!id || !seen.insert(*id).second) continue;
    out.push_back({gens, A.order(), *id, rank_z, abelian_rank(center(Q.group))});
  }
  return out;
}

int ledet_formula(int q) {
  const auto primes = prime_factors(static_cast<std::size_t>(q));
  if (primes.size() != 1) throw std::invalid_argument("ledet_formula: q must be a prime power");
  const int p = primes[0];
  int power = 1;
  for (int r = q / p; r > 1; r /= p) power *= p;
  return euler_phi(p - 1) * power;
}

std::optional<int> ledet_bound(const GroupTable& G) {
  auto q = cyclic_holomorph_q(G);
  if (!q) return std::nullopt;
  return ledet_formula(*q);
}

std::optional<Order48Certificate> order48_certificate(const GroupTable& G, const Database& db,
                                                      const EngineOptions& options) {
  if (G.order() != 48) return std::nullopt;
  const auto P = sylow_subgroup(G, 3);
  if (!is_normal(P)) return std::nullopt;
  const auto Q = quotient_group(G, P);
  const GapId g2 = identify_or_throw(db, Q.group, "G/G_3");
  const auto target = realize("(" + db.at(g2).entry.expr + ") x S(3)");
  auto r = find_monomorphism(G, target, {.budget = options.budget});
  if (r.status != SearchStatus::Found)
    throw CertificateFailure("no embedding of an order-48 group into " + g2.to_string() + " x S3 (" +
                             (r.status == SearchStatus::NotFound ? "search exhausted" : "budget exhausted") + ")");
  return Order48Certificate{g2, *r.witness};
}

bool replay_step(const Database& db, const FactTable& facts, GapId owner, const TraceStep& step) {
  auto it = facts.find(owner);
  if (it == facts.end() || !premises_hold(facts, step)) return false;
  const auto& fact = it->second;
  if ((step.lo && fact.lo < *step.lo) || (step.hi && fact.hi > *step.hi)) return false;
  const auto& G = db.at(owner).group;
  const int rd = fact.rd;
  const auto& P = step.premises;
  auto value = [&](std::size_t i) { return P.at(i).value; };

  switch (step.rule) {
    case RuleId::R1:
      return !step.lo && step.hi == representation_dimension(G).rd;
    case RuleId::R2:
      return center(G).order() == 1 && !step.lo && step.hi == rd - 1;
    case RuleId::R3: {
      if (!G.is_abelian()) return false;
      const int rank = rank_from_invariants(abelian_invariants(G));
      return step.lo == rank && step.hi == rank;
    }
    case RuleId::R4: {
      if (P.size() != 1 || step.parameters.size() != 1) return false;
      const bool up = step.parameters[0] == 1;
      const GapId sub = up ? owner : P[0].id;
      const GapId over = up ? P[0].id : owner;
      if (up ? (P[0].side != BoundSide::Upper || step.hi != value(0) || step.lo)
             : (P[0].side != BoundSide::Lower || step.lo != value(0) || step.hi))
        return false;
      if (step.embedding) return verify_witness(db.at(sub).group, db.at(over).group, *step.embedding);
      const auto H = generated_subgroup(db.at(over).group, step.elements);
      return db.identify(subgroup_as_group(H)) == sub;
    }
    case RuleId::R5: {
      if (P.size() != 1 || step.parameters.size() != 1 || P[0].side != BoundSide::Upper) return false;
      const int index = step.parameters[0];
      if (step.lo || step.hi != index * value(0)) return false;
      const auto H = generated_subgroup(G, step.elements);
      return static_cast<int>(G.order() / H.order()) == index && db.identify(subgroup_as_group(H)) == P[0].id;
    }
    case RuleId::R6: {
      if (P.size() != 2 || step.parameters.size() != 1 || step.lo || step.hi != value(0) + value(1)) return false;
      const auto split = static_cast<std::size_t>(step.parameters[0]);
      if (split > step.elements.size()) return false;
      const std::vector<int> ga(step.elements.begin(), step.elements.begin() + static_cast<long>(split));
      const std::vector<int> gb(step.elements.begin() + static_cast<long>(split), step.elements.end());
      const auto A = generated_subgroup(G, ga);
      const auto B = generated_subgroup(G, gb);
      return is_normal(A) && is_normal(B) && (A.mask() & B.mask()).count() == 1 &&
             A.order() * B.order() == G.order() && db.identify(subgroup_as_group(A)) == P[0].id &&
             db.identify(subgroup_as_group(B)) == P[1].id;
    }
    case RuleId::R7: {
      if (P.size() != 1 || step.parameters.size() != 3) return false;
      const bool reverse = step.parameters[0] == 1;
      const int shift = step.parameters[1] - step.parameters[2];
      const int expected = reverse ? value(0) - shift : value(0) + shift;
      const bool lower = P[0].side == BoundSide::Lower;
      if (lower ? (step.lo != expected || step.hi) : (step.hi != expected || step.lo)) return false;
      return reverse ? replay_lotscher(db, P[0].id, owner, step) : replay_lotscher(db, owner, P[0].id, step);
    }
    case RuleId::R8:
      return recognize_shape(G).p_group.has_value() && step.lo == rd && step.hi == rd;
    case RuleId::R9: {
      const auto s = recognize_shape(G);
      if (s.cyclic || s.odd_dihedral) return step.lo == 1 && step.hi == 1;
      return step.lo == 2 && !step.hi;
    }
    case RuleId::R10: {
      if (step.parameters.size() != 3 || step.lo || step.hi != 2) return false;
      DuncanWitness w;
      w.case_label = step.label;
      if (step.parameters[0] >= 0) w.family = static_cast<TorusFamily>(step.parameters[0]);
      w.modulus = step.parameters[1];
      w.torus_intersection = static_cast<std::size_t>(step.parameters[2]);
      w.embedding = step.embedding;
      return verify_duncan_witness(G, rd, w);
    }
    case RuleId::R11:
      return step.lo == 3 && !step.hi && duncan_exclusion(G, rd).verdict == ExclusionVerdict::Excluded;
    case RuleId::R12:
      return center(G).order() > 1 && rd >= 3 && step.lo == 3 && !step.hi;
    case RuleId::R13: {
      const auto bound = ledet_bound(G);
      return bound && !step.lo && step.hi == *bound;
    }
    case RuleId::R14: {
      if (P.size() != 2 || P[1].id != kS3 || !step.embedding || step.lo || step.hi != value(0) + value(1))
        return false;
      const auto cert = order48_certificate(G, db);
      if (!cert || cert->sylow2 != P[0].id) return false;
      const auto target = realize("(" + db.at(P[0].id).entry.expr + ") x S(3)");
      return verify_witness(G, target, *step.embedding);
    }
  }
  return false;
}

AlphaReport alpha_ratio(const FactTable& facts, int n) {
  std::optional<AlphaReport> best;
  auto less = [](long a, long b, long c, long d) { return a * d < c * b; };
  for (const auto& [id, f] : facts) {
    if (id.order > n) continue;
    const long g = std::gcd(static_cast<long>(f.lo), static_cast<long>(f.rd));
    AlphaReport r{f.lo / g, f.rd / g, id, f.lo == f.hi};
    if (!best || less(r.numerator, r.denominator, best->numerator, best->denominator) ||
        (r.numerator == best->numerator && r.denominator == best->denominator && r.exact && !best->exact))
      best = r;
  }
  if (!best) throw UnknownId("no group of order <= " + std::to_string(n));
  return *best;
}

std::string format_step(const TraceStep& step) {
  const auto& info = rule_info(step.rule);
  std::ostringstream os;
  os << info.code << ' ' << info.name << ": " << bound_text(step.lo, step.hi);
  if (!step.detail.empty()) os << "; " << step.detail;
  for (const auto& p : step.premises)
    os << "; uses " << p.id.to_string() << (p.side == BoundSide::Lower ? " ed >= " : " ed <= ") << p.value;
  if (!step.elements.empty()) os << "; elements " << join_elements(step.elements);
  if (step.embedding) os << "; embedding " << join_elements(step.embedding->source_generators) << " -> "
                         << join_elements(step.embedding->images);
  os << " [" << info.anchor << "]";
  return os.str();
}

std::string format_trace(const EdFact& fact) {
  std::ostringstream os;
  os << fact.id.to_string() << " rd " << fact.rd << " ed [" << fact.lo << "," << fact.hi << "]\n";
  for (const auto& s : fact.traces) os << "  " << format_step(s) << '\n';
  return os.str();
}

}  // namespace edlab
