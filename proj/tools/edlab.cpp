#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <regex>
#include <string>

#include "edlab/chartab.hpp"
#include "edlab/engine.hpp"
#include "edlab/errors.hpp"
#include "edlab/manifest.hpp"
#include "edlab/repdim.hpp"
#include "edlab/report.hpp"
#include "edlab/selftest.hpp"
#include "edlab/shape.hpp"
#include "edlab/structure.hpp"

namespace {

using namespace edlab;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

class BadRange : public Error {
 public:
  using Error::Error;
};

struct Settings {
  std::string manifest;
  std::uint64_t budget = 10'000'000;
  bool trace = true;
};

struct Session {
  Database db;
  InferenceResult inference;
};

Session open_session(const Settings& s) {
  auto db = load_and_verify_manifest(s.manifest);
  auto inference = run_inference(db, EngineOptions{s.budget});
  return {std::move(db), std::move(inference)};
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

int cmd_analyze(const Settings& s, int order, int index) {
  const GapId id{order, index};
  const auto session = open_session(s);
  const auto& entry = session.db.at(id);
  const auto& G = entry.group;
  const auto inv = structural_invariants(G);
  const auto shape = recognize_shape(G);
  const auto table = character_table(G);
  const auto rd = representation_dimension(G, table);
  const auto& fact = session.inference.facts.at(id);

  std::cout << "group " << id.to_string() << " " << entry.entry.structure << "\n";
  std::cout << "order " << inv.order << ", classes " << G.classes().size() << ", exponent " << inv.exponent
            << ", center " << inv.center_order << ", derived subgroup " << inv.derived_order << "\n";
  if (!inv.abelian_invariants.empty()) {
    std::vector<std::string> parts;
    for (auto a : inv.abelian_invariants) parts.push_back(std::to_string(a));
    std::cout << "abelian invariants " << join(parts, " ") << "\n";
  }
  const auto tags = shape.tags();
  std::cout << "shape " << (tags.empty() ? std::string("-") : join(tags, ", ")) << "\n";
  std::vector<std::string> degrees;
  for (int d : table.degrees) degrees.push_back(std::to_string(d));
  std::cout << "character degrees " << join(degrees, " ") << " (prime " << table.prime.p << ")\n";
  std::vector<std::string> witness;
  for (int c : rd.witness.characters) witness.push_back("chi" + std::to_string(c) + ":" + std::to_string(table.degrees[static_cast<std::size_t>(c)]));
  std::cout << "rd " << rd.rd << " witness " << (witness.empty() ? std::string("-") : join(witness, " ")) << "\n";
  std::cout << "ed " << ed_text(fact.lo, fact.hi) << " [" << fact.lo << "," << fact.hi << "] rule " << explanation(fact)
            << "\n";
  if (s.trace) {
    std::cout << "trace\n";
    for (const auto& step : fact.traces) std::cout << "  " << format_step(step) << "\n";
  }
  return kExitOk;
}

std::pair<int, int> parse_range(const std::string& text) {
  static const std::regex pattern(R"((\d{1,4})(?:\.\.(\d{1,4}))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw BadRange("malformed range '" + text + "', expected LO..HI");
  const int lo = std::stoi(m[1]);
  const int hi = m[2].matched ? std::stoi(m[2]) : lo;
  if (lo < 1 || hi > 63 || lo > hi) throw BadRange("range " + text + " is not within 1..63");
  return {lo, hi};
}

int cmd_table(const Settings& s, const std::string& range, TableFormat format) {
  const auto [lo, hi] = parse_range(range);
  const auto session = open_session(s);
  std::vector<OutputRecord> rows;
  for (const auto& [id, fact] : session.inference.facts) {
    if (id.order < lo || id.order > hi) continue;
    const auto& g = session.db.at(id);
    if (g.entry.auxiliary || g.group.is_abelian()) continue;
    rows.push_back(make_record(session.db, fact, s.trace && format == TableFormat::Json));
  }
  std::cout << render(rows, format);
  return kExitOk;
}

int cmd_alpha(const Settings& s, int n) {
  if (n < 2 || n > 63) throw BadRange("alpha needs 2 <= N <= 63");
  const auto session = open_session(s);
  const auto a = alpha_ratio(session.inference.facts, n);
  std::cout << a.numerator << "/" << a.denominator << " attained by " << a.attained_by.to_string() << " ["
            << (a.exact ? "exact" : "lower bound only") << "]\n";

  const auto& f = session.inference.facts.at(a.attained_by);
  std::cout << "ratio " << f.lo << "/" << f.rd << " = " << a.numerator << "/" << a.denominator << " for "
            << a.attained_by.to_string();
  if (auto q = cyclic_holomorph_q(session.db.at(a.attained_by).group)) {
    const int p = prime_factors(static_cast<std::size_t>(*q)).front();
    int e = 0;
    for (int r = *q; r > 1; r /= p) ++e;
    std::cout << ": C" << *q << " : C" << *q << "^* with ed <= phi(" << p - 1 << ") * " << p << "^" << e - 1 << " = "
              << ledet_formula(*q) << " and rd = " << f.rd;
  }
  std::cout << "\n";
  return kExitOk;
}

int cmd_selftest(const Settings& s, const std::string& level_name) {
  const auto level = level_name == "full" ? SelftestLevel::Full : SelftestLevel::Fast;
  const auto db = load_and_verify_manifest(s.manifest);
  const auto suites = run_selftest(db, level, EngineOptions{s.budget});
  std::vector<std::string> diffs;
  bool ok = true;
  for (const auto& r : suites) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checked << " checked";
    if (!r.passed()) std::cout << ", " << r.failures.size() << " failed";
    std::cout << ")\n";
    ok = ok && r.passed();
    for (const auto& f : r.failures) diffs.push_back(r.name + ": " + f);
  }
  for (std::size_t i = 0; i < diffs.size() && i < 10; ++i) std::cout << "  " << diffs[i] << "\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation and essential dimension of finite groups of order at most 63"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  settings.manifest = default_manifest_path();
  app.add_option("--manifest", settings.manifest, "Group manifest (default: EDLAB_MANIFEST or the bundled file)");
  app.add_option("--budget", settings.budget, "Node cap per embedding search")->check(CLI::PositiveNumber);
  app.add_flag("--trace,!--no-trace", settings.trace, "Include rule traces");

  int order = 0, index = 0;
  auto* analyze = app.add_subcommand("analyze", "Invariants, rd witness and ed derivation of one group");
  analyze->add_option("ORDER", order)->required();
  analyze->add_option("INDEX", index)->required();

  std::string range;
  std::string format = "markdown";
  auto* table = app.add_subcommand("table", "Non-abelian groups of the given orders");
  table->add_option("RANGE", range, "LO..HI within 1..63")->required();
  table->add_option("--format", format)->check(CLI::IsMember({"markdown", "csv", "json"}));

  int n = 0;
  auto* alpha = app.add_subcommand("alpha", "Minimal ed/rd over groups of order <= N");
  alpha->add_option("N", n)->required();

  std::string level = "fast";
  auto* selftest = app.add_subcommand("selftest", "Property suites and expected-results regression");
  selftest->add_option("--level", level)->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(settings, order, index);
    if (*table) {
      const auto f = format == "csv" ? TableFormat::Csv : format == "json" ? TableFormat::Json : TableFormat::Markdown;
      return cmd_table(settings, range, f);
    }
    if (*alpha) return cmd_alpha(settings, n);
    if (*selftest) return cmd_selftest(settings, level);
  } catch (const BadRange& e) {
    std::cerr << "error: BadRange: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownId& e) {
    std::cerr << "error: UnknownId: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
