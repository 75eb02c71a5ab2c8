#include "edlab/report.hpp"

#include <sstream>

namespace edlab {

namespace {

nlohmann::json id_json(GapId id) { return nlohmann::json::array({id.order, id.index}); }
GapId id_from(const nlohmann::json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

nlohmann::json optional_json(const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }
std::optional<int> optional_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string ed_text(int lo, int hi) {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
}

std::string explanation(const EdFact& fact) {
  std::optional<std::size_t> lo_step, hi_step;
  for (std::size_t i = 0; i < fact.traces.size(); ++i) {
    const auto& s = fact.traces[i];
    if (s.lo && *s.lo == fact.lo) lo_step = lo_step.value_or(i);
    if (s.hi && *s.hi == fact.hi) hi_step = hi_step.value_or(i);
  }
  // The initial rd bound yields to any later rule reaching the same value.
  if (hi_step && fact.traces[*hi_step].rule == RuleId::R1)
    for (std::size_t i = *hi_step + 1; i < fact.traces.size(); ++i)
      if (fact.traces[i].hi && *fact.traces[i].hi == fact.hi) {
        hi_step = i;
        break;
      }
  std::string lo_code = lo_step ? std::string(rule_info(fact.traces[*lo_step].rule).code) : "";
  std::string hi_code = hi_step ? std::string(rule_info(fact.traces[*hi_step].rule).code) : "";
  if (lo_code.empty() || lo_code == hi_code) return hi_code;
  if (hi_code.empty()) return lo_code;
  return *lo_step < *hi_step ? lo_code + "+" + hi_code : hi_code + "+" + lo_code;
}

OutputRecord make_record(const Database& db, const EdFact& fact, bool with_traces) {
  OutputRecord r{fact.id, db.at(fact.id).entry.structure, fact.rd, fact.lo, fact.hi, explanation(fact), {}};
  if (!with_traces) return r;
  for (const auto& s : fact.traces) {
    TraceRecord t{std::string(rule_info(s.rule).code), std::string(rule_info(s.rule).anchor), s.lo, s.hi, {}, s.detail};
    for (const auto& p : s.premises)
      t.premises.push_back({p.id, p.side == BoundSide::Lower ? "lower" : "upper", p.value});
    r.traces.push_back(std::move(t));
  }
  return r;
}

nlohmann::json to_json(const OutputRecord& r) {
  nlohmann::json traces = nlohmann::json::array();
  for (const auto& t : r.traces) {
    nlohmann::json premises = nlohmann::json::array();
    for (const auto& p : t.premises) premises.push_back({{"gapId", id_json(p.id)}, {"side", p.side}, {"value", p.value}});
    traces.push_back({{"rule", t.rule},
                      {"anchor", t.anchor},
                      {"edLo", optional_json(t.lo)},
                      {"edHi", optional_json(t.hi)},
                      {"premises", premises},
                      {"detail", t.detail}});
  }
  return {{"gapId", id_json(r.id)}, {"structure", r.structure}, {"rd", r.rd}, {"edLo", r.lo},
          {"edHi", r.hi},          {"rule", r.rule},           {"traces", traces}};
}

OutputRecord record_from_json(const nlohmann::json& j) {
  OutputRecord r{id_from(j.at("gapId")), j.at("structure").get<std::string>(), j.at("rd").get<int>(),
                 j.at("edLo").get<int>(), j.at("edHi").get<int>(), j.at("rule").get<std::string>(), {}};
  for (const auto& t : j.at("traces")) {
    TraceRecord tr{t.at("rule").get<std::string>(), t.at("anchor").get<std::string>(), optional_from(t.at("edLo")),
                   optional_from(t.at("edHi")), {}, t.at("detail").get<std::string>()};
    for (const auto& p : t.at("premises"))
      tr.premises.push_back({id_from(p.at("gapId")), p.at("side").get<std::string>(), p.at("value").get<int>()});
    r.traces.push_back(std::move(tr));
  }
  return r;
}

std::string render_markdown(const std::vector<OutputRecord>& rows) {
  std::ostringstream os;
  os << "| GAP Id | Structure | rd | ed | Rule |\n";
  os << "|---|---|---|---|---|\n";
  for (const auto& r : rows)
    os << "| " << r.id.to_string() << " | " << r.structure << " | " << r.rd << " | " << ed_text(r.lo, r.hi) << " | "
       << r.rule << " |\n";
  return os.str();
}

std::string render_csv(const std::vector<OutputRecord>& rows) {
  std::ostringstream os;
  os << "order,index,structure,rd,ed_lo,ed_hi,rule\n";
  for (const auto& r : rows)
    os << r.id.order << ',' << r.id.index << ',' << csv_field(r.structure) << ',' << r.rd << ',' << r.lo << ','
       << r.hi << ',' << csv_field(r.rule) << '\n';
  return os.str();
}

std::string render_json(const std::vector<OutputRecord>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out.dump(2) + "\n";
}

std::string render(const std::vector<OutputRecord>& rows, TableFormat format) {
  switch (format) {
    case TableFormat::Markdown: return render_markdown(rows);
    case TableFormat::Csv: return render_csv(rows);
    case TableFormat::Json: return render_json(rows);
  }
  return {};
}

}  // namespace edlab
