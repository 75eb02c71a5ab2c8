#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edlab/engine.hpp"
#include "edlab/manifest.hpp"

namespace edlab {

struct PremiseRecord {
  GapId id;
  std::string side;  // "lower" or "upper"
  int value = 0;
  friend bool operator==(const PremiseRecord&, const PremiseRecord&) = default;
};

struct TraceRecord {
  std::string rule;    // "R4"
  std::string anchor;
  std::optional<int> lo;
  std::optional<int> hi;
  std::vector<PremiseRecord> premises;
  std::string detail;
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// One table row.
struct OutputRecord {
  GapId id;
  std::string structure;
  int rd = 0;
  int lo = 0;
  int hi = 0;
  /// Rules that set the final bounds, e.g. "R4+R2".
  std::string rule;
  std::vector<TraceRecord> traces;  // empty without --trace
  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

OutputRecord make_record(const Database& db, const EdFact& fact, bool with_traces);
/// Codes of the last steps that raised lo and lowered hi, in firing order.
std::string explanation(const EdFact& fact);

nlohmann::json to_json(const OutputRecord& r);
OutputRecord record_from_json(const nlohmann::json& j);

enum class TableFormat { Markdown, Csv, Json };

std::string render_markdown(const std::vector<OutputRecord>& rows);
std::string render_csv(const std::vector<OutputRecord>& rows);
std::string render_json(const std::vector<OutputRecord>& rows);
std::string render(const std::vector<OutputRecord>& rows, TableFormat format);

/// "3" for a point, "3-5" for an interval.
std::string ed_text(int lo, int hi);

}  // namespace edlab
