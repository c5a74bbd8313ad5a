// Versioned report document shared by every CLI command.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvgate/lemmas.hpp"
#include "curvgate/pinching.hpp"

namespace curvgate {

using Json = nlohmann::json;

inline constexpr int kReportSchema = 1;

const char* version();

struct CheckRecord {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // lhs - rhs for inequalities, tol - residual for identities
  bool pass = false;
  Json detail;       // optional extras, null when absent

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

/// Residual-style record: pass iff residual <= tol.
CheckRecord residual_record(std::string id, double residual, double tol);
CheckRecord lemma_record(const LemmaReport& rep);

struct Report {
  int schema = kReportSchema;
  std::string tool = "curvgate";
  std::string version = curvgate::version();
  std::string command;
  std::uint64_t seed = 0;
  int samples = 0;
  double tol = 0.0;
  std::vector<CheckRecord> checks;
  Json verdicts = Json::array();
  Json data = Json::object();
  std::optional<double> wall_time;

  bool all_pass() const;
  friend bool operator==(const Report&, const Report&) = default;
};

Json to_json(const CheckRecord& r);
Json to_json(const Report& r);
Json to_json(const TheoremVerdict& v);
Json to_json(const PointData& p);
Json frame_json(const Frame4& f);

/// Inverse of to_json(Report). Throws std::invalid_argument on a document
/// that is not a schema-1 report.
Report report_from_json(const Json& j);

std::string render_json(const Report& r);
std::string render_text(const Report& r);

}  // namespace curvgate
