#include "curvgate/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace curvgate {

namespace {

// json has no infinities; keep them as strings so round-trips stay exact.
Json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double num_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw std::invalid_argument("report: expected a number, got " + j.dump());
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

const char* version() {
#ifdef CURVGATE_VERSION
  return CURVGATE_VERSION;
#else
  return "0.0.0";
#endif
}

CheckRecord residual_record(std::string id, double residual, double tol) {
  CheckRecord r;
  r.id = std::move(id);
  r.lhs = residual;
  r.rhs = tol;
  r.gap = tol - residual;
  r.pass = residual <= tol;
  return r;
}

CheckRecord lemma_record(const LemmaReport& rep) {
  CheckRecord r;
  r.id = rep.lemma_id;
  r.lhs = rep.lhs;
  r.rhs = rep.rhs;
  r.gap = rep.gap;
  r.pass = rep.pass;
  r.detail = {{"samples", rep.samples},
              {"constant", num(rep.constant)},
              {"hypothesis_ok", rep.hypothesis_ok},
              {"witness", frame_json(rep.witness)}};
  if (rep.hypothesis_min) r.detail["hypothesis_min"] = num(*rep.hypothesis_min);
  if (rep.weights) r.detail["weights"] = {num(rep.weights->lambda), num(rep.weights->mu)};
  return r;
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json frame_json(const Frame4& f) {
  Json rows = Json::array();
  for (const auto& v : f.e) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(num(v[i]));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const CheckRecord& r) {
  Json j = {{"id", r.id}, {"lhs", num(r.lhs)}, {"rhs", num(r.rhs)},
            {"gap", num(r.gap)}, {"pass", r.pass}};
  if (!r.detail.is_null()) j["detail"] = r.detail;
  return j;
}

Json to_json(const PointData& p) {
  Json j = {{"n", p.n}, {"scalar", num(p.scalar)}, {"ric2min", num(p.ric2min)},
            {"normH2", num(p.normH2)}, {"totally_real", p.totally_real}};
  if (p.ric4min) j["ric4min"] = num(*p.ric4min);
  return j;
}

Json to_json(const TheoremVerdict& v) {
  Json entries = Json::array();
  for (const auto& e : v.entries) {
    Json margins = Json::array();
    for (double m : e.margins) margins.push_back(num(m));
    Json item = {{"theorem", e.id.name()},
                 {"margins", margins},
                 {"margin_min", num(e.margin_min)},
                 {"margin_max", num(e.margin_max)},
                 {"satisfied", to_string(e.satisfied)},
                 {"strict_required", e.strict_required},
                 {"hypothesis_met", e.hypothesis_met}};
    if (!e.conclusion_label.empty()) item["conclusion"] = e.conclusion_label;
    entries.push_back(std::move(item));
  }
  Json meta = Json::object();
  if (v.metadata.simply_connected) meta["simply_connected"] = *v.metadata.simply_connected;
  if (v.metadata.closed) meta["closed"] = *v.metadata.closed;
  return {{"points", v.points},
          {"scope", "hypotheses evaluated at the listed points only"},
          {"metadata", meta},
          {"entries", entries}};
}

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  Json j = {{"schema", r.schema}, {"tool", r.tool},   {"version", r.version},
            {"command", r.command}, {"seed", r.seed}, {"samples", r.samples},
            {"tol", num(r.tol)},   {"checks", checks}, {"verdicts", r.verdicts},
            {"data", r.data},      {"all_pass", r.all_pass()}};
  if (r.wall_time) j["wall_time_s"] = *r.wall_time;
  return j;
}

Report report_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != kReportSchema) {
    throw std::invalid_argument("report: not a schema-" + std::to_string(kReportSchema) +
                                " report");
  }
  try {
    Report r;
    r.tool = j.at("tool").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.samples = j.at("samples").get<int>();
    r.tol = num_from(j.at("tol"));
    for (const auto& c : j.at("checks")) {
      CheckRecord rec;
      rec.id = c.at("id").get<std::string>();
      rec.lhs = num_from(c.at("lhs"));
      rec.rhs = num_from(c.at("rhs"));
      rec.gap = num_from(c.at("gap"));
      rec.pass = c.at("pass").get<bool>();
      if (c.contains("detail")) rec.detail = c.at("detail");
      r.checks.push_back(std::move(rec));
    }
    r.verdicts = j.at("verdicts");
    r.data = j.at("data");
    if (j.contains("wall_time_s")) r.wall_time = j.at("wall_time_s").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << r.tool << " " << r.version << "  " << r.command << "  seed=" << r.seed
     << " samples=" << r.samples << " tol=" << fmt("%g", r.tol) << "\n";
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    if (!c.pass) ++failed;
    os << (c.pass ? "PASS " : "FAIL ") << c.id << "  lhs=" << fmt("%.10g", c.lhs)
       << " rhs=" << fmt("%.10g", c.rhs) << " gap=" << fmt("%.3e", c.gap) << "\n";
  }
  if (r.verdicts.is_object() && r.verdicts.contains("entries")) {
    os << "verdicts over " << r.verdicts["points"].get<int>() << " point(s):\n";
    for (const auto& e : r.verdicts["entries"]) {
      os << "  " << e["theorem"].get<std::string>() << "  "
         << e["satisfied"].get<std::string>() << "  margin_min="
         << fmt("%.10g", num_from(e["margin_min"]))
         << (e["strict_required"].get<bool>() ? "  (strict required)" : "");
      if (e.contains("conclusion")) os << "  => " << e["conclusion"].get<std::string>();
      os << "\n";
    }
  }
  if (!r.data.empty()) {
    for (const auto& [key, value] : r.data.items()) os << key << ": " << value.dump() << "\n";
  }
  if (!r.checks.empty()) {
    os << (r.checks.size() - failed) << "/" << r.checks.size() << " checks passed\n";
  }
  if (r.wall_time) os << "wall time: " << fmt("%.3f", *r.wall_time) << " s\n";
  return os.str();
}

}  // namespace curvgate
