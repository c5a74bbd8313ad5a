#include "curvgate/io.hpp"

#include <fstream>
#include <sstream>

#include "curvgate/curvature.hpp"

namespace curvgate {

namespace {

const Json& field(const Json& obj, const std::string& where, const char* key) {
  if (!obj.is_object()) throw SchemaError(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + "." + key, "missing field");
  return *it;
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where, "expected a number, got " + v.dump());
  return v.get<double>();
}

int integer(const Json& v, const std::string& where, int lo) {
  if (!v.is_number_integer()) throw SchemaError(where, "expected an integer, got " + v.dump());
  const auto x = v.get<long long>();
  if (x < lo || x > 1'000'000) {
    throw SchemaError(where, "expected an integer >= " + std::to_string(lo) + ", got " + v.dump());
  }
  return static_cast<int>(x);
}

bool boolean(const Json& v, const std::string& where) {
  if (!v.is_boolean()) throw SchemaError(where, "expected true or false, got " + v.dump());
  return v.get<bool>();
}

std::string symmetry_message(const SymmetryReport& s) {
  std::ostringstream os;
  os << "tensor violates curvature symmetries (tol " << s.tol << "): "
     << "antisym_first=" << s.antisym_first << " antisym_second=" << s.antisym_second
     << " pair_symmetry=" << s.pair_symmetry << " bianchi=" << s.bianchi;
  return os.str();
}

PointData explicit_point(const Json& p, const std::string& where) {
  PointData out;
  out.n = integer(field(p, where, "n"), where + ".n", 2);
  out.scalar = number(field(p, where, "scalar"), where + ".scalar");
  out.ric2min = number(field(p, where, "ric2min"), where + ".ric2min");
  if (p.contains("ric4min") && !p["ric4min"].is_null()) {
    out.ric4min = number(p["ric4min"], where + ".ric4min");
  }
  out.normH2 = number(field(p, where, "normH2"), where + ".normH2");
  if (out.normH2 < 0) throw SchemaError(where + ".normH2", "must be >= 0");
  if (p.contains("totally_real")) out.totally_real = boolean(p["totally_real"], where + ".totally_real");
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path, std::string("malformed json: ") + e.what());
  }
}

CurvatureTensor tensor_from_json(const Json& j, const std::string& where, double tol) {
  const int n = integer(field(j, where, "n"), where + ".n", 1);
  if (n > 64) throw SchemaError(where + ".n", "dimension above 64 is not supported");
  const Json& entries = field(j, where, "entries");
  if (!entries.is_array()) throw SchemaError(where + ".entries", "expected an array");

  CurvatureTensor t(n);
  const std::size_t total = static_cast<std::size_t>(n) * n * n * n;
  std::vector<char> given(total, 0), filled(total, 0);
  const auto flat = [n](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  };
  struct Entry {
    int i, j, k, l;
    double v;
  };
  std::vector<Entry> list;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string at = where + ".entries[" + std::to_string(e) + "]";
    const Json& row = entries[e];
    if (!row.is_array() || row.size() != 5) throw SchemaError(at, "expected [i, j, k, l, value]");
    Entry en{};
    int* idx[4] = {&en.i, &en.j, &en.k, &en.l};
    for (int s = 0; s < 4; ++s) {
      *idx[s] = integer(row[s], at + "[" + std::to_string(s) + "]", 0);
      if (*idx[s] >= n) {
        throw SchemaError(at + "[" + std::to_string(s) + "]",
                          "index " + std::to_string(*idx[s]) + " out of range for n=" + std::to_string(n));
      }
    }
    en.v = number(row[4], at + "[4]");
    const std::size_t f = flat(en.i, en.j, en.k, en.l);
    if (given[f]) throw SchemaError(at, "duplicate entry");
    given[f] = 1;
    t(en.i, en.j, en.k, en.l) = en.v;
    list.push_back(en);
  }
  for (const auto& e : list) {
    const struct {
      int a, b, c, d;
      double s;
    } images[] = {{e.j, e.i, e.k, e.l, -1}, {e.i, e.j, e.l, e.k, -1}, {e.j, e.i, e.l, e.k, 1},
                  {e.k, e.l, e.i, e.j, 1},  {e.l, e.k, e.i, e.j, -1}, {e.k, e.l, e.j, e.i, -1},
                  {e.l, e.k, e.j, e.i, 1}};
    for (const auto& im : images) {
      const std::size_t f = flat(im.a, im.b, im.c, im.d);
      if (given[f] || filled[f]) continue;
      filled[f] = 1;
      t(im.a, im.b, im.c, im.d) = im.s * e.v;
    }
  }
  const SymmetryReport rep = validate_symmetries(t, tol);
  if (!rep.pass) throw InputError(symmetry_message(rep));
  return t;
}

Json tensor_to_json(const CurvatureTensor& t) {
  const int n = t.dim();
  Json entries = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (t(i, j, k, l) != 0.0) entries.push_back({i, j, k, l, t(i, j, k, l)});
  return {{"n", n}, {"entries", entries}};
}

SecondFundamentalForm sff_from_json(const Json& j, const std::string& where) {
  const int n = integer(field(j, where, "n"), where + ".n", 1);
  const int p = integer(field(j, where, "p"), where + ".p", 0);
  const Json& h = field(j, where, "h");
  if (!h.is_array() || h.size() != static_cast<std::size_t>(p)) {
    throw SchemaError(where + ".h", "expected " + std::to_string(p) + " matrices");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(p) * n * n);
  for (int a = 0; a < p; ++a) {
    const std::string at = where + ".h[" + std::to_string(a) + "]";
    if (!h[a].is_array() || h[a].size() != static_cast<std::size_t>(n)) {
      throw SchemaError(at, "expected " + std::to_string(n) + " rows");
    }
    for (int i = 0; i < n; ++i) {
      const std::string ai = at + "[" + std::to_string(i) + "]";
      if (!h[a][i].is_array() || h[a][i].size() != static_cast<std::size_t>(n)) {
        throw SchemaError(ai, "expected " + std::to_string(n) + " columns");
      }
      for (int k = 0; k < n; ++k) values.push_back(number(h[a][i][k], ai + "[" + std::to_string(k) + "]"));
    }
  }
  try {
    return SecondFundamentalForm::from_components(n, p, values);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Json sff_to_json(const SecondFundamentalForm& b) {
  Json h = Json::array();
  for (int a = 0; a < b.normal_dim(); ++a) {
    Json rows = Json::array();
    for (int i = 0; i < b.tangent_dim(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < b.tangent_dim(); ++k) row.push_back(b(a, i, k));
      rows.push_back(std::move(row));
    }
    h.push_back(std::move(rows));
  }
  return {{"n", b.tangent_dim()}, {"p", b.normal_dim()}, {"h", h}};
}

CheckConfig check_config_from_json(const Json& j) {
  CheckConfig cfg;
  const Json& amb = field(j, "$", "ambient");
  const Json& kind = field(amb, "$.ambient", "kind");
  int m = 0;
  if (amb.contains("m")) m = integer(amb["m"], "$.ambient.m", 1);
  if (kind == "space_form") {
    cfg.ambient = AmbientSpec::space_form(number(field(amb, "$.ambient", "c"), "$.ambient.c"), m);
  } else if (kind == "hol_pinch") {
    const double lo = number(field(amb, "$.ambient", "kmin"), "$.ambient.kmin");
    const double hi = number(field(amb, "$.ambient", "kmax"), "$.ambient.kmax");
    if (lo > hi) throw SchemaError("$.ambient", "kmin exceeds kmax");
    cfg.ambient = AmbientSpec::hol_pinch(HolPinch(lo, hi), m);
  } else {
    throw SchemaError("$.ambient.kind", "expected \"space_form\" or \"hol_pinch\", got " + kind.dump());
  }
  if (j.contains("eps") && !j["eps"].is_null()) {
    const double e = number(j["eps"], "$.eps");
    if (!(e > 0 && e <= 1)) throw SchemaError("$.eps", "must lie in (0, 1]");
    cfg.eps = e;
  }
  const Json& pts = field(j, "$", "points");
  if (!pts.is_array() || pts.empty()) throw SchemaError("$.points", "expected a nonempty array");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string at = "$.points[" + std::to_string(i) + "]";
    const Json& p = pts[i];
    if (!p.is_object()) throw SchemaError(at, "expected an object");
    if (p.contains("tensor")) {
      const CurvatureTensor r = tensor_from_json(p["tensor"], at + ".tensor");
      const SecondFundamentalForm b = sff_from_json(field(p, at, "b"), at + ".b");
      if (b.tangent_dim() != r.dim()) throw SchemaError(at + ".b.n", "does not match tensor n");
      const bool tr = p.contains("totally_real") && boolean(p["totally_real"], at + ".totally_real");
      cfg.points.push_back(point_from(r, b, tr));
    } else {
      cfg.points.push_back(explicit_point(p, at));
    }
    if (cfg.points.back().n != cfg.points.front().n) {
      throw SchemaError(at + ".n", "all points must share one dimension");
    }
  }
  if (j.contains("metadata")) {
    const Json& md = j["metadata"];
    if (!md.is_object()) throw SchemaError("$.metadata", "expected an object");
    if (md.contains("simply_connected")) {
      cfg.metadata.simply_connected = boolean(md["simply_connected"], "$.metadata.simply_connected");
    }
    if (md.contains("closed")) cfg.metadata.closed = boolean(md["closed"], "$.metadata.closed");
  }
  return cfg;
}

}  // namespace curvgate
