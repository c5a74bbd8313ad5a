// JSON input documents: curvature tensors, second fundamental forms and
// pinching-check configurations.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "curvgate/curvature.hpp"
#include "curvgate/report.hpp"

namespace curvgate {

/// Malformed or schema-violating document; `path` names the field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Well-formed document carrying mathematically invalid data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);  // SchemaError on parse failure

/// {"n": int, "entries": [[i, j, k, l, value], ...]}, 0-based indices.
/// Entries not listed are filled from the symmetries of listed ones (or
/// zero), then the whole tensor is validated; a violation throws InputError
/// with the per-identity maxima.
CurvatureTensor tensor_from_json(const Json& j, const std::string& where = "$",
                                 double tol = kDefaultSymmetryTol);
Json tensor_to_json(const CurvatureTensor& t);

/// {"n": int, "p": int, "h": [alpha][i][j]}.
SecondFundamentalForm sff_from_json(const Json& j, const std::string& where = "$");
Json sff_to_json(const SecondFundamentalForm& b);

struct CheckConfig {
  AmbientSpec ambient;
  std::optional<double> eps;
  std::vector<PointData> points;
  Metadata metadata;
};

/// {"ambient": {"kind": "space_form", "c": x, "m": k} |
///             {"kind": "hol_pinch", "kmin": a, "kmax": b, "m": k},
///  "eps": optional, "points": [...], "metadata": {...}}.
/// A point is either explicit ({"n", "scalar", "ric2min", "ric4min"?,
/// "normH2", "totally_real"?}) or derived ({"tensor": {...}, "b": {...},
/// "totally_real"?}).
CheckConfig check_config_from_json(const Json& j);

}  // namespace curvgate
