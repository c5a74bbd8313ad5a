#include "curvgate/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>

#include "curvgate/io.hpp"
#include "curvgate/models.hpp"
#include "curvgate/suites.hpp"

namespace curvgate {

namespace {

struct Common {
  std::uint64_t seed = 0;
  int samples = 1000;
  double tol = 1e-9;
  std::string format = "text";
  std::string out_path;
  bool timing = false;
};

Json map_json(const std::map<std::string, double>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

Json matrix_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Report model_report(const ModelInstance& mi, std::optional<double> eps, double tol) {
  Report r;
  r.command = "model " + mi.name;
  r.tol = tol;
  for (const auto& [key, v] : mi.residuals) r.checks.push_back(residual_record("residual/" + key, v, 1e-10));
  r.verdicts = to_json(classify({mi.point}, mi.ambient, eps, tol));
  r.data = {{"closed_forms", map_json(mi.closed_forms)},
            {"point", to_json(mi.point)},
            {"ambient", {{"kind", "space_form"}, {"c", mi.ambient.c}, {"m", mi.ambient.m}}}};
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature pinching and isotropic-curvature checker", "curvgate"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", version());
  Common c;
  app.add_option("--seed", c.seed, "Base seed for every random stream");
  app.add_option("--samples", c.samples, "Trials / frames per check")->check(CLI::PositiveNumber);
  app.add_option("--tol", c.tol, "Tolerance (identities, strictness)")->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", c.out_path, "Write the report to PATH instead of stdout");
  app.add_flag("--timing", c.timing, "Include wall time in the report");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "identities | lemmas | chains | models | all")
      ->required()
      ->check(CLI::IsMember(suite_names()));

  std::string model_name;
  int n = 4, m = 0, p = 1;
  double mu = 0.5;
  std::optional<double> eps = 1.0;
  std::string tensor_out;
  auto* model = app.add_subcommand("model", "Build a sharpness example and classify it");
  model->add_option("name", model_name, "cp-geodesic | clifford")
      ->required()
      ->check(CLI::IsMember({"cp-geodesic", "clifford"}));
  model->add_option("--n", n, "Submanifold dimension");
  model->add_option("--m", m, "Ambient complex dimension (cp-geodesic)");
  model->add_option("--p", p, "Dimension of the second factor (clifford)");
  model->add_option("--mu", mu, "Radius parameter in (0, 1) (clifford)");
  model->add_option("--eps", eps, "eps for the ricci2-diffeo family (default 1)")->check(CLI::Range(0.0, 1.0));
  model->add_option("--tensor-out", tensor_out, "Also write the intrinsic tensor file");

  std::string config_path;
  auto* check = app.add_subcommand("check", "Classify points from a config file");
  check->add_option("config", config_path, "Config json")->required();

  std::string tensor_path;
  bool weighted = false;
  int restarts = 64;
  auto* minimize = app.add_subcommand("minimize", "Minimize isotropic curvature of a tensor file");
  minimize->add_option("tensor", tensor_path, "Tensor json")->required();
  minimize->add_flag("--weighted", weighted, "Minimize over weights in [-1, 1]^2 as well");
  minimize->add_option("--restarts", restarts, "Random restarts")->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  int code = kExitOk;
  try {
    if (*verify) {
      report.command = "verify " + suite;
      report.checks = run_suite(suite, {c.seed, c.samples, c.tol});
      code = report.all_pass() ? kExitOk : kExitFail;
    } else if (*model) {
      const ModelInstance mi = model_name == "cp-geodesic"
                                   ? cp_totally_geodesic(n, m == 0 ? n / 2 : m)
                                   : clifford_product(n, p, mu);
      report = model_report(mi, eps, c.tol);
      if (!tensor_out.empty()) {
        std::ofstream f(tensor_out);
        if (!f) throw SchemaError(tensor_out, "cannot write file");
        f << tensor_to_json(mi.intrinsic).dump(2) << "\n";
      }
      code = report.all_pass() ? kExitOk : kExitFail;
    } else if (*check) {
      const CheckConfig cfg = check_config_from_json(read_json_file(config_path));
      report.command = "check";
      report.tol = c.tol;
      report.verdicts = to_json(classify(cfg.points, cfg.ambient, cfg.eps, c.tol, cfg.metadata));
      Json pts = Json::array();
      for (const auto& pt : cfg.points) pts.push_back(to_json(pt));
      report.data = {{"points", pts}};
    } else if (*minimize) {
      const CurvatureTensor r = tensor_from_json(read_json_file(tensor_path));
      if (r.dim() < 4) throw InputError("minimize: tensor dimension must be >= 4");
      SearchBudget budget;
      budget.restarts = restarts;
      const OptResult res = min_isotropic(r, weighted, budget, c.seed);
      report.command = weighted ? "minimize --weighted" : "minimize";
      report.data = {{"value", res.value},
                     {"frame", matrix_json(res.frame.matrix().transpose())},
                     {"restarts_used", res.restarts_used},
                     {"converged_restarts", res.converged_restarts},
                     {"converged", res.converged},
                     {"n", r.dim()}};
      if (res.weights) report.data["weights"] = {res.weights->lambda, res.weights->mu};
    }
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  report.seed = c.seed;
  report.samples = c.samples;
  if (report.tol == 0.0) report.tol = c.tol;
  if (c.timing) {
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  const std::string text = c.format == "json" ? render_json(report) : render_text(report);
  if (c.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out_path);
    if (!f || !(f << text)) {
      err << "error: cannot write " << c.out_path << "\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace curvgate
