#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "curvgate/cli.hpp"
#include "curvgate/curvature.hpp"
#include "curvgate/io.hpp"
#include "curvgate/models.hpp"
#include "curvgate/suites.hpp"

namespace py = pybind11;
using namespace curvgate;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

CurvatureTensor tensor_in(const Array& a) {
  if (a.ndim() != 4) throw std::invalid_argument("expected a 4-dimensional array");
  const auto n = a.shape(0);
  for (int d = 1; d < 4; ++d)
    if (a.shape(d) != n) throw std::invalid_argument("expected an n x n x n x n array");
  CurvatureTensor t(static_cast<int>(n));
  std::copy(a.data(), a.data() + a.size(), t.data().begin());
  return t;
}

Array tensor_out(const CurvatureTensor& t) {
  const auto n = static_cast<py::ssize_t>(t.dim());
  Array a({n, n, n, n});
  std::copy(t.data().begin(), t.data().end(), a.mutable_data());
  return a;
}

SecondFundamentalForm sff_in(const Array& h) {
  if (h.ndim() != 3 || h.shape(1) != h.shape(2)) {
    throw std::invalid_argument("expected a (p, n, n) array");
  }
  return SecondFundamentalForm::from_components(
      static_cast<int>(h.shape(1)), static_cast<int>(h.shape(0)),
      std::span<const double>(h.data(), static_cast<std::size_t>(h.size())));
}

py::dict model_dict(const ModelInstance& mi) {
  py::dict d;
  d["name"] = mi.name;
  d["intrinsic"] = tensor_out(mi.intrinsic);
  d["tangent"] = mi.embedding.tangent;
  d["closed_forms"] = mi.closed_forms;
  d["residuals"] = mi.residuals;
  py::dict pt;
  pt["n"] = mi.point.n;
  pt["scalar"] = mi.point.scalar;
  pt["ric2min"] = mi.point.ric2min;
  pt["ric4min"] = mi.point.ric4min ? py::object(py::float_(*mi.point.ric4min)) : py::object(py::none());
  pt["normH2"] = mi.point.normH2;
  pt["totally_real"] = mi.point.totally_real;
  d["point"] = pt;
  return d;
}

}  // namespace

PYBIND11_MODULE(_curvgate, m) {
  m.doc() = "Algebraic curvature tensors, isotropic curvature and pinching checks";
  m.attr("__version__") = version();

  m.def("constant_curvature", [](int n, double kappa) { return tensor_out(constant_curvature(n, kappa)); });
  m.def("space_form", [](int cm, double c) {
    const KahlerCurvature kc = space_form(cm, c);
    return py::make_tuple(tensor_out(kc.k), kc.j.j);
  }, py::arg("m"), py::arg("c"));
  m.def("gauss_tensor", [](const Array& h) { return tensor_out(gauss_tensor(sff_in(h))); });
  m.def("symmetry_violation", [](const Array& t) { return validate_symmetries(tensor_in(t)).max_violation(); });
  m.def("ricci", [](const Array& t) {
    const RicciData rd = ricci(tensor_in(t));
    return py::make_tuple(rd.ric, rd.eigenvalues, rd.scalar);
  });
  m.def("weak_ricci_min", [](const Array& t, int k) { return weak_ricci_min(tensor_in(t), k); });
  m.def("mean_data", [](const Array& h) {
    const MeanData md = mean_data(sff_in(h));
    return py::make_tuple(md.mean, md.norm_h2, md.norm_b2);
  });

  m.def("isotropic", [](const Array& t, const Mat& frame) {
    return isotropic_expr(tensor_in(t), Frame4::from_matrix(frame));
  });
  m.def("weighted_isotropic", [](const Array& t, const Mat& frame, double lam, double mu) {
    return weighted_isotropic_expr(tensor_in(t), Frame4::from_matrix(frame), {lam, mu});
  });
  m.def("min_isotropic", [](const Array& t, bool weighted, int restarts, std::uint64_t seed) {
    SearchBudget budget;
    budget.restarts = restarts;
    const OptResult r = min_isotropic(tensor_in(t), weighted, budget, seed);
    py::dict d;
    d["value"] = r.value;
    d["frame"] = r.frame.matrix();
    d["converged"] = r.converged;
    d["restarts_used"] = r.restarts_used;
    if (r.weights) d["weights"] = py::make_tuple(r.weights->lambda, r.weights->mu);
    return d;
  }, py::arg("tensor"), py::arg("weighted") = false, py::arg("restarts") = 64, py::arg("seed") = 0);
  m.def("holomorphic_sectional", [](const Array& t, const Mat& j, const Vec& x) {
    KahlerCurvature kc{tensor_in(t), ComplexStructure{static_cast<int>(j.rows() / 2), j}};
    return holomorphic_sectional(kc, x);
  });

  m.def("delta_eps", &delta_eps, py::arg("eps"), py::arg("n"));
  m.def("threshold", [](const std::string& theorem, int n, double norm_h2, std::optional<double> kmin,
                        std::optional<double> kmax, std::optional<double> c, std::optional<double> eps) {
    AmbientSpec spec;
    if (c) {
      spec = AmbientSpec::space_form(*c);
    } else if (kmin && kmax) {
      spec = AmbientSpec::hol_pinch(HolPinch(*kmin, *kmax));
    } else {
      throw std::invalid_argument("threshold: pass c, or both kmin and kmax");
    }
    return threshold(TheoremId::parse(theorem), spec, n, norm_h2, eps);
  }, py::arg("theorem"), py::arg("n"), py::arg("norm_h2") = 0.0, py::arg("kmin") = py::none(),
     py::arg("kmax") = py::none(), py::arg("c") = py::none(), py::arg("eps") = py::none());
  m.def("check_json", [](const std::string& config, double strict_tol) {
    const CheckConfig cfg = check_config_from_json(Json::parse(config));
    return to_json(classify(cfg.points, cfg.ambient, cfg.eps, strict_tol, cfg.metadata)).dump();
  }, py::arg("config"), py::arg("strict_tol") = kStrictTol);

  m.def("cp_totally_geodesic", [](int n, int cm) { return model_dict(cp_totally_geodesic(n, cm)); });
  m.def("clifford_product", [](int n, int p, double mu) { return model_dict(clifford_product(n, p, mu)); });

  m.def("verify_json", [](const std::string& suite, std::uint64_t seed, int samples, double tol) {
    Report r;
    r.command = "verify " + suite;
    r.seed = seed;
    r.samples = samples;
    r.tol = tol;
    {
      py::gil_scoped_release release;
      r.checks = run_suite(suite, {seed, samples, tol});
    }
    return to_json(r).dump();
  }, py::arg("suite"), py::arg("seed") = 0, py::arg("samples") = 100, py::arg("tol") = 1e-9);
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
