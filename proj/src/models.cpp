#include "curvgate/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvgate/curvature.hpp"

namespace curvgate {

namespace {

void fill_point_residuals(ModelInstance& mi) {
  const PointData fresh = point_from(mi.intrinsic, mi.embedding.b, mi.point.totally_real);
  mi.residuals["scalar"] = std::abs(fresh.scalar - mi.point.scalar);
  mi.residuals["ric2min"] = std::abs(fresh.ric2min - mi.point.ric2min);
  if (fresh.ric4min && mi.point.ric4min) {
    mi.residuals["ric4min"] = std::abs(*fresh.ric4min - *mi.point.ric4min);
  }
  mi.residuals["normH2"] = std::abs(fresh.normH2 - mi.point.normH2);
  const CurvatureTensor gauss = intrinsic_tensor(mi.ambient_tensor, mi.embedding);
  mi.residuals["gauss_equation"] = (gauss - mi.intrinsic).max_abs();
  mi.residuals["symmetry"] = validate_symmetries(mi.intrinsic).max_violation();
}

}  // namespace

double ModelInstance::max_residual() const {
  double worst = 0.0;
  for (const auto& [key, v] : residuals) worst = std::max(worst, v);
  return worst;
}

ModelInstance cp_totally_geodesic(int n, int m) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("cp-geodesic: n must be even and >= 2, got " +
                                std::to_string(n));
  }
  if (2 * m < n) {
    throw std::invalid_argument("cp-geodesic: need m >= n/2, got m=" + std::to_string(m));
  }
  ModelInstance mi;
  mi.name = "cp-geodesic";
  mi.ambient = AmbientSpec::space_form(4.0, m);
  mi.ambient_tensor = space_form(m, 4.0);
  mi.embedding.tangent = Mat::Identity(2 * m, n);
  mi.embedding.b = SecondFundamentalForm(n, 2 * m - n);
  mi.normal_basis = Mat::Zero(2 * m, 2 * m - n);
  for (int a = 0; a < 2 * m - n; ++a) mi.normal_basis(n + a, a) = 1.0;
  // The tangent block is J-invariant, so the intrinsic tensor is the
  // smaller space form.
  mi.intrinsic = space_form(n / 2, 4.0).k;

  const double nn = n;
  mi.point.n = n;
  mi.point.scalar = nn * (nn + 2);
  mi.point.ric2min = 2 * (nn + 2);
  if (n >= 4) mi.point.ric4min = 4 * (nn + 2);
  mi.point.normH2 = 0.0;
  mi.point.totally_real = false;
  mi.closed_forms = {{"scalar", mi.point.scalar},
                     {"ricci_eigenvalue", nn + 2},
                     {"normH2", 0.0},
                     {"normB2", 0.0}};

  fill_point_residuals(mi);
  const RicciData rd = ricci(mi.intrinsic);
  mi.residuals["ricci_eigenvalue"] =
      (rd.eigenvalues.array() - (nn + 2)).abs().maxCoeff();
  return mi;
}

ModelInstance clifford_product(int n, int p, double mu) {
  if (n < 2) throw std::invalid_argument("clifford: n must be >= 2");
  if (p < 1 || p > n - 1) {
    throw std::invalid_argument("clifford: p must lie in [1, n-1], got " + std::to_string(p));
  }
  if (!(mu > 0.0 && mu < 1.0)) {
    throw std::invalid_argument("clifford: mu must lie in (0, 1), got " + std::to_string(mu));
  }
  const int m = n + 1;
  const double a = mu / std::sqrt(1 + mu * mu);
  const double b = 1 / std::sqrt(1 + mu * mu);
  const double k1 = 1 / mu;  // first factor, multiplicity n - p
  const double k2 = -mu;     // second factor, multiplicity p

  ModelInstance mi;
  mi.name = "clifford";
  mi.ambient = AmbientSpec::space_form(4.0, m);
  mi.ambient_tensor = space_form(m, 4.0);
  mi.embedding.tangent = Mat::Zero(2 * m, n);
  for (int i = 0; i < n; ++i) mi.embedding.tangent(2 * i, i) = 1.0;
  // Normal 0 is the sphere normal e_{2n}; the rest are the odd directions.
  mi.normal_basis = Mat::Zero(2 * m, n + 2);
  mi.normal_basis(2 * n, 0) = 1.0;
  for (int i = 0; i < m; ++i) mi.normal_basis(2 * i + 1, i + 1) = 1.0;
  mi.embedding.b = SecondFundamentalForm(n, n + 2);
  for (int i = 0; i < n; ++i) mi.embedding.b.set(0, i, i, i < n - p ? k1 : k2);

  mi.intrinsic = CurvatureTensor(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool fi = i < n - p, fj = j < n - p;
      const double kappa = fi && fj ? 1 / (a * a) : (!fi && !fj ? 1 / (b * b) : 0.0);
      mi.intrinsic(i, j, i, j) = kappa;
      mi.intrinsic(i, j, j, i) = -kappa;
    }

  const double q = n - p;
  const double scalar = q * (q - 1) / (a * a) + p * (p - 1.0) / (b * b);
  const double h = q / mu - p * mu;
  const double b2 = q / (mu * mu) + p * mu * mu;
  mi.point.n = n;
  mi.point.scalar = scalar;
  mi.point.normH2 = h * h;
  mi.point.totally_real = true;
  // Ricci eigenvalues: (q-1)/a^2 on the first factor, (p-1)/b^2 on the second.
  std::vector<double> ric(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ric[i] = i < n - p ? (q - 1) / (a * a) : (p - 1.0) / (b * b);
  std::sort(ric.begin(), ric.end());
  mi.point.ric2min = ric[0] + (n >= 2 ? ric[1] : 0.0);
  if (n >= 4) mi.point.ric4min = ric[0] + ric[1] + ric[2] + ric[3];

  const double nn = n;
  mi.closed_forms = {{"radius_first", a},
                     {"radius_second", b},
                     {"principal_first", k1},
                     {"principal_second", k2},
                     {"scalar", scalar},
                     {"normH2", h * h},
                     {"normB2", b2}};
  // Sharpness expressions use the recomputed invariants, not the closed forms.
  const double r_m = ricci(mi.intrinsic).scalar;
  const double h2 = mean_data(mi.embedding.b).norm_h2;
  if (p == 1) {
    mi.closed_forms["sharpness_scalar_diffeo"] =
        r_m - (nn - 2) / (nn - 1) * h2 - (nn - 2) * (nn + 1);
    mi.closed_forms["sharpness_scalar_diffeo_expected"] = -(nn - 2) / (nn - 1) * mu * mu;
  }
  if (p == 2 && n >= 3) {
    mi.closed_forms["sharpness_scalar_homeo"] =
        r_m - (nn - 3) / (nn - 2) * h2 - (nn * nn - nn - 4);
    mi.closed_forms["sharpness_scalar_homeo_expected"] =
        -2 * (nn - 4) / (nn - 2) * mu * mu;
  }

  fill_point_residuals(mi);
  // Scalar Gauss identity inside the unit sphere.
  mi.residuals["scalar_gauss"] =
      std::abs(r_m - (nn * (nn - 1) + h2 - b2));
  mi.residuals["normB2"] = std::abs(mean_data(mi.embedding.b).norm_b2 - b2);
  mi.residuals["totally_real"] = totally_real_defect(mi.ambient_tensor, mi.embedding.tangent);
  for (const char* key : {"sharpness_scalar_diffeo", "sharpness_scalar_homeo"}) {
    const auto it = mi.closed_forms.find(key);
    if (it == mi.closed_forms.end()) continue;
    mi.residuals[key] = std::abs(it->second - mi.closed_forms[std::string(key) + "_expected"]);
  }
  return mi;
}

}  // namespace curvgate
