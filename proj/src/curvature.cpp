#include "curvgate/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvgate {

double SymmetryReport::max_violation() const {
  return std::max({antisym_first, antisym_second, pair_symmetry, bianchi});
}

SymmetryReport validate_symmetries(const CurvatureTensor& t, double tol) {
  SymmetryReport rep;
  rep.tol = tol;
  const int n = t.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = t(i, j, k, l);
          rep.antisym_first = std::max(rep.antisym_first, std::abs(v + t(j, i, k, l)));
          rep.antisym_second = std::max(rep.antisym_second, std::abs(v + t(i, j, l, k)));
          rep.pair_symmetry = std::max(rep.pair_symmetry, std::abs(v - t(k, l, i, j)));
          rep.bianchi = std::max(rep.bianchi, std::abs(v + t(j, k, i, l) + t(k, i, j, l)));
        }
  rep.pass = rep.max_violation() <= tol;
  return rep;
}

CurvatureTensor constant_curvature(int n, double kappa) {
  CurvatureTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      r(i, j, i, j) = kappa;
      r(i, j, j, i) = -kappa;
    }
  return r;
}

CurvatureTensor gauss_tensor(const SecondFundamentalForm& b) {
  const int n = b.tangent_dim();
  CurvatureTensor r(n);
  for (int a = 0; a < b.normal_dim(); ++a) {
    const Mat h = b.component(a);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            r(i, j, k, l) += h(i, k) * h(j, l) - h(i, l) * h(j, k);
  }
  return r;
}

CurvatureTensor difference_tensor(const CurvatureTensor& r,
                                  const CurvatureTensor& k) {
  if (r.dim() != k.dim()) {
    throw std::invalid_argument("difference_tensor: dimensions " +
                                std::to_string(r.dim()) + " and " +
                                std::to_string(k.dim()) + " differ");
  }
  return r - k;
}

MeanData mean_data(const SecondFundamentalForm& b) {
  MeanData out;
  out.mean = Vec::Zero(b.normal_dim());
  for (int a = 0; a < b.normal_dim(); ++a) {
    for (int i = 0; i < b.tangent_dim(); ++i) {
      out.mean[a] += b(a, i, i);
      for (int j = 0; j < b.tangent_dim(); ++j) out.norm_b2 += b(a, i, j) * b(a, i, j);
    }
  }
  out.norm_h2 = out.mean.squaredNorm();
  return out;
}

SecondFundamentalForm TracelessSplit::reassemble() const {
  SecondFundamentalForm out = traceless;
  for (int a = 0; a < out.normal_dim(); ++a) {
    Mat h = out.component(a);
    h.diagonal().array() += trace_part[a];
    out.set_component(a, h);
  }
  return out;
}

TracelessSplit traceless_split(const SecondFundamentalForm& b) {
  const int n = b.tangent_dim();
  TracelessSplit out{SecondFundamentalForm(n, b.normal_dim()),
                     Vec::Zero(b.normal_dim())};
  for (int a = 0; a < b.normal_dim(); ++a) {
    Mat h = b.component(a);
    const double t = h.trace() / n;
    out.trace_part[a] = t;
    h.diagonal().array() -= t;
    out.traceless.set_component(a, h);
  }
  return out;
}

RicciData ricci(const CurvatureTensor& r) {
  const int n = r.dim();
  RicciData out;
  out.ric = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += r(i, k, j, k);
      out.ric(i, j) = s;
    }
  // Symmetrize away roundoff so the eigensolver sees an exactly symmetric
  // matrix.
  const Mat sym = 0.5 * (out.ric + out.ric.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.scalar = out.ric.trace();
  return out;
}

double weak_ricci_min(const RicciData& ric, int k) {
  const int n = static_cast<int>(ric.eigenvalues.size());
  if (k < 1 || k > n) {
    throw std::invalid_argument("weak_ricci_min: k=" + std::to_string(k) +
                                " outside [1, " + std::to_string(n) + "]");
  }
  if (k == n) return ric.scalar;
  return ric.eigenvalues.head(k).sum();
}

double weak_ricci_min(const CurvatureTensor& r, int k) {
  return weak_ricci_min(ricci(r), k);
}

}  // namespace curvgate
