#include "curvgate/kahler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvgate {

ComplexStructure ComplexStructure::standard(int m) {
  if (m < 1) throw std::invalid_argument("complex dimension must be >= 1");
  ComplexStructure cs;
  cs.m = m;
  cs.j = Mat::Zero(2 * m, 2 * m);
  for (int a = 0; a < m; ++a) {
    cs.j(2 * a + 1, 2 * a) = 1.0;
    cs.j(2 * a, 2 * a + 1) = -1.0;
  }
  return cs;
}

double ComplexStructure::defect() const {
  const auto n = j.rows();
  const Mat id = Mat::Identity(n, n);
  const double orth = (j.transpose() * j - id).cwiseAbs().maxCoeff();
  const double square = (j * j + id).cwiseAbs().maxCoeff();
  return std::max(orth, square);
}

double j_invariance_defect(const KahlerCurvature& kc) {
  const int n = kc.dim();
  const Mat& j = kc.j.j;
  double worst = 0.0;
  // K(Je_a, Je_b, e_c, e_d) = sum_{ik} J_ia J_kb K_ikcd.
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      Mat slice(n, n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) slice(i, k) = kc.k(i, k, c, d);
      const Mat rotated = j.transpose() * slice * j;
      worst = std::max(worst, (rotated - slice).cwiseAbs().maxCoeff());
    }
  return worst;
}

double holomorphic_quartic(const KahlerCurvature& kc, const Vec& x) {
  const Vec jx = kc.j.apply(x);
  return kc.k.contract(x, jx, x, jx);
}

double holomorphic_sectional(const KahlerCurvature& kc, const Vec& x) {
  const double n2 = x.squaredNorm();
  if (n2 == 0.0) {
    throw std::invalid_argument("holomorphic_sectional: zero vector");
  }
  return holomorphic_quartic(kc, x) / (n2 * n2);
}

double polarize_general(const CurvatureTensor& k, const Vec& x, const Vec& y,
                        const Vec& z, const Vec& w) {
  const auto q = [&](const Vec& u, const Vec& v) { return k.biquadratic(u, v); };
  const double sum = q(x + z, y + w) + q(x - z, y - w) + q(x + w, y - z) +
                     q(x - w, y + z) - q(x + z, y - w) - q(x - z, y + w) -
                     q(x + w, y + z) - q(x - w, y - z);
  return sum / 24.0;
}

double sectional_from_holomorphic(const KahlerCurvature& kc, const Vec& x,
                                  const Vec& y) {
  const auto q = [&](const Vec& u) { return holomorphic_quartic(kc, u); };
  const Vec jy = kc.j.apply(y);
  return 3.0 * q(x + jy) + 3.0 * q(x - jy) - q(x + y) - q(x - y) -
         4.0 * q(x) - 4.0 * q(y);
}

double full_from_holomorphic(const KahlerCurvature& kc, const Vec& x,
                             const Vec& y, const Vec& z, const Vec& w) {
  const auto q = [&](const Vec& u) { return holomorphic_quartic(kc, u); };
  const Vec jy = kc.j.apply(y);
  const Vec jz = kc.j.apply(z);
  const Vec jw = kc.j.apply(w);
  const Vec xpz = x + z, xmz = x - z, xpw = x + w, xmw = x - w;
  return q(xpz + jy + jw) + q(xpz - jy - jw) - q(xpz + jy - jw) -
         q(xpz - jy + jw) + q(xmz + jy - jw) + q(xmz - jy + jw) -
         q(xmz + jy + jw) - q(xmz - jy - jw) + q(xpw + jy - jz) +
         q(xpw - jy + jz) - q(xpw + jy + jz) - q(xpw - jy - jz) +
         q(xmw + jy + jz) + q(xmw - jy - jz) - q(xmw + jy - jz) -
         q(xmw - jy + jz);
}

HolPinch::HolPinch(double lo, double hi) : kmin(lo), kmax(hi) {
  if (!(lo <= hi)) {
    throw std::invalid_argument("HolPinch: kmin " + std::to_string(lo) +
                                " exceeds kmax " + std::to_string(hi));
  }
}

SignCase sign_case_of(const HolPinch& p) {
  if (p.kmin >= 0.0) return SignCase::kNonneg;
  if (p.kmax <= 0.0) return SignCase::kNonpos;
  return SignCase::kMixed;
}

const char* to_string(SignCase c) {
  switch (c) {
    case SignCase::kNonneg: return "nonneg";
    case SignCase::kMixed: return "mixed";
    case SignCase::kNonpos: return "nonpos";
  }
  return "unknown";
}

Interval pinch_bounds_sectional(const HolPinch& p, double t) {
  const double w = 0.75 * (1.0 + t * t);
  return {w * p.kmin - 0.5 * p.kmax, w * p.kmax - 0.5 * p.kmin};
}

double mixed_term_bound(const HolPinch& p, SignCase sign_case,
                        bool totally_real) {
  bool consistent = false;
  switch (sign_case) {
    case SignCase::kNonneg: consistent = p.kmin >= 0.0; break;
    case SignCase::kMixed: consistent = p.kmin <= 0.0 && p.kmax >= 0.0; break;
    case SignCase::kNonpos: consistent = p.kmax <= 0.0; break;
  }
  if (!consistent) {
    throw std::invalid_argument(std::string("mixed_term_bound: sign case '") +
                                to_string(sign_case) +
                                "' does not match pinch [" +
                                std::to_string(p.kmin) + ", " +
                                std::to_string(p.kmax) + "]");
  }
  if (totally_real) return 0.5 * (p.kmax - p.kmin);
  switch (sign_case) {
    case SignCase::kNonneg: return p.kmax - 0.5 * p.kmin;
    case SignCase::kMixed: return p.kmax - p.kmin;
    case SignCase::kNonpos: return 0.5 * p.kmax - p.kmin;
  }
  return 0.0;
}

KahlerCurvature space_form(int m, double c) {
  KahlerCurvature kc{CurvatureTensor(2 * m), ComplexStructure::standard(m)};
  const int n = 2 * m;
  const Mat& j = kc.j.j;
  const double s = c / 4.0;
  // <X,Z><Y,W> - <X,W><Y,Z> + <JX,Z><JY,W> - <JX,W><JY,Z> + 2<X,JY><Z,JW>
  // with <Je_i, e_k> = J_ki and <e_i, Je_j> = J_ij.
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = (i == k && jj == l ? 1.0 : 0.0) -
                           (i == l && jj == k ? 1.0 : 0.0) +
                           j(k, i) * j(l, jj) - j(l, i) * j(k, jj) +
                           2.0 * j(i, jj) * j(k, l);
          kc.k(i, jj, k, l) = s * v;
        }
  return kc;
}

KahlerCurvature unitary_conjugate(const KahlerCurvature& kc, const Mat& u) {
  const int n = kc.dim();
  if (u.rows() != n || u.cols() != n) {
    throw std::invalid_argument("unitary_conjugate: U must be " +
                                std::to_string(n) + "x" + std::to_string(n));
  }
  const double orth = (u.transpose() * u - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  const double comm = (u * kc.j.j - kc.j.j * u).cwiseAbs().maxCoeff();
  if (orth > 1e-10) {
    throw std::invalid_argument("unitary_conjugate: U is not orthogonal (defect " +
                                std::to_string(orth) + ")");
  }
  if (comm > 1e-10) {
    throw std::invalid_argument("unitary_conjugate: U does not commute with J (defect " +
                                std::to_string(comm) + ")");
  }
  return {kc.k.pullback(u), kc.j};
}

KahlerCurvature direct_sum(const KahlerCurvature& a, const KahlerCurvature& b) {
  const int na = a.dim();
  const int nb = b.dim();
  KahlerCurvature out{CurvatureTensor(na + nb), ComplexStructure{}};
  out.j.m = a.j.m + b.j.m;
  out.j.j = Mat::Zero(na + nb, na + nb);
  out.j.j.topLeftCorner(na, na) = a.j.j;
  out.j.j.bottomRightCorner(nb, nb) = b.j.j;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < na; ++l) out.k(i, j, k, l) = a.k(i, j, k, l);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l)
          out.k(na + i, na + j, na + k, na + l) = b.k(i, j, k, l);
  return out;
}

KahlerCurvature combine(double s, const KahlerCurvature& a, double t,
                        const KahlerCurvature& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("combine: dimension mismatch");
  }
  if ((a.j.j - b.j.j).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("combine: complex structures differ");
  }
  return {s * a.k + t * b.k, a.j};
}

}  // namespace curvgate
