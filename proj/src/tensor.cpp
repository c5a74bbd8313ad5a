#include "curvgate/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvgate {

CurvatureTensor::CurvatureTensor(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("CurvatureTensor: dimension must be >= 1");
  const auto m = static_cast<std::size_t>(n);
  data_.assign(m * m * m * m, 0.0);
}

double CurvatureTensor::contract(const Vec& x, const Vec& y, const Vec& z,
                                 const Vec& w) const {
  const int n = n_;
  double total = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    double si = 0.0;
    for (int j = 0; j < n; ++j) {
      double sj = 0.0;
      for (int k = 0; k < n; ++k) {
        double sk = 0.0;
        for (int l = 0; l < n; ++l) sk += data_[idx++] * w[l];
        sj += sk * z[k];
      }
      si += sj * y[j];
    }
    total += si * x[i];
  }
  return total;
}

Vec CurvatureTensor::contract_first_free(const Vec& y, const Vec& z,
                                         const Vec& w) const {
  const int n = n_;
  Vec out = Vec::Zero(n);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    double si = 0.0;
    for (int j = 0; j < n; ++j) {
      double sj = 0.0;
      for (int k = 0; k < n; ++k) {
        double sk = 0.0;
        for (int l = 0; l < n; ++l) sk += data_[idx++] * w[l];
        sj += sk * z[k];
      }
      si += sj * y[j];
    }
    out[i] = si;
  }
  return out;
}

CurvatureTensor CurvatureTensor::pullback(const Mat& basis) const {
  if (basis.rows() != n_) {
    throw std::invalid_argument("pullback: basis has " +
                                std::to_string(basis.rows()) +
                                " rows, tensor dimension is " +
                                std::to_string(n_));
  }
  const int n = n_;
  const int k = static_cast<int>(basis.cols());
  // Successive mode products; each stage contracts one slot.
  // stage layout: [free slots already reduced ... remaining original slots]
  const auto sz = [](int a, int b, int c, int d) {
    return static_cast<std::size_t>(a) * b * c * d;
  };
  std::vector<double> s1(sz(k, n, n, n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < k; ++a) {
      const double f = basis(i, a);
      if (f == 0.0) continue;
      const double* src = &data_[static_cast<std::size_t>(i) * n * n * n];
      double* dst = &s1[static_cast<std::size_t>(a) * n * n * n];
      for (std::size_t t = 0; t < static_cast<std::size_t>(n) * n * n; ++t)
        dst[t] += f * src[t];
    }
  std::vector<double> s2(sz(k, k, n, n), 0.0);
  for (int a = 0; a < k; ++a)
    for (int j = 0; j < n; ++j)
      for (int b = 0; b < k; ++b) {
        const double f = basis(j, b);
        if (f == 0.0) continue;
        const double* src = &s1[(static_cast<std::size_t>(a) * n + j) * n * n];
        double* dst = &s2[(static_cast<std::size_t>(a) * k + b) * n * n];
        for (int t = 0; t < n * n; ++t) dst[t] += f * src[t];
      }
  std::vector<double> s3(sz(k, k, k, n), 0.0);
  for (int ab = 0; ab < k * k; ++ab)
    for (int kk = 0; kk < n; ++kk)
      for (int c = 0; c < k; ++c) {
        const double f = basis(kk, c);
        if (f == 0.0) continue;
        const double* src = &s2[(static_cast<std::size_t>(ab) * n + kk) * n];
        double* dst = &s3[(static_cast<std::size_t>(ab) * k + c) * n];
        for (int t = 0; t < n; ++t) dst[t] += f * src[t];
      }
  CurvatureTensor out(k);
  for (int abc = 0; abc < k * k * k; ++abc)
    for (int d = 0; d < k; ++d) {
      double s = 0.0;
      const double* src = &s3[static_cast<std::size_t>(abc) * n];
      for (int l = 0; l < n; ++l) s += src[l] * basis(l, d);
      out.data_[static_cast<std::size_t>(abc) * k + d] = s;
    }
  return out;
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

CurvatureTensor& CurvatureTensor::operator+=(const CurvatureTensor& other) {
  if (other.n_ != n_) throw std::invalid_argument("tensor dimension mismatch");
  for (std::size_t t = 0; t < data_.size(); ++t) data_[t] += other.data_[t];
  return *this;
}

CurvatureTensor& CurvatureTensor::operator-=(const CurvatureTensor& other) {
  if (other.n_ != n_) throw std::invalid_argument("tensor dimension mismatch");
  for (std::size_t t = 0; t < data_.size(); ++t) data_[t] -= other.data_[t];
  return *this;
}

CurvatureTensor& CurvatureTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

SecondFundamentalForm::SecondFundamentalForm(int n, int p) : n_(n), p_(p) {
  if (n < 1) throw std::invalid_argument("SecondFundamentalForm: n must be >= 1");
  if (p < 0) throw std::invalid_argument("SecondFundamentalForm: p must be >= 0");
  h_.assign(static_cast<std::size_t>(p) * n * n, 0.0);
}

void SecondFundamentalForm::set(int alpha, int i, int j, double value) {
  h_[index(alpha, i, j)] = value;
  h_[index(alpha, j, i)] = value;
}

Mat SecondFundamentalForm::component(int alpha) const {
  Mat m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(alpha, i, j);
  return m;
}

void SecondFundamentalForm::set_component(int alpha, const Mat& sym) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      h_[index(alpha, i, j)] = 0.5 * (sym(i, j) + sym(j, i));
}

double SecondFundamentalForm::asymmetry() const {
  double worst = 0.0;
  for (int a = 0; a < p_; ++a)
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        worst = std::max(worst, std::abs((*this)(a, i, j) - (*this)(a, j, i)));
  return worst;
}

SecondFundamentalForm SecondFundamentalForm::rotated(const Mat& q) const {
  SecondFundamentalForm out(n_, p_);
  for (int a = 0; a < p_; ++a) out.set_component(a, q * component(a) * q.transpose());
  return out;
}

SecondFundamentalForm SecondFundamentalForm::from_components(
    int n, int p, std::span<const double> values, double tol) {
  SecondFundamentalForm out(n, p);
  if (values.size() != out.h_.size()) {
    throw std::invalid_argument("second fundamental form: expected " +
                                std::to_string(out.h_.size()) +
                                " components, got " +
                                std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), out.h_.begin());
  if (out.asymmetry() > tol) {
    throw std::invalid_argument(
        "second fundamental form: component is not symmetric (max defect " +
        std::to_string(out.asymmetry()) + ")");
  }
  return out;
}

SecondFundamentalForm& SecondFundamentalForm::operator*=(double s) {
  for (double& v : h_) v *= s;
  return *this;
}

}  // namespace curvgate
