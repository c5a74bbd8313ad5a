// Dense algebraic curvature tensors and vector-valued second fundamental forms.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace curvgate {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Rank-4 tensor R[i][j][k][l] on R^n, stored densely (n^4 doubles).
///
/// The type does not enforce the curvature symmetries; use
/// validate_symmetries() to check them. All constructions in this library
/// produce symmetric tensors up to roundoff.
class CurvatureTensor {
 public:
  CurvatureTensor() = default;
  explicit CurvatureTensor(int n);

  int dim() const { return n_; }

  double& operator()(int i, int j, int k, int l) {
    return data_[index(i, j, k, l)];
  }
  double operator()(int i, int j, int k, int l) const {
    return data_[index(i, j, k, l)];
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  /// R(x, y, z, w) for arbitrary vectors.
  double contract(const Vec& x, const Vec& y, const Vec& z,
                  const Vec& w) const;
  /// Unnormalized biquadratic R(u, v, u, v).
  double biquadratic(const Vec& u, const Vec& v) const {
    return contract(u, v, u, v);
  }
  /// R(., y, z, w) as a vector (first slot left free).
  Vec contract_first_free(const Vec& y, const Vec& z, const Vec& w) const;

  /// Tensor on R^k with entries R(b_a, b_b, b_c, b_d) for the columns of
  /// the n x k matrix `basis`.
  CurvatureTensor pullback(const Mat& basis) const;

  double max_abs() const;

  CurvatureTensor& operator+=(const CurvatureTensor& other);
  CurvatureTensor& operator-=(const CurvatureTensor& other);
  CurvatureTensor& operator*=(double s);

  friend CurvatureTensor operator+(CurvatureTensor a,
                                   const CurvatureTensor& b) {
    return a += b;
  }
  friend CurvatureTensor operator-(CurvatureTensor a,
                                   const CurvatureTensor& b) {
    return a -= b;
  }
  friend CurvatureTensor operator*(double s, CurvatureTensor a) {
    return a *= s;
  }

  friend bool operator==(const CurvatureTensor&,
                         const CurvatureTensor&) = default;

 private:
  std::size_t index(int i, int j, int k, int l) const {
    const auto n = static_cast<std::size_t>(n_);
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// Vector-valued symmetric bilinear form h[alpha][i][j] with n tangent and p
/// normal directions. p may be zero (codimension zero, or a totally geodesic
/// slice with no normal data).
class SecondFundamentalForm {
 public:
  SecondFundamentalForm() = default;
  SecondFundamentalForm(int n, int p);

  int tangent_dim() const { return n_; }
  int normal_dim() const { return p_; }

  double operator()(int alpha, int i, int j) const {
    return h_[index(alpha, i, j)];
  }
  /// Sets h[alpha][i][j] and h[alpha][j][i].
  void set(int alpha, int i, int j, double value);

  /// The n x n symmetric matrix of the alpha-th normal component.
  Mat component(int alpha) const;
  void set_component(int alpha, const Mat& sym);

  /// Largest |h[a][i][j] - h[a][j][i]|; zero for anything built via set().
  double asymmetry() const;

  /// Form B'(x, y) = B(Q^T x, Q^T y): components Q h Q^T.
  SecondFundamentalForm rotated(const Mat& q) const;

  std::span<const double> data() const { return h_; }

  /// Builds a form from raw nested components; throws std::invalid_argument
  /// if any component is asymmetric beyond `tol`.
  static SecondFundamentalForm from_components(
      int n, int p, std::span<const double> values, double tol = 1e-12);

  SecondFundamentalForm& operator*=(double s);

 private:
  std::size_t index(int alpha, int i, int j) const {
    const auto n = static_cast<std::size_t>(n_);
    return (static_cast<std::size_t>(alpha) * n + i) * n + j;
  }

  int n_ = 0;
  int p_ = 0;
  std::vector<double> h_;
};

}  // namespace curvgate
