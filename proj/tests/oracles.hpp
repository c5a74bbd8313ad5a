// Independent reference computations used as test oracles. Deliberately
// naive: plain loops, own RNG, own Gram-Schmidt.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "curvgate/tensor.hpp"

namespace oracle {

using curvgate::CurvatureTensor;
using curvgate::Mat;
using curvgate::Vec;

inline double contract(const CurvatureTensor& r, const Vec& x, const Vec& y, const Vec& z,
                       const Vec& w) {
  const int n = r.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += r(i, j, k, l) * x[i] * y[j] * z[k] * w[l];
  return s;
}

inline double scalar(const CurvatureTensor& r) {
  double s = 0.0;
  for (int i = 0; i < r.dim(); ++i)
    for (int j = 0; j < r.dim(); ++j) s += r(i, j, i, j);
  return s;
}

inline Mat ricci(const CurvatureTensor& r) {
  const int n = r.dim();
  Mat ric = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) ric(i, j) += r(i, k, j, k);
  return ric;
}

// Columns f0..f3: R_1313 + l^2 R_1414 + m^2 R_2323 + l^2 m^2 R_2424 - 2 l m R_1234.
inline double weighted(const CurvatureTensor& r, const std::array<Vec, 4>& f, double l, double m) {
  return contract(r, f[0], f[2], f[0], f[2]) + l * l * contract(r, f[0], f[3], f[0], f[3]) +
         m * m * contract(r, f[1], f[2], f[1], f[2]) +
         l * l * m * m * contract(r, f[1], f[3], f[1], f[3]) -
         2 * l * m * contract(r, f[0], f[1], f[2], f[3]);
}

inline double isotropic(const CurvatureTensor& r, const std::array<Vec, 4>& f) {
  return weighted(r, f, 1.0, 1.0);
}

struct Sampler {
  std::mt19937_64 eng;
  std::normal_distribution<double> nd{0.0, 1.0};
  explicit Sampler(unsigned long long seed) : eng(seed) {}

  double normal() { return nd(eng); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng);
  }
  Vec gaussian(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }
  Vec unit(int n) {
    Vec v = gaussian(n);
    return v / v.norm();
  }
  // Modified Gram-Schmidt on Gaussian vectors.
  std::array<Vec, 4> frame(int n) {
    std::array<Vec, 4> f;
    for (int a = 0; a < 4; ++a) {
      Vec v = gaussian(n);
      for (int b = 0; b < a; ++b) v -= v.dot(f[b]) * f[b];
      for (int b = 0; b < a; ++b) v -= v.dot(f[b]) * f[b];
      f[a] = v / v.norm();
    }
    return f;
  }
  // Random algebraic curvature tensor from two symmetric matrices and a
  // Kulkarni-Nomizu product, independent of the library's generator.
  CurvatureTensor curvature(int n) {
    auto sym = [&] {
      Mat a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = normal();
      return Mat(0.5 * (a + a.transpose()));
    };
    const Mat h = sym(), k = sym();
    CurvatureTensor r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            r(i, j, a, b) = h(i, a) * k(j, b) + h(j, b) * k(i, a) - h(i, b) * k(j, a) -
                            h(j, a) * k(i, b);
    return r;
  }
};

// Coordinate-frame brute force plus random frames: the minimum of the
// isotropic expression seen.
inline double brute_isotropic(const CurvatureTensor& r, int samples, unsigned long long seed) {
  Sampler s(seed);
  double best = INFINITY;
  for (int t = 0; t < samples; ++t) best = std::min(best, isotropic(r, s.frame(r.dim())));
  return best;
}

// Random frames, then compass search over plane rotations of a full
// orthonormal basis, started from the best `polish` samples. Derivative free
// and independent of the library's optimizer.
inline double polished_isotropic(const CurvatureTensor& r, int samples, int polish,
                                 unsigned long long seed) {
  const int n = r.dim();
  Sampler s(seed);
  std::vector<std::pair<double, Mat>> seeds;
  for (int t = 0; t < samples; ++t) {
    Mat q(n, n);
    for (int j = 0; j < n; ++j) {
      Vec v = s.gaussian(n);
      for (int pass = 0; pass < 2; ++pass)
        for (int b = 0; b < j; ++b) v -= v.dot(q.col(b)) * q.col(b);
      q.col(j) = v / v.norm();
    }
    const double v = isotropic(r, {q.col(0), q.col(1), q.col(2), q.col(3)});
    seeds.emplace_back(v, q);
    std::sort(seeds.begin(), seeds.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (static_cast<int>(seeds.size()) > polish) seeds.pop_back();
  }
  double best = seeds.front().first;
  for (auto [val, q] : seeds) {
    const auto eval = [&](const Mat& m) {
      return isotropic(r, {m.col(0), m.col(1), m.col(2), m.col(3)});
    };
    for (double step = 0.5; step > 1e-9; step *= 0.5) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < n; ++j)
            for (double th : {step, -step}) {
              Mat t = q;
              t.col(i) = std::cos(th) * q.col(i) - std::sin(th) * q.col(j);
              t.col(j) = std::sin(th) * q.col(i) + std::cos(th) * q.col(j);
              const double v = eval(t);
              if (v < val - 1e-15) {
                val = v;
                q = t;
                moved = true;
              }
            }
      }
    }
    best = std::min(best, val);
  }
  return best;
}

}  // namespace oracle
