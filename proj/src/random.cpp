#include "curvgate/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvgate/curvature.hpp"

namespace curvgate {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Fix column signs so the factorization is unique (and Haar for Gaussian
// input).
Mat orthonormalize(const Mat& a) {
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(a.rows(), a.cols());
  const Mat r = qr.matrixQR();
  for (int j = 0; j < a.cols(); ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

double max_pinch(const std::vector<double>& cs) {
  double best = -INFINITY;
  bool any_pos = false, any_zero = false;
  double inv_sum = 0.0;
  for (double c : cs) {
    best = std::max(best, c);
    if (c > 0) any_pos = true;
    if (c == 0) any_zero = true;
    if (c < 0) inv_sum += 1.0 / c;
  }
  if (any_pos) return best;
  if (any_zero) return 0.0;
  if (cs.size() == 1) return cs[0];  // 1 / (1 / c) need not round back to c
  return 1.0 / inv_sum;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index) {
  return splitmix(splitmix(splitmix(seed) ^ stream) ^ index);
}

int Rng::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(eng_);
}

Vec Rng::normal_vec(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Mat Rng::normal_mat(int rows, int cols) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = normal();
  return m;
}

Mat random_frame(int n, int k, Rng& rng) {
  if (k > n) throw std::invalid_argument("random_frame: k > n");
  return orthonormalize(rng.normal_mat(n, k));
}

Mat random_orthogonal(int n, Rng& rng) { return random_frame(n, n, rng); }

Vec random_unit(int n, Rng& rng) {
  Vec v = rng.normal_vec(n);
  return v / v.norm();
}

Mat random_unitary(int m, Rng& rng) {
  Eigen::MatrixXcd z(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) z(i, j) = {rng.normal(), rng.normal()};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (int j = 0; j < m; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= std::conj(r(j, j)) / a;
  }
  Mat u(2 * m, 2 * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const double re = q(a, b).real();
      const double im = q(a, b).imag();
      u(2 * a, 2 * b) = re;
      u(2 * a, 2 * b + 1) = -im;
      u(2 * a + 1, 2 * b) = im;
      u(2 * a + 1, 2 * b + 1) = re;
    }
  return u;
}

SecondFundamentalForm random_sff(int n, int p, Rng& rng, double scale) {
  SecondFundamentalForm b(n, p);
  for (int a = 0; a < p; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) b.set(a, i, j, scale * rng.normal());
  return b;
}

CurvatureTensor random_curvature(int n, Rng& rng) {
  const SecondFundamentalForm b1 = random_sff(n, 2, rng);
  const SecondFundamentalForm b2 = random_sff(n, 2, rng);
  return gauss_tensor(b1) - gauss_tensor(b2);
}

HolPinch direct_sum_pinch(const std::vector<double>& constants) {
  if (constants.empty()) throw std::invalid_argument("direct_sum_pinch: empty");
  std::vector<double> neg(constants.size());
  std::transform(constants.begin(), constants.end(), neg.begin(),
                 [](double c) { return -c; });
  return HolPinch(-max_pinch(neg), max_pinch(constants));
}

KahlerCurvature diagonal_kahler(const std::vector<double>& constants) {
  if (constants.empty()) throw std::invalid_argument("diagonal_kahler: empty");
  KahlerCurvature out = space_form(1, constants[0]);
  for (std::size_t i = 1; i < constants.size(); ++i)
    out = direct_sum(out, space_form(1, constants[i]));
  return out;
}

const char* to_string(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::kSpaceForm: return "space-form";
    case CorpusKind::kConjugate: return "conjugate";
    case CorpusKind::kDirectSum: return "direct-sum";
    case CorpusKind::kCombination: return "combination";
  }
  return "unknown";
}

KahlerSample random_kahler(CorpusKind kind, int m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("random_kahler: m must be >= 1");
  const auto draw_constants = [&] {
    std::vector<double> cs(m);
    for (double& c : cs) c = rng.uniform(-4.0, 4.0);
    return cs;
  };
  switch (kind) {
    case CorpusKind::kSpaceForm: {
      const double c = rng.uniform(-4.0, 4.0);
      return {to_string(kind), space_form(m, c), HolPinch(c, c)};
    }
    case CorpusKind::kDirectSum: {
      const auto cs = draw_constants();
      return {to_string(kind), diagonal_kahler(cs), direct_sum_pinch(cs)};
    }
    case CorpusKind::kConjugate: {
      const auto cs = draw_constants();
      const Mat u = random_unitary(m, rng);
      return {to_string(kind), unitary_conjugate(diagonal_kahler(cs), u),
              direct_sum_pinch(cs)};
    }
    case CorpusKind::kCombination: {
      const auto cs = draw_constants();
      const Mat u = random_unitary(m, rng);
      const double c = rng.uniform(-4.0, 4.0);
      const double s = rng.uniform(-1.0, 1.0);
      const double t = rng.uniform(0.1, 1.0);
      const HolPinch p = direct_sum_pinch(cs);
      return {to_string(kind),
              combine(s, space_form(m, c), t,
                      unitary_conjugate(diagonal_kahler(cs), u)),
              HolPinch(s * c + t * p.kmin, s * c + t * p.kmax)};
    }
  }
  throw std::invalid_argument("random_kahler: unknown kind");
}

KahlerSample random_kahler_with_sign(SignCase sign_case, int m, Rng& rng) {
  std::vector<double> cs(m);
  switch (sign_case) {
    case SignCase::kNonneg:
      for (double& c : cs) c = rng.uniform(0.5, 4.0);
      break;
    case SignCase::kNonpos:
      for (double& c : cs) c = rng.uniform(-4.0, -0.5);
      break;
    case SignCase::kMixed:
      if (m < 2) {
        throw std::invalid_argument("random_kahler_with_sign: mixed needs m >= 2");
      }
      for (double& c : cs) c = rng.uniform(-4.0, 4.0);
      cs[0] = rng.uniform(0.5, 4.0);
      cs[1] = rng.uniform(-4.0, -0.5);
      break;
  }
  const Mat u = random_unitary(m, rng);
  return {std::string("sign-") + to_string(sign_case),
          unitary_conjugate(diagonal_kahler(cs), u), direct_sum_pinch(cs)};
}

}  // namespace curvgate
