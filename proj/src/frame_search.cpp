#include "curvgate/frame_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvgate/curvature.hpp"
#include "curvgate/parallel.hpp"
#include "curvgate/random.hpp"

namespace curvgate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Seed streams, one per search kind.
constexpr std::uint64_t kStreamIsotropic = 0x1501;
constexpr std::uint64_t kStreamWeighted = 0x1502;
constexpr std::uint64_t kStreamHolMin = 0x1503;
constexpr std::uint64_t kStreamHolMax = 0x1504;
constexpr std::uint64_t kStreamPair = 0x1505;

struct Term {
  double coef;
  int a, b, c, d;
};

// R(f_a, f_b, f_c, .) as n-vectors: m3[((a*4+b)*4+c)*n + l].
struct Partials {
  int n = 0;
  std::vector<double> m3;
  const double* at(int a, int b, int c) const {
    return &m3[static_cast<std::size_t>((a * 4 + b) * 4 + c) * n];
  }
};

Partials frame_partials(const CurvatureTensor& r, const Mat& f) {
  const int n = r.dim();
  const int k = static_cast<int>(f.cols());
  const auto nn = static_cast<std::size_t>(n);
  const auto data = r.data();
  std::vector<double> s1(static_cast<std::size_t>(k) * nn * nn * nn, 0.0);
  for (int a = 0; a < k; ++a) {
    double* dst = &s1[static_cast<std::size_t>(a) * nn * nn * nn];
    for (int i = 0; i < n; ++i) {
      const double w = f(i, a);
      if (w == 0.0) continue;
      const double* src = &data[static_cast<std::size_t>(i) * nn * nn * nn];
      for (std::size_t t = 0; t < nn * nn * nn; ++t) dst[t] += w * src[t];
    }
  }
  std::vector<double> s2(static_cast<std::size_t>(k * k) * nn * nn, 0.0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      double* dst = &s2[static_cast<std::size_t>(a * k + b) * nn * nn];
      for (int j = 0; j < n; ++j) {
        const double w = f(j, b);
        if (w == 0.0) continue;
        const double* src = &s1[(static_cast<std::size_t>(a) * nn + j) * nn * nn];
        for (std::size_t t = 0; t < nn * nn; ++t) dst[t] += w * src[t];
      }
    }
  Partials out;
  out.n = n;
  out.m3.assign(64 * nn, 0.0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        double* dst = &out.m3[static_cast<std::size_t>((a * 4 + b) * 4 + c) * nn];
        const double* base = &s2[static_cast<std::size_t>(a * k + b) * nn * nn];
        for (int kk = 0; kk < n; ++kk) {
          const double w = f(kk, c);
          if (w == 0.0) continue;
          const double* src = base + static_cast<std::size_t>(kk) * nn;
          for (int l = 0; l < n; ++l) dst[l] += w * src[l];
        }
      }
  return out;
}

FrameComponents components_from(const Partials& p, const Mat& f) {
  FrameComponents out;
  const int n = p.n;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const double* v = p.at(a, b, c);
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += v[l] * f(l, d);
          out.c[((a * 4 + b) * 4 + c) * 4 + d] = s;
        }
      }
  return out;
}

void accumulate_gradient(const Partials& p, const std::vector<Term>& terms,
                         Mat& g) {
  const int n = p.n;
  for (const Term& t : terms) {
    const double* vd = p.at(t.a, t.b, t.c);
    const double* vc = p.at(t.a, t.b, t.d);
    const double* vb = p.at(t.c, t.d, t.a);
    const double* va = p.at(t.c, t.d, t.b);
    for (int l = 0; l < n; ++l) {
      g(l, t.d) += t.coef * vd[l];
      g(l, t.c) -= t.coef * vc[l];
      g(l, t.b) += t.coef * vb[l];
      g(l, t.a) -= t.coef * va[l];
    }
  }
}

// Value of a frame functional; fills `terms` with d(value)/d(component).
using FrameFunctional =
    std::function<double(const FrameComponents&, std::vector<Term>*)>;

// Value and ambient gradient of a function on n x k matrices.
using Objective = std::function<double(const Mat&, Mat*)>;

Objective frame_objective(const CurvatureTensor& r, FrameFunctional fn) {
  return [&r, fn = std::move(fn)](const Mat& f, Mat* grad) {
    const Partials p = frame_partials(r, f);
    const FrameComponents comp = components_from(p, f);
    std::vector<Term> terms;
    const double v = fn(comp, grad ? &terms : nullptr);
    if (grad) {
      grad->setZero(f.rows(), f.cols());
      accumulate_gradient(p, terms, *grad);
    }
    return v;
  };
}

Mat retract(const Mat& a) {
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(a.rows(), a.cols());
  const Mat& r = qr.matrixQR();
  for (int j = 0; j < a.cols(); ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

Mat fd_gradient(const Objective& obj, const Mat& x, double h) {
  Mat g(x.rows(), x.cols());
  Mat y = x;
  for (int j = 0; j < x.cols(); ++j)
    for (int i = 0; i < x.rows(); ++i) {
      const double keep = y(i, j);
      y(i, j) = keep + h;
      const double fp = obj(y, nullptr);
      y(i, j) = keep - h;
      const double fm = obj(y, nullptr);
      y(i, j) = keep;
      g(i, j) = (fp - fm) / (2.0 * h);
    }
  return g;
}

struct LocalResult {
  Mat x;
  double value = kInf;
  bool converged = false;
};

LocalResult descend(const Objective& obj, Mat x, const SearchBudget& budget) {
  const auto value_and_grad = [&](const Mat& y, Mat& g) {
    if (budget.gradient == GradientMode::kFiniteDifference) {
      g = fd_gradient(obj, y, budget.fd_step);
      return obj(y, nullptr);
    }
    return obj(y, &g);
  };
  const auto riemannian = [](const Mat& y, const Mat& g) {
    const Mat s = y.transpose() * g;
    return Mat(g - y * (0.5 * (s + s.transpose())));
  };

  x = retract(x);
  if (budget.on_iterate) budget.on_iterate(x);
  Mat g;
  double f = value_and_grad(x, g);
  Mat xi = riemannian(x, g);
  Mat x_prev, xi_prev;
  LocalResult out{x, f, false};
  for (int it = 0; it < budget.max_iterations; ++it) {
    const double gn2 = xi.squaredNorm();
    if (std::sqrt(gn2) < budget.grad_tol) {
      out.converged = true;
      break;
    }
    double t = 1.0 / std::max(1.0, std::sqrt(gn2));
    if (it > 0) {
      const Mat s = x - x_prev;
      const Mat y = xi - xi_prev;
      const double sy = (s.array() * y.array()).sum();
      if (std::abs(sy) > 0) t = std::abs(s.squaredNorm() / sy);
    }
    t = std::clamp(t, 1e-10, 1e3);
    bool accepted = false;
    Mat x_new;
    double f_new = f;
    for (int bt = 0; bt < 50; ++bt) {
      x_new = retract(x - t * xi);
      f_new = obj(x_new, nullptr);
      if (f_new <= f - 1e-4 * t * gn2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    x_prev = x;
    xi_prev = xi;
    x = x_new;
    if (budget.on_iterate) budget.on_iterate(x);
    f = value_and_grad(x, g);
    xi = riemannian(x, g);
    out = {x, f, false};
  }
  out.x = x;
  out.value = f;
  if (!out.converged && xi.norm() < budget.grad_tol) out.converged = true;
  return out;
}

struct SearchOutcome {
  LocalResult best;
  int converged_restarts = 0;
  int restarts = 0;
};

SearchOutcome multistart(const Objective& obj, int n, int k,
                         const SearchBudget& budget, std::uint64_t seed,
                         std::uint64_t stream) {
  if (budget.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const auto count = static_cast<std::size_t>(budget.restarts);
  std::vector<LocalResult> results(count);
  const auto one = [&](std::size_t r) {
    Rng rng(seed, stream, r);
    results[r] = descend(obj, rng.normal_mat(n, k), budget);
  };
  if (budget.on_iterate) {
    for (std::size_t r = 0; r < count; ++r) one(r);
  } else {
    parallel_for(count, one);
  }
  SearchOutcome out;
  out.restarts = budget.restarts;
  for (const LocalResult& lr : results) {
    if (lr.converged) ++out.converged_restarts;
    if (lr.value < out.best.value) out.best = lr;
  }
  return out;
}

double isotropic_from(const FrameComponents& c, std::vector<Term>* terms) {
  if (terms) {
    *terms = {{1.0, 0, 2, 0, 2}, {1.0, 0, 3, 0, 3}, {1.0, 1, 2, 1, 2},
              {1.0, 1, 3, 1, 3}, {-2.0, 0, 1, 2, 3}};
  }
  return c(0, 2, 0, 2) + c(0, 3, 0, 3) + c(1, 2, 1, 2) + c(1, 3, 1, 3) -
         2.0 * c(0, 1, 2, 3);
}

WeightMin weighted_from(const FrameComponents& c, std::vector<Term>* terms) {
  const WeightMin wm = minimize_weights(weighted_coeffs(c));
  if (terms) {
    const double l = wm.at.lambda, m = wm.at.mu;
    *terms = {{1.0, 0, 2, 0, 2},         {l * l, 0, 3, 0, 3},
              {m * m, 1, 2, 1, 2},       {l * l * m * m, 1, 3, 1, 3},
              {-2.0 * l * m, 0, 1, 2, 3}};
  }
  return wm;
}

std::vector<Term> pair_terms(PairExpr e) {
  if (e == PairExpr::kMixedPair) return {{1.0, 0, 1, 0, 1}, {1.0, 0, 1, 2, 3}};
  return {{1.0, 0, 2, 0, 2}, {1.0, 1, 2, 1, 2}, {1.0, 0, 1, 2, 3}};
}

void require_frame(const CurvatureTensor& r, const Frame4& f) {
  if (f.dim() != r.dim()) {
    throw std::invalid_argument("frame dimension " + std::to_string(f.dim()) +
                                " does not match tensor dimension " +
                                std::to_string(r.dim()));
  }
  const double defect = f.orthonormality_defect();
  if (!(defect <= kFrameTol)) {
    throw std::invalid_argument("frame is not orthonormal (defect " +
                                std::to_string(defect) + ")");
  }
}

}  // namespace

Frame4 Frame4::from_matrix(const Mat& f) {
  if (f.cols() != 4) throw std::invalid_argument("Frame4: need 4 columns");
  Frame4 out;
  for (int a = 0; a < 4; ++a) out.e[a] = f.col(a);
  return out;
}

Mat Frame4::matrix() const {
  Mat f(dim(), 4);
  for (int a = 0; a < 4; ++a) f.col(a) = e[a];
  return f;
}

double Frame4::orthonormality_defect() const {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      worst = std::max(worst, std::abs(e[a].dot(e[b]) - (a == b ? 1.0 : 0.0)));
  return worst;
}

Frame4 coordinate_frame(int n, int i, int j, int k, int l) {
  Frame4 f;
  const int idx[4] = {i, j, k, l};
  for (int a = 0; a < 4; ++a) f.e[a] = Vec::Unit(n, idx[a]);
  return f;
}

FrameComponents frame_components(const CurvatureTensor& r, const Mat& f) {
  if (f.rows() != r.dim() || f.cols() != 4) {
    throw std::invalid_argument("frame_components: expected an n x 4 matrix");
  }
  return components_from(frame_partials(r, f), f);
}

double isotropic_expr(const CurvatureTensor& r, const Frame4& f) {
  require_frame(r, f);
  return isotropic_from(frame_components(r, f.matrix()), nullptr);
}

double weighted_isotropic_expr(const CurvatureTensor& r, const Frame4& f,
                               const WeightedIsoParams& w) {
  require_frame(r, f);
  if (std::abs(w.lambda) > 1.0 || std::abs(w.mu) > 1.0) {
    throw std::invalid_argument("weights must lie in [-1, 1]");
  }
  return weighted_coeffs(frame_components(r, f.matrix())).eval(w.lambda, w.mu);
}

WeightedCoeffs weighted_coeffs(const FrameComponents& c) {
  return {c(0, 2, 0, 2), c(0, 3, 0, 3), c(1, 2, 1, 2), c(1, 3, 1, 3),
          c(0, 1, 2, 3)};
}

WeightMin minimize_weights(const WeightedCoeffs& k) {
  WeightMin best{kInf, {0.0, 0.0}};
  const auto consider = [&](double l, double m) {
    if (!(std::abs(l) <= 1.0 + 1e-12) || !(std::abs(m) <= 1.0 + 1e-12)) return;
    l = std::clamp(l, -1.0, 1.0);
    m = std::clamp(m, -1.0, 1.0);
    const double v = k.eval(l, m);
    if (v < best.value) best = {v, {l, m}};
  };
  consider(1, 1);
  consider(1, -1);
  consider(-1, 1);
  consider(-1, -1);
  consider(0, 0);
  for (double s : {1.0, -1.0}) {
    if (k.c + k.d > 0) consider(s, s * k.e / (k.c + k.d));
    if (k.b + k.d > 0) consider(s * k.e / (k.b + k.d), s);
  }
  // Interior: l = e m / (b + d v), v = m^2 solving
  // c d^2 v^2 + 2 b c d v + (c b^2 - e^2 b) = 0.
  const double qa = k.c * k.d * k.d;
  const double qb = 2.0 * k.b * k.c * k.d;
  const double qc = k.c * k.b * k.b - k.e * k.e * k.b;
  std::vector<double> roots;
  const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc), 1e-300});
  if (std::abs(qa) > 1e-14 * scale) {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (qb + (qb >= 0 ? sq : -sq));
      if (q != 0) {
        roots.push_back(q / qa);
        roots.push_back(qc / q);
      } else {
        roots.push_back(0.0);
      }
    }
  } else if (std::abs(qb) > 1e-14 * scale) {
    roots.push_back(-qc / qb);
  }
  for (double v : roots) {
    if (!(v > 0.0 && v <= 1.0 + 1e-12)) continue;
    v = std::min(v, 1.0);
    const double den = k.b + k.d * v;
    if (!(den > 0)) continue;
    for (double s : {1.0, -1.0}) {
      const double m = s * std::sqrt(v);
      consider(k.e * m / den, m);
    }
  }
  return best;
}

OptResult min_isotropic(const CurvatureTensor& r, bool weighted,
                        const SearchBudget& budget, std::uint64_t seed) {
  const int n = r.dim();
  if (n < 4) {
    throw std::invalid_argument("min_isotropic: dimension " + std::to_string(n) +
                                " < 4");
  }
  FrameFunctional fn;
  if (weighted) {
    fn = [](const FrameComponents& c, std::vector<Term>* t) {
      return weighted_from(c, t).value;
    };
  } else {
    fn = isotropic_from;
  }
  const Objective obj = frame_objective(r, fn);
  SearchOutcome s = multistart(obj, n, 4, budget, seed,
                               weighted ? kStreamWeighted : kStreamIsotropic);
  OptResult out;
  out.restarts_used = s.restarts;
  out.converged_restarts = s.converged_restarts;
  if (weighted) {
    // The weight envelope has local minima at (0, 0) on frames minimizing
    // R_1313 alone; the plain optimum (weights (1, 1)) is always a candidate.
    const SearchOutcome plain = multistart(frame_objective(r, isotropic_from), n, 4,
                                           budget, seed, kStreamIsotropic);
    out.restarts_used += plain.restarts;
    out.converged_restarts += plain.converged_restarts;
    const double at_plain = weighted_from(frame_components(r, plain.best.x), nullptr).value;
    if (at_plain < s.best.value) s.best = plain.best;
  }
  out.frame = Frame4::from_matrix(s.best.x);
  const FrameComponents comp = frame_components(r, s.best.x);
  if (weighted) {
    const WeightMin wm = weighted_from(comp, nullptr);
    out.value = wm.value;
    out.weights = wm.at;
  } else {
    out.value = isotropic_from(comp, nullptr);
  }
  out.converged = s.best.converged;
  return out;
}

HolExtremes hol_extremes(const KahlerCurvature& kc, const SearchBudget& budget,
                         std::uint64_t seed) {
  const int n = kc.dim();
  const auto make = [&kc](double sign) -> Objective {
    return [&kc, sign](const Mat& x, Mat* grad) {
      const Vec v = x.col(0);
      const Vec y = kc.j.apply(v);
      const double q = kc.k.contract(v, y, v, y);
      if (grad) {
        const Vec u = kc.k.contract_first_free(y, v, y);
        const Vec w = kc.k.contract_first_free(v, y, v);
        *grad = sign * (2.0 * u + 2.0 * kc.j.j.transpose() * w);
      }
      return sign * q;
    };
  };
  const SearchOutcome lo = multistart(make(1.0), n, 1, budget, seed, kStreamHolMin);
  const SearchOutcome hi = multistart(make(-1.0), n, 1, budget, seed, kStreamHolMax);
  HolExtremes out;
  out.argmin = lo.best.x.col(0);
  out.argmax = hi.best.x.col(0);
  out.kmin = holomorphic_sectional(kc, out.argmin);
  out.kmax = holomorphic_sectional(kc, out.argmax);
  return out;
}

const char* to_string(PairExpr e) {
  switch (e) {
    case PairExpr::kMixedPair: return "mixed-pair";
    case PairExpr::kPairRicci: return "pair-ricci";
    case PairExpr::kSingleWeight: return "single-weight";
  }
  return "unknown";
}

PairExpr pair_expr_from_string(const std::string& s) {
  for (PairExpr e : {PairExpr::kMixedPair, PairExpr::kPairRicci,
                     PairExpr::kSingleWeight}) {
    if (s == to_string(e)) return e;
  }
  throw std::invalid_argument("unknown pair expression '" + s + "'");
}

double pair_expr_value(const CurvatureTensor& r, const Frame4& f, PairExpr e) {
  if (e == PairExpr::kPairRicci) {
    const Mat ric = ricci(r).ric;
    return f.e[0].dot(ric * f.e[0]) + f.e[1].dot(ric * f.e[1]);
  }
  require_frame(r, f);
  const FrameComponents c = frame_components(r, f.matrix());
  double v = 0.0;
  for (const auto& t : pair_terms(e)) v += t.coef * c(t.a, t.b, t.c, t.d);
  return v;
}

OptResult min_pair_expr(const CurvatureTensor& r, PairExpr expr,
                        const SearchBudget& budget, std::uint64_t seed) {
  const int n = r.dim();
  OptResult out;
  if (expr == PairExpr::kPairRicci) {
    if (n < 2) throw std::invalid_argument("min_pair_expr: pair-ricci needs n >= 2");
    const RicciData rd = ricci(r);
    out.value = rd.eigenvalues[0] + rd.eigenvalues[1];
    for (int a = 0; a < 4; ++a)
      out.frame.e[a] = a < n ? Vec(rd.eigenvectors.col(a)) : Vec::Zero(n);
    out.converged = true;
    return out;
  }
  if (n < 4) {
    throw std::invalid_argument(std::string("min_pair_expr: ") + to_string(expr) +
                                " needs n >= 4");
  }
  const auto terms = pair_terms(expr);
  const Objective obj = frame_objective(
      r, [terms](const FrameComponents& c, std::vector<Term>* t) {
        if (t) *t = terms;
        double v = 0.0;
        for (const auto& term : terms) v += term.coef * c(term.a, term.b, term.c, term.d);
        return v;
      });
  const SearchOutcome s = multistart(obj, n, 4, budget, seed,
                                     kStreamPair + static_cast<std::uint64_t>(expr));
  out.frame = Frame4::from_matrix(s.best.x);
  out.value = s.best.value;
  out.restarts_used = s.restarts;
  out.converged_restarts = s.converged_restarts;
  out.converged = s.best.converged;
  return out;
}

}  // namespace curvgate
