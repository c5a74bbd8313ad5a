#include "curvgate/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "curvgate/curvature.hpp"
#include "curvgate/parallel.hpp"
#include "curvgate/random.hpp"

namespace curvgate {

namespace {

constexpr std::uint64_t kStreamFrames = 0x2701;
constexpr std::uint64_t kStreamEquality = 0x2702;

struct FrameEval {
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<WeightedIsoParams> weights;
  std::optional<double> hypothesis;
};

using FrameCheck = std::function<FrameEval(const FrameComponents&)>;

LemmaReport run_check(const std::string& id, const CurvatureTensor& r,
                      double constant, int samples, std::uint64_t seed,
                      const FrameCheck& check) {
  if (samples < 1) throw std::invalid_argument(id + ": samples must be >= 1");
  const std::vector<Frame4> frames = sample_frames(r.dim(), samples, seed);
  std::vector<FrameEval> evals(frames.size());
  parallel_for(frames.size(), [&](std::size_t i) {
    evals[i] = check(frame_components(r, frames[i].matrix()));
  });
  LemmaReport rep;
  rep.lemma_id = id;
  rep.samples = static_cast<int>(frames.size());
  rep.constant = constant;
  rep.gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < evals.size(); ++i) {
    const FrameEval& e = evals[i];
    const double gap = e.lhs - e.rhs;
    if (gap < rep.gap) {
      rep.gap = gap;
      rep.lhs = e.lhs;
      rep.rhs = e.rhs;
      rep.witness = frames[i];
      rep.weights = e.weights;
    }
    if (e.hypothesis) {
      rep.hypothesis_min = rep.hypothesis_min
                               ? std::min(*rep.hypothesis_min, *e.hypothesis)
                               : *e.hypothesis;
    }
  }
  if (rep.hypothesis_min) rep.hypothesis_ok = *rep.hypothesis_min >= constant - rep.tol;
  rep.pass = rep.hypothesis_ok && rep.gap >= -rep.tol;
  return rep;
}

void require_n4(const std::string& id, int n) {
  if (n < 4) {
    throw std::invalid_argument(id + ": needs n >= 4, got " + std::to_string(n));
  }
}

double mixed_pair(const FrameComponents& c) { return c(0, 1, 0, 1) + c(0, 1, 2, 3); }

double quad_expr(const FrameComponents& c) {
  return c(0, 2, 0, 2) + c(0, 3, 0, 3) + c(1, 2, 1, 2) + c(1, 3, 1, 3) -
         2.0 * c(0, 1, 2, 3);
}

}  // namespace

double delta_eps(double eps, int n) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("delta_eps: eps must lie in (0, 1], got " +
                                std::to_string(eps));
  }
  if (n < 4) {
    throw std::invalid_argument("delta_eps: n must be >= 4, got " + std::to_string(n));
  }
  const double nn = n;
  const double top = (nn - 4.0) * eps + 2.0;
  return top * top / (4.0 * (2.0 + (nn * nn - 4.0 * nn + 2.0) * eps));
}

std::vector<Frame4> sample_frames(int n, int samples, std::uint64_t seed) {
  require_n4("sample_frames", n);
  std::vector<std::array<int, 4>> tuples;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (i != j && i != k && i != l && j != k && j != l && k != l)
            tuples.push_back({i, j, k, l});
  const std::size_t total = tuples.size();
  const std::size_t coord = std::min<std::size_t>(total, samples / 2);
  std::vector<Frame4> frames;
  frames.reserve(samples);
  for (std::size_t t = 0; t < coord; ++t) {
    const auto& q = tuples[t * total / coord];
    frames.push_back(coordinate_frame(n, q[0], q[1], q[2], q[3]));
  }
  for (std::size_t t = coord; t < static_cast<std::size_t>(samples); ++t) {
    Rng rng(seed, kStreamFrames, t);
    frames.push_back(Frame4::from_matrix(random_frame(n, 4, rng)));
  }
  return frames;
}

LemmaReport check_amplify(const CurvatureTensor& r, double c, int samples,
                          std::uint64_t seed) {
  require_n4("check_amplify", r.dim());
  return run_check("amplify", r, c, samples, seed, [c](const FrameComponents& k) {
    const WeightedCoeffs w = weighted_coeffs(k);
    const WeightMin wm = minimize_weights({w.a - c, w.b - c, w.c - c, w.d - c, w.e});
    const double l = wm.at.lambda, m = wm.at.mu;
    FrameEval e;
    e.lhs = w.eval(l, m);
    e.rhs = (1.0 + l * l) * (1.0 + m * m) * c;
    e.weights = wm.at;
    // The hypothesis at (e1,e3,e2,+-e4), (e1,e4,e3,+-e2), (e2,e3,e1,+-e4) and
    // (e2,e4,e1,+-e3) is what the conclusion at this frame uses.
    const int idx[4][4] = {{0, 2, 1, 3}, {0, 3, 2, 1}, {1, 2, 0, 3}, {1, 3, 0, 2}};
    double h = std::numeric_limits<double>::infinity();
    for (const auto& q : idx)
      h = std::min(h, k(q[0], q[1], q[0], q[1]) - std::abs(k(q[0], q[1], q[2], q[3])));
    e.hypothesis = h;
    return e;
  });
}

LemmaReport check_amplify_single(const CurvatureTensor& r, double c,
                                 int samples, std::uint64_t seed) {
  require_n4("check_amplify_single", r.dim());
  return run_check(
      "amplify-single", r, c, samples, seed, [c](const FrameComponents& k) {
        const double a = k(0, 2, 0, 2) + k(1, 2, 1, 2);
        const double b = k(0, 3, 0, 3) + k(1, 3, 1, 3);
        const double m = k(0, 1, 2, 3);
        // min over l in [-1, 1] of (a - c) + (b - c) l^2 - 2 m l.
        double best_l = 1.0;
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> cand = {1.0, -1.0};
        if (b - c > 0 && std::abs(m / (b - c)) <= 1.0) cand.push_back(m / (b - c));
        for (double l : cand) {
          const double v = (a - c) + (b - c) * l * l - 2.0 * m * l;
          if (v < best) {
            best = v;
            best_l = l;
          }
        }
        FrameEval e;
        e.lhs = a + b * best_l * best_l - 2.0 * m * best_l;
        e.rhs = (1.0 + best_l * best_l) * c;
        e.weights = WeightedIsoParams{best_l, 1.0};
        // Frames (e1, +-e2, e3, e4) and (e1, +-e2, e4, e3).
        e.hypothesis = std::min(a, b) - std::abs(m);
        return e;
      });
}

LemmaReport check_eA1(const SecondFundamentalForm& b, int samples,
                      std::uint64_t seed) {
  const int n = b.tangent_dim();
  require_n4("check_eA1", n);
  const MeanData md = mean_data(b);
  const double rhs = 0.5 * (md.norm_h2 / (n - 1) - md.norm_b2);
  return run_check("mean-pair", gauss_tensor(b), rhs, samples, seed,
                   [rhs](const FrameComponents& k) {
                     return FrameEval{mixed_pair(k), rhs, {}, {}};
                   });
}

LemmaReport check_eA2(const SecondFundamentalForm& b, int samples,
                      std::uint64_t seed) {
  const int n = b.tangent_dim();
  require_n4("check_eA2", n);
  const MeanData md = mean_data(b);
  const double rhs = md.norm_h2 / (n - 2) - md.norm_b2;
  return run_check("mean-quad", gauss_tensor(b), rhs, samples, seed,
                   [rhs](const FrameComponents& k) {
                     return FrameEval{quad_expr(k), rhs, {}, {}};
                   });
}

LemmaReport check_eps_bound(const SecondFundamentalForm& b, double eps,
                            int samples, std::uint64_t seed) {
  const int n = b.tangent_dim();
  require_n4("check_eps_bound", n);
  const double delta = delta_eps(eps, n);
  const CurvatureTensor rt = gauss_tensor(b);
  const double d = 0.5 * weak_ricci_min(rt, 2);
  const double rhs = (d - 0.5 * delta * mean_data(b).norm_h2) / eps;
  LemmaReport rep = run_check("eps-pair", rt, d, samples, seed,
                              [rhs](const FrameComponents& k) {
                                return FrameEval{mixed_pair(k), rhs, {}, {}};
                              });
  return rep;
}

LemmaReport check_quad_bound(const SecondFundamentalForm& b, int samples,
                             std::uint64_t seed) {
  const int n = b.tangent_dim();
  require_n4("check_quad_bound", n);
  const CurvatureTensor rt = gauss_tensor(b);
  const double d4 = weak_ricci_min(rt, 4);
  const double rhs = d4 - 0.5 * mean_data(b).norm_h2;
  return run_check("ricci4-quad", rt, 0.25 * d4, samples, seed,
                   [rhs](const FrameComponents& k) {
                     return FrameEval{quad_expr(k), rhs, {}, {}};
                   });
}

double eA1_gap_at(const SecondFundamentalForm& b, const Frame4& f) {
  const int n = b.tangent_dim();
  require_n4("eA1_gap_at", n);
  const MeanData md = mean_data(b);
  const FrameComponents k = frame_components(gauss_tensor(b), f.matrix());
  return mixed_pair(k) - 0.5 * (md.norm_h2 / (n - 1) - md.norm_b2);
}

double eA2_gap_at(const SecondFundamentalForm& b, const Frame4& f) {
  const int n = b.tangent_dim();
  require_n4("eA2_gap_at", n);
  const MeanData md = mean_data(b);
  const FrameComponents k = frame_components(gauss_tensor(b), f.matrix());
  return quad_expr(k) - (md.norm_h2 / (n - 2) - md.norm_b2);
}

SecondFundamentalForm eA1_equality_from(int n, const std::vector<double>& h11,
                                        const std::vector<double>& h22,
                                        const std::vector<double>& h12) {
  require_n4("eA1_equality_from", n);
  const auto p = static_cast<int>(h11.size());
  if (h22.size() != h11.size() || h12.size() != h11.size()) {
    throw std::invalid_argument("eA1_equality_from: parameter lengths differ");
  }
  SecondFundamentalForm b(n, p);
  for (int a = 0; a < p; ++a) {
    b.set(a, 0, 0, h11[a]);
    b.set(a, 1, 1, h22[a]);
    b.set(a, 0, 1, h12[a]);
    for (int i = 2; i < n; ++i) b.set(a, i, i, h11[a] + h22[a]);
  }
  return b;
}

SecondFundamentalForm build_eA1_equality(int n, int p, std::uint64_t seed) {
  if (p < 1) throw std::invalid_argument("build_eA1_equality: p must be >= 1");
  Rng rng(seed, kStreamEquality, 1);
  std::vector<double> h11(p), h22(p), h12(p);
  for (int a = 0; a < p; ++a) {
    h11[a] = rng.normal();
    h22[a] = rng.normal();
    h12[a] = rng.normal();
  }
  return eA1_equality_from(n, h11, h22, h12);
}

SecondFundamentalForm build_eA2_equality(int n, int p, std::uint64_t seed) {
  require_n4("build_eA2_equality", n);
  if (p < 1) throw std::invalid_argument("build_eA2_equality: p must be >= 1");
  Rng rng(seed, kStreamEquality, 2);
  SecondFundamentalForm b(n, p);
  for (int a = 0; a < p; ++a) {
    const double t = rng.normal();
    const double u = rng.normal();
    const double v = rng.normal();
    for (int i = 0; i < n; ++i) b.set(a, i, i, i < 4 ? t : 2.0 * t);
    b.set(a, 0, 2, u);
    b.set(a, 1, 3, u);
    b.set(a, 0, 3, v);
    b.set(a, 1, 2, -v);
  }
  return b;
}

}  // namespace curvgate
