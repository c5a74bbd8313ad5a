#include <doctest.h>

#include "curvgate/curvature.hpp"
#include "curvgate/lemmas.hpp"
#include "curvgate/random.hpp"
#include "oracles.hpp"

using namespace curvgate;

namespace {

// Independent evaluation of the mean-pair bound at a frame.
double mean_pair_gap(const SecondFundamentalForm& b, const Frame4& f) {
  const int n = b.tangent_dim();
  const CurvatureTensor g = gauss_tensor(b);
  double h2 = 0.0, b2 = 0.0;
  for (int a = 0; a < b.normal_dim(); ++a) {
    double tr = 0.0;
    for (int i = 0; i < n; ++i) {
      tr += b(a, i, i);
      for (int j = 0; j < n; ++j) b2 += b(a, i, j) * b(a, i, j);
    }
    h2 += tr * tr;
  }
  const double lhs = oracle::contract(g, f.e[0], f.e[1], f.e[0], f.e[1]) +
                     oracle::contract(g, f.e[0], f.e[1], f.e[2], f.e[3]);
  return lhs - (h2 / (n - 1) - b2) / 2;
}

SecondFundamentalForm umbilic(int n, double t) {
  SecondFundamentalForm b(n, 1);
  for (int i = 0; i < n; ++i) b.set(0, i, i, t);
  return b;
}

}  // namespace

TEST_CASE("delta(eps, n)") {
  for (int n = 4; n <= 64; ++n) CHECK(delta_eps(1.0, n) == 0.25);
  CHECK(delta_eps(0.5, 4) == doctest::Approx(1.0 / 3.0));
  CHECK(delta_eps(1.0, 6) == doctest::Approx(0.25));
  CHECK_THROWS_AS(delta_eps(0.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(delta_eps(1.5, 5), std::invalid_argument);
  CHECK_THROWS_AS(delta_eps(0.5, 3), std::invalid_argument);
}

TEST_CASE("frame sampling") {
  const std::vector<Frame4> f = sample_frames(6, 100, 3);
  CHECK(f.size() == 100);
  for (const auto& fr : f) CHECK(fr.orthonormality_defect() < 1e-12);
  // Coordinate frames come first.
  CHECK(f[0].e[0].cwiseAbs().maxCoeff() == 1.0);
  CHECK(sample_frames(6, 100, 3)[99].e[2] == f[99].e[2]);
}

TEST_CASE("amplification lemmas on constant curvature") {
  const double kappa = 0.8;
  const CurvatureTensor r = constant_curvature(6, kappa);
  const LemmaReport a = check_amplify(r, kappa, 500, 1);
  CHECK(a.pass);
  CHECK(std::abs(a.gap) < 1e-12);
  // Lowering c by one leaves at least (1 + l^2)(1 + m^2) >= 1 of slack.
  const LemmaReport lowered = check_amplify(r, kappa - 1.0, 500, 1);
  CHECK(lowered.gap >= 1.0 - 1e-12);

  const LemmaReport s = check_amplify_single(r, 2 * kappa, 500, 1);
  CHECK(s.pass);
  CHECK(std::abs(s.gap) < 1e-12);

  // A constant above the true hypothesis minimum is rejected.
  const LemmaReport bad = check_amplify(r, kappa + 0.5, 200, 1);
  CHECK_FALSE(bad.hypothesis_ok);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("amplification lemmas on random tensors") {
  Rng rng(31);
  SearchBudget budget;
  budget.restarts = 16;
  for (int n : {5, 6}) {
    const CurvatureTensor g = gauss_tensor(random_sff(n, 3, rng));
    const double c = min_pair_expr(g, PairExpr::kMixedPair, budget, 2).value;
    const LemmaReport a = check_amplify(g, c, 10000, 4);
    CHECK(a.hypothesis_ok);
    CHECK(a.pass);
    CHECK(a.gap >= -1e-9);
    const double c1 = min_pair_expr(g, PairExpr::kSingleWeight, budget, 2).value;
    const LemmaReport s = check_amplify_single(g, c1, 10000, 4);
    CHECK(s.pass);
  }
}

TEST_CASE("mean-curvature bounds") {
  CHECK(std::abs(check_eA1(SecondFundamentalForm(5, 2), 100, 1).gap) < 1e-14);
  CHECK(std::abs(check_eA2(SecondFundamentalForm(5, 2), 100, 1).gap) < 1e-14);

  Rng rng(5);
  const SecondFundamentalForm b = random_sff(6, 3, rng);
  const LemmaReport r1 = check_eA1(b, 10000, 6);
  CHECK(r1.pass);
  CHECK(r1.gap == doctest::Approx(mean_pair_gap(b, r1.witness)).epsilon(1e-9));
  CHECK(check_eA2(random_sff(7, 2, rng), 10000, 6).pass);

  const Frame4 f = coordinate_frame(4, 0, 1, 2, 3);
  const SecondFundamentalForm eq = eA1_equality_from(4, {1.0}, {0.0}, {0.0});
  CHECK(std::abs(eA1_gap_at(eq, f)) < 1e-12);
  CHECK(std::abs(mean_pair_gap(eq, f)) < 1e-12);
  CHECK(mean_data(eA1_equality_from(5, {0.0}, {0.0}, {0.0})).norm_b2 == 0.0);
  for (int n = 4; n <= 8; ++n) {
    const SecondFundamentalForm e1 = build_eA1_equality(n, 2, n);
    CHECK(std::abs(eA1_gap_at(e1, coordinate_frame(n, 0, 1, 2, 3))) < 1e-10);
    CHECK(std::abs(mean_pair_gap(e1, coordinate_frame(n, 0, 1, 2, 3))) < 1e-10);
    CHECK(std::abs(eA2_gap_at(build_eA2_equality(n, 3, n), coordinate_frame(n, 0, 1, 2, 3))) < 1e-10);
  }
}

TEST_CASE("Ricci-based bounds on umbilic forms") {
  const double t = 0.7;
  for (int n : {4, 5, 8}) {
    const SecondFundamentalForm b = umbilic(n, t);
    for (int e = 1; e <= 10; ++e) {
      const double eps = e / 10.0;
      const double d = delta_eps(eps, n);
      const double rhs = ((n - 1) * t * t - d * n * n * t * t / 2) / eps;
      const LemmaReport rep = check_eps_bound(b, eps, 200, 1);
      CHECK(rep.gap == doctest::Approx(t * t - rhs).epsilon(1e-10));
      CHECK(rep.pass);
    }
    const LemmaReport q = check_quad_bound(b, 200, 1);
    CHECK(q.gap == doctest::Approx(t * t * (n - 4) * (n - 4) / 2.0).epsilon(1e-10));
  }
  CHECK(std::abs(check_quad_bound(SecondFundamentalForm(6, 2), 50, 1).gap) < 1e-14);
  CHECK(std::abs(check_eps_bound(SecondFundamentalForm(6, 2), 0.5, 50, 1).gap) < 1e-14);

  Rng rng(8);
  for (double eps : {0.25, 0.5, 1.0}) CHECK(check_eps_bound(random_sff(5, 3, rng), eps, 10000, 2).pass);
  CHECK(check_quad_bound(random_sff(6, 4, rng), 10000, 2).pass);
}

TEST_CASE("gaps are rotation equivariant") {
  Rng rng(13);
  oracle::Sampler s(13);
  for (int t = 0; t < 100; ++t) {
    const int n = 4 + t % 4;
    const SecondFundamentalForm b = random_sff(n, 2, rng);
    const Mat q = random_orthogonal(n, rng);
    Frame4 f;
    f.e = s.frame(n);
    Frame4 g;
    for (int a = 0; a < 4; ++a) g.e[a] = q * f.e[a];
    CHECK(eA1_gap_at(b.rotated(q), g) == doctest::Approx(eA1_gap_at(b, f)).epsilon(1e-9));
    CHECK(eA2_gap_at(b.rotated(q), g) == doctest::Approx(eA2_gap_at(b, f)).epsilon(1e-9));
  }
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(check_eA1(SecondFundamentalForm(3, 1), 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_amplify(constant_curvature(5, 1), 1, 0, 1), std::invalid_argument);
}
