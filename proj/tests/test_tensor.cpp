#include <doctest.h>

#include "curvgate/curvature.hpp"
#include "curvgate/random.hpp"
#include "oracles.hpp"

using namespace curvgate;

TEST_CASE("contraction and pullback agree with naive loops") {
  oracle::Sampler s(11);
  for (int n : {2, 5, 7}) {
    const CurvatureTensor r = s.curvature(n);
    const Vec x = s.gaussian(n), y = s.gaussian(n), z = s.gaussian(n), w = s.gaussian(n);
    CHECK(r.contract(x, y, z, w) == doctest::Approx(oracle::contract(r, x, y, z, w)).epsilon(1e-12));
    const Vec free = r.contract_first_free(y, z, w);
    CHECK(free.dot(x) == doctest::Approx(oracle::contract(r, x, y, z, w)).epsilon(1e-12));

    Mat basis(n, 3);
    for (int c = 0; c < 3; ++c) basis.col(c) = s.gaussian(n);
    const CurvatureTensor pb = r.pullback(basis);
    CHECK(pb.dim() == 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(pb(a, b, b, a) == doctest::Approx(oracle::contract(r, basis.col(a), basis.col(b),
                                                                 basis.col(b), basis.col(a))));
  }
  CHECK_THROWS_AS(CurvatureTensor(3).pullback(Mat::Identity(4, 2)), std::invalid_argument);
}

TEST_CASE("symmetry validation") {
  CHECK(validate_symmetries(CurvatureTensor(4)).pass);
  CHECK(validate_symmetries(CurvatureTensor(4)).max_violation() == 0.0);
  CHECK(validate_symmetries(constant_curvature(5, -2.5)).pass);
  oracle::Sampler s(3);
  CHECK(validate_symmetries(s.curvature(6)).max_violation() < 1e-12);

  CurvatureTensor r = constant_curvature(4, 1.0);
  r(0, 1, 0, 1) += 1e-3;  // R_1212 moved, R_2112 left alone
  const SymmetryReport rep = validate_symmetries(r, 1e-6);
  CHECK_FALSE(rep.pass);
  CHECK(rep.antisym_first == doctest::Approx(1e-3));
  CHECK(rep.antisym_second == doctest::Approx(1e-3));
}

TEST_CASE("gauss tensor") {
  CHECK(gauss_tensor(SecondFundamentalForm(4, 2)).max_abs() == 0.0);

  SecondFundamentalForm id(2, 1);
  id.set(0, 0, 0, 1.0);
  id.set(0, 1, 1, 1.0);
  CHECK(gauss_tensor(id)(0, 1, 0, 1) == 1.0);

  Rng rng(5);
  const SecondFundamentalForm b = random_sff(5, 3, rng);
  const CurvatureTensor g = gauss_tensor(b);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 5; ++l) {
          double v = 0.0;
          for (int a = 0; a < 3; ++a) v += b(a, i, k) * b(a, j, l) - b(a, i, l) * b(a, j, k);
          worst = std::max(worst, std::abs(v - g(i, j, k, l)));
        }
  CHECK(worst < 1e-14);
  CHECK(validate_symmetries(g).pass);
}

TEST_CASE("difference tensor") {
  Rng rng(8);
  const CurvatureTensor k = random_curvature(5, rng);
  CHECK(difference_tensor(k, k).max_abs() == 0.0);
  const SecondFundamentalForm b = random_sff(5, 2, rng);
  CHECK((difference_tensor(k + gauss_tensor(b), k) - gauss_tensor(b)).max_abs() < 1e-14);
  CHECK((difference_tensor(constant_curvature(4, 3.0), constant_curvature(4, 1.0)) -
         constant_curvature(4, 2.0)).max_abs() == 0.0);
  CHECK_THROWS_AS(difference_tensor(CurvatureTensor(3), CurvatureTensor(4)), std::invalid_argument);
}

TEST_CASE("ricci and scalar") {
  const RicciData rd = ricci(constant_curvature(4, 0.7));
  CHECK((rd.ric - 3 * 0.7 * Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(rd.scalar == doctest::Approx(12 * 0.7));
  CHECK(ricci(CurvatureTensor(3)).scalar == 0.0);

  oracle::Sampler s(21);
  const CurvatureTensor r = s.curvature(6);
  CHECK((ricci(r).ric - oracle::ricci(r)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ricci(r).scalar == doctest::Approx(oracle::scalar(r)));
}

TEST_CASE("scalar Gauss identity") {
  oracle::Sampler s(4);
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 6;
    const CurvatureTensor k = s.curvature(n);
    const SecondFundamentalForm b = random_sff(n, 1 + t % 3, rng);
    double h2 = 0.0, b2 = 0.0;
    for (int a = 0; a < b.normal_dim(); ++a) {
      double tr = 0.0;
      for (int i = 0; i < n; ++i) {
        tr += b(a, i, i);
        for (int j = 0; j < n; ++j) b2 += b(a, i, j) * b(a, i, j);
      }
      h2 += tr * tr;
    }
    CHECK(std::abs(oracle::scalar(k + gauss_tensor(b)) - oracle::scalar(k) - h2 + b2) < 1e-10);
    const MeanData md = mean_data(b);
    CHECK(md.norm_h2 == doctest::Approx(h2));
    CHECK(md.norm_b2 == doctest::Approx(b2));
  }
}

TEST_CASE("weak Ricci minimum") {
  CHECK(weak_ricci_min(constant_curvature(5, 1.3), 2) == doctest::Approx(8 * 1.3));

  CurvatureTensor diag(4);
  // Sectional values chosen so that Ric = diag(1, 2, 3, 4).
  const double k[4][4] = {{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 0, 2}, {1, 1, 2, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) {
        diag(i, j, i, j) = k[i][j];
        diag(i, j, j, i) = -k[i][j];
      }
  const RicciData rd = ricci(diag);
  CHECK(rd.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(rd.eigenvalues[3] == doctest::Approx(4.0));
  CHECK(weak_ricci_min(rd, 4) == doctest::Approx(10.0));
  CHECK_THROWS_AS(weak_ricci_min(rd, 0), std::invalid_argument);
  CHECK_THROWS_AS(weak_ricci_min(rd, 5), std::invalid_argument);

  // Sampled 2-frames give upper bounds that approach the eigenvalue formula.
  oracle::Sampler s(9);
  const CurvatureTensor r = s.curvature(6);
  const Mat ric = oracle::ricci(r);
  const double exact = weak_ricci_min(r, 2);
  double best = INFINITY;
  for (int t = 0; t < 100000; ++t) {
    const auto f = s.frame(6);
    best = std::min(best, f[0].dot(ric * f[0]) + f[1].dot(ric * f[1]));
  }
  CHECK(best >= exact - 1e-9);
  CHECK(best - exact < 0.05 * (1.0 + std::abs(exact)));
  // The eigenvector pair attains it.
  const Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (ric + ric.transpose()));
  const double at = es.eigenvectors().col(0).dot(ric * es.eigenvectors().col(0)) +
                    es.eigenvectors().col(1).dot(ric * es.eigenvectors().col(1));
  CHECK(at == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("traceless split") {
  SecondFundamentalForm b(4, 1);
  for (int i = 0; i < 4; ++i) b.set(0, i, i, 2.5);
  const TracelessSplit s = traceless_split(b);
  CHECK(s.trace_part[0] == doctest::Approx(2.5));
  CHECK(mean_data(s.traceless).norm_b2 < 1e-28);

  Rng rng(2);
  SecondFundamentalForm t = random_sff(5, 2, rng);
  const TracelessSplit ts = traceless_split(traceless_split(t).traceless);
  CHECK(ts.trace_part.cwiseAbs().maxCoeff() < 1e-14);

  const SecondFundamentalForm r = random_sff(4, 2, rng);
  const TracelessSplit rs = traceless_split(r);
  const MeanData md = mean_data(r);
  // |B|^2 = |traceless|^2 + |H|^2 / n
  CHECK(md.norm_b2 == doctest::Approx(mean_data(rs.traceless).norm_b2 + md.norm_h2 / 4));
  const SecondFundamentalForm back = rs.reassemble();
  for (int a = 0; a < 2; ++a) CHECK((back.component(a) - r.component(a)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("second fundamental form construction") {
  std::vector<double> v = {1, 2, 2, 3};
  CHECK(SecondFundamentalForm::from_components(2, 1, v)(0, 0, 1) == 2.0);
  v[1] = 2.5;
  CHECK_THROWS_AS(SecondFundamentalForm::from_components(2, 1, v), std::invalid_argument);
  CHECK_THROWS_AS(SecondFundamentalForm::from_components(2, 2, v), std::invalid_argument);
  Rng rng(1);
  const SecondFundamentalForm b = random_sff(4, 2, rng);
  const Mat q = random_orthogonal(4, rng);
  // Rotating the form and pulling the Gauss tensor back commute.
  const CurvatureTensor lhs = gauss_tensor(b.rotated(q));
  const CurvatureTensor rhs = gauss_tensor(b).pullback(q.transpose());
  CHECK((lhs - rhs).max_abs() < 1e-12);
}
