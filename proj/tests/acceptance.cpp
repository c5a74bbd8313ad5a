// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

#include "curvgate/cli.hpp"
#include "curvgate/curvature.hpp"
#include "curvgate/models.hpp"
#include "curvgate/suites.hpp"
#include "oracles.hpp"

using namespace curvgate;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome polarization() {
  const auto t0 = std::chrono::steady_clock::now();
  oracle::Sampler s(kSeed);
  double general = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 7;
    const CurvatureTensor r = s.curvature(n);
    const Vec x = s.unit(n), y = s.unit(n), z = s.unit(n), w = s.unit(n);
    general = std::max(general, std::abs(polarize_general(r, x, y, z, w) -
                                         oracle::contract(r, x, y, z, w)));
  }
  double sec = 0.0, full = 0.0;
  Rng rng(kSeed, 1, 0);
  for (CorpusKind kind : {CorpusKind::kSpaceForm, CorpusKind::kConjugate,
                          CorpusKind::kDirectSum, CorpusKind::kCombination}) {
    for (int t = 0; t < 1000; ++t) {
      const int m = 1 + t % 4;
      const KahlerSample ks = random_kahler(kind, m, rng);
      const int n = 2 * m;
      const Vec x = s.unit(n), y = s.unit(n), z = s.unit(n), w = s.unit(n);
      sec = std::max(sec, std::abs(sectional_from_holomorphic(ks.kc, x, y) / 32.0 -
                                   oracle::contract(ks.kc.k, x, y, x, y)));
      full = std::max(full, std::abs(full_from_holomorphic(ks.kc, x, y, z, w) / 256.0 -
                                     oracle::contract(ks.kc.k, x, y, z, w)));
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {general <= 1e-9 && sec <= 1e-9 && full <= 1e-9 && secs < 30.0,
          fmt("general %.2e, sectional %.2e, full %.2e", general, sec, full) +
              fmt(", %.1f s", secs)};
}

Outcome gauss_scalar() {
  oracle::Sampler s(kSeed + 1);
  Rng rng(kSeed, 2, 0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 7, p = 1 + t % 4;
    const CurvatureTensor k = s.curvature(n);
    const SecondFundamentalForm b = random_sff(n, p, rng);
    double h2 = 0.0, b2 = 0.0;
    for (int a = 0; a < p; ++a) {
      double tr = 0.0;
      for (int i = 0; i < n; ++i) {
        tr += b(a, i, i);
        for (int j = 0; j < n; ++j) b2 += b(a, i, j) * b(a, i, j);
      }
      h2 += tr * tr;
    }
    const double lhs = oracle::scalar(k + gauss_tensor(b)) - oracle::scalar(k);
    worst = std::max(worst, std::abs(lhs - h2 + b2));
  }
  return {worst <= 1e-10, fmt("max residual %.2e", worst)};
}

Outcome lemma_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CheckRecord> recs = suite_lemmas({kSeed, 10000, 1e-9});
  int passed = 0;
  double gap = INFINITY;
  std::string failed;
  for (const auto& r : recs) {
    if (r.pass) ++passed;
    else failed += " " + r.id;
    if (r.id.find("equality") == std::string::npos) gap = std::min(gap, r.gap);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {passed == static_cast<int>(recs.size()) && secs < 300.0,
          std::to_string(passed) + "/" + std::to_string(recs.size()) + " checks" +
              fmt(", min gap %.2e, %.1f s", gap, secs) + failed};
}

Outcome delta_one() {
  int bad = 0;
  for (int n = 4; n <= 64; ++n)
    if (delta_eps(1.0, n) != 0.25) ++bad;
  return {bad == 0, std::to_string(bad) + " of 61 dimensions differ from 1/4"};
}

Outcome cp_sharpness() {
  double worst = 0.0;
  for (int n : {4, 6, 8}) {
    const ModelInstance mi = cp_totally_geodesic(n, n);
    // Invariants recomputed from the intrinsic tensor by the oracle.
    const Eigen::SelfAdjointEigenSolver<Mat> es(oracle::ricci(mi.intrinsic));
    PointData p;
    p.n = n;
    p.scalar = oracle::scalar(mi.intrinsic);
    p.ric2min = es.eigenvalues()[0] + es.eigenvalues()[1];
    p.ric4min = es.eigenvalues().head(4).sum();
    p.normH2 = 0.0;
    const TheoremVerdict v = classify({p}, AmbientSpec::space_form(4.0, n), 1.0);
    for (Family f : {Family::kScalarDiffeo, Family::kRicci2Diffeo, Family::kRicci4Homeo}) {
      const VerdictEntry* e = v.find({f, Variant::kGeneral});
      worst = e ? std::max(worst, std::abs(e->margin_min)) : INFINITY;
    }
  }
  return {worst <= 1e-10, fmt("max |margin| %.2e", worst)};
}

Outcome clifford_sharpness() {
  double worst = 0.0;
  for (int n = 4; n <= 8; ++n)
    for (double mu : {0.1, 0.5, 0.9})
      for (int p : {1, 2}) {
        const ModelInstance mi = clifford_product(n, p, mu);
        // Intrinsic curvature through the Gauss equation of the embedding.
        const double r_m = oracle::scalar(intrinsic_tensor(mi.ambient_tensor, mi.embedding));
        double h2 = 0.0;
        for (int a = 0; a < mi.embedding.b.normal_dim(); ++a) {
          double tr = 0.0;
          for (int i = 0; i < n; ++i) tr += mi.embedding.b(a, i, i);
          h2 += tr * tr;
        }
        const double nn = n;
        const double got = p == 1 ? r_m - (nn - 2) / (nn - 1) * h2 - (nn - 2) * (nn + 1)
                                  : r_m - (nn - 3) / (nn - 2) * h2 - (nn * nn - nn - 4);
        const double want = p == 1 ? -(nn - 2) / (nn - 1) * mu * mu : -2 * (nn - 4) / (nn - 2) * mu * mu;
        worst = std::max(worst, std::abs(got - want));
      }
  return {worst <= 1e-10, fmt("max deviation %.2e over 30 instances", worst)};
}

Outcome frame_search() {
  const auto t0 = std::chrono::steady_clock::now();
  const SearchBudget budget;
  double constant = 0.0, space = 0.0, agree = 0.0;
  for (int n : {4, 5, 6, 8})
    for (double kappa : {1.0, -0.5, 2.5}) {
      const double v = min_isotropic(constant_curvature(n, kappa), false, budget, kSeed).value;
      constant = std::max(constant, std::abs(v - 4 * kappa));
    }
  for (int m : {2, 3}) {
    const CurvatureTensor r = space_form(m, 4.0).k;
    const double v = min_isotropic(r, false, budget, kSeed).value;
    const double brute = oracle::polished_isotropic(r, 100000, 8, kSeed + m);
    space = std::max(space, std::abs(v));
    agree = std::max(agree, std::abs(v - brute));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {constant <= 1e-6 && space <= 1e-6 && agree <= 1e-6 && secs < 120.0,
          fmt("constant %.2e, space form %.2e, vs brute force %.2e", constant, space, agree) +
              fmt(", %.1f s", secs)};
}

Outcome chains() {
  const std::vector<CheckRecord> recs = suite_chains({kSeed, 10000, 1e-9});
  int passed = 0;
  double gap = INFINITY;
  std::string failed;
  for (const auto& r : recs) {
    if (r.pass) ++passed;
    else failed += " " + r.id;
    gap = std::min(gap, r.gap);
  }
  return {passed == static_cast<int>(recs.size()),
          std::to_string(passed) + "/" + std::to_string(recs.size()) + " chains" +
              fmt(", min gap %.2e", gap) + failed};
}

Outcome determinism() {
  const std::vector<std::string> args = {"verify", "all", "--seed", "11", "--format", "json"};
  const auto run = [&](const char* threads, int& code) {
    setenv("CURVGATE_THREADS", threads, 1);
    std::ostringstream out, err;
    code = run_cli(args, out, err);
    return out.str();
  };
  int c1 = 0, c2 = 0, c3 = 0;
  const std::string a = run("1", c1), b = run("1", c2), c = run("4", c3);
  unsetenv("CURVGATE_THREADS");
  const bool ok = c1 == 0 && c2 == 0 && c3 == 0 && a == b && a == c && !a.empty();
  return {ok, std::to_string(a.size()) + " bytes, repeat " + (a == b ? "identical" : "differs") +
                  ", threads 1 vs 4 " + (a == c ? "identical" : "differs") +
                  ", exit " + std::to_string(c1)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"polarization identities", polarization},
      {"gauss scalar identity", gauss_scalar},
      {"frame lemma suite", lemma_suite},
      {"delta(1, n) = 1/4", delta_one},
      {"CP^{n/2} sharpness", cp_sharpness},
      {"Clifford product sharpness", clifford_sharpness},
      {"frame optimization", frame_search},
      {"isotropic chain cross-checks", chains},
      {"report determinism", determinism},
  };
  int failures = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
