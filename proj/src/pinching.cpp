#include "curvgate/pinching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "curvgate/curvature.hpp"
#include "curvgate/parallel.hpp"

namespace curvgate {

namespace {

constexpr std::uint64_t kStreamChain = 0x3301;

struct Coeffs {
  double kmax = 0.0;  // coefficient of kmax
  double kmin = 0.0;  // coefficient of kmin (subtracted)
};

// Threshold = a * kmax - b * kmin + h * |H|^2.
Coeffs general_coeffs(Family f, SignCase s, int n, double eps) {
  const double nn = n;
  switch (f) {
    case Family::kScalarDiffeo:
      switch (s) {
        case SignCase::kNonneg: return {(3 * nn * nn + 8) / 4, (nn * nn - nn + 4) / 2};
        case SignCase::kMixed: return {(3 * nn * nn + 8) / 4, (nn * nn - nn + 8) / 2};
        case SignCase::kNonpos: return {3 * (nn * nn - nn + 2) / 4, (nn * nn - nn + 8) / 2};
      }
      break;
    case Family::kRicci2Diffeo:
      switch (s) {
        case SignCase::kNonneg: return {(3 * nn + 4 * eps) / 2, nn - 1 + 2 * eps};
        case SignCase::kMixed: return {(3 * nn + 4 * eps) / 2, nn - 1 + 4 * eps};
        case SignCase::kNonpos: return {3 * (nn - 1 + eps) / 2, nn - 1 + 4 * eps};
      }
      break;
    case Family::kScalarHomeo:
      switch (s) {
        case SignCase::kNonneg: return {(3 * nn * nn + 16) / 4, (nn * nn - nn + 8) / 2};
        case SignCase::kMixed: return {(3 * nn * nn + 16) / 4, (nn * nn - nn + 16) / 2};
        case SignCase::kNonpos: return {3 * (nn * nn - nn + 4) / 4, (nn * nn - nn + 16) / 2};
      }
      break;
    case Family::kRicci4Homeo:
      switch (s) {
        case SignCase::kNonneg: return {3 * nn + 4, 2 * (nn + 1)};
        case SignCase::kMixed: return {3 * nn + 4, 2 * (nn + 3)};
        case SignCase::kNonpos: return {3 * nn, 2 * (nn + 3)};
      }
      break;
  }
  return {};
}

Coeffs totally_real_coeffs(Family f, int n, double eps) {
  const double nn = n;
  switch (f) {
    case Family::kScalarDiffeo: return {3 * (nn * nn - nn + 2) / 4, (nn * nn - nn + 4) / 2};
    case Family::kRicci2Diffeo: return {3 * (nn - 1 + eps) / 2, nn - 1 + 2 * eps};
    case Family::kScalarHomeo: return {3 * (nn * nn - nn + 4) / 4, (nn * nn - nn + 8) / 2};
    case Family::kRicci4Homeo: return {3 * nn, 2 * (nn + 1)};
  }
  return {};
}

// Coefficient of c in the collapsed space-form formulas.
double space_form_coeff(Family f, int n, double eps) {
  const double nn = n;
  switch (f) {
    case Family::kScalarDiffeo: return (nn - 2) * (nn + 1) / 4;
    case Family::kRicci2Diffeo: return (nn - 1 - eps) / 2;
    case Family::kScalarHomeo: return (nn * nn - nn - 4) / 4;
    case Family::kRicci4Homeo: return nn - 2;
  }
  return 0.0;
}

double h_coeff(Family f, int n, double eps) {
  switch (f) {
    case Family::kScalarDiffeo: return (n - 2.0) / (n - 1.0);
    case Family::kRicci2Diffeo: return delta_eps(eps, n);
    case Family::kScalarHomeo: return (n - 3.0) / (n - 2.0);
    case Family::kRicci4Homeo: return 0.5;
  }
  return 0.0;
}

}  // namespace

AmbientSpec AmbientSpec::hol_pinch(const HolPinch& p, int m) {
  AmbientSpec a;
  a.kind = AmbientKind::kHolPinch;
  a.pinch = p;
  a.m = m;
  return a;
}

AmbientSpec AmbientSpec::space_form(double c, int m) {
  AmbientSpec a;
  a.kind = AmbientKind::kSpaceForm;
  a.pinch = HolPinch(c, c);
  a.c = c;
  a.m = m;
  return a;
}

PointData point_from(const CurvatureTensor& intrinsic,
                     const SecondFundamentalForm& b, bool totally_real) {
  const RicciData rd = ricci(intrinsic);
  PointData p;
  p.n = intrinsic.dim();
  p.scalar = rd.scalar;
  p.ric2min = weak_ricci_min(rd, std::min(2, p.n));
  if (p.n >= 4) p.ric4min = weak_ricci_min(rd, 4);
  p.normH2 = mean_data(b).norm_h2;
  p.totally_real = totally_real;
  return p;
}

const char* to_string(Family f) {
  switch (f) {
    case Family::kScalarDiffeo: return "scalar-diffeo";
    case Family::kRicci2Diffeo: return "ricci2-diffeo";
    case Family::kScalarHomeo: return "scalar-homeo";
    case Family::kRicci4Homeo: return "ricci4-homeo";
  }
  return "unknown";
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::kGeneral: return "general";
    case Variant::kTotallyReal: return "totally-real";
    case Variant::kSpaceForm: return "space-form";
  }
  return "unknown";
}

std::string TheoremId::name() const {
  return std::string(to_string(family)) + "/" + to_string(variant);
}

TheoremId TheoremId::parse(const std::string& s) {
  for (Family f : {Family::kScalarDiffeo, Family::kRicci2Diffeo,
                   Family::kScalarHomeo, Family::kRicci4Homeo})
    for (Variant v : {Variant::kGeneral, Variant::kTotallyReal, Variant::kSpaceForm}) {
      const TheoremId id{f, v};
      if (id.name() == s) return id;
    }
  throw std::invalid_argument("unknown theorem id '" + s + "'");
}

int min_dimension(Family f) { return f == Family::kScalarDiffeo ? 2 : 4; }

double threshold(TheoremId id, const AmbientSpec& ambient, int n,
                 double normH2, std::optional<double> eps) {
  if (n < min_dimension(id.family)) {
    throw std::invalid_argument(id.name() + ": needs n >= " +
                                std::to_string(min_dimension(id.family)) +
                                ", got " + std::to_string(n));
  }
  double e = 1.0;
  if (id.family == Family::kRicci2Diffeo) {
    if (!eps) throw std::invalid_argument(id.name() + ": eps is required");
    e = *eps;
  }
  const double h = h_coeff(id.family, n, e) * normH2;  // validates eps
  const HolPinch& p = ambient.pinch;
  switch (id.variant) {
    case Variant::kGeneral: {
      const Coeffs k = general_coeffs(id.family, sign_case_of(p), n, e);
      return k.kmax * p.kmax - k.kmin * p.kmin + h;
    }
    case Variant::kTotallyReal: {
      const Coeffs k = totally_real_coeffs(id.family, n, e);
      return k.kmax * p.kmax - k.kmin * p.kmin + h;
    }
    case Variant::kSpaceForm:
      if (ambient.kind != AmbientKind::kSpaceForm) {
        throw std::invalid_argument(id.name() + ": ambient is not a space form");
      }
      return space_form_coeff(id.family, n, e) * ambient.c + h;
  }
  return 0.0;
}

bool requires_strict(TheoremId id, const AmbientSpec& ambient) {
  if (id.family != Family::kScalarDiffeo) return true;
  const HolPinch& p = ambient.pinch;
  switch (id.variant) {
    case Variant::kGeneral: return p.kmax == p.kmin;
    case Variant::kTotallyReal: return p.kmax == 0.0 && p.kmin == 0.0;
    case Variant::kSpaceForm: return ambient.c == 0.0;
  }
  return true;
}

double pinching_lhs(Family f, const PointData& p) {
  switch (f) {
    case Family::kScalarDiffeo:
    case Family::kScalarHomeo:
      return p.scalar;
    case Family::kRicci2Diffeo:
      return p.ric2min;
    case Family::kRicci4Homeo:
      if (!p.ric4min) throw std::invalid_argument("point is missing ric4min");
      return *p.ric4min;
  }
  return 0.0;
}

const char* to_string(Satisfied s) {
  switch (s) {
    case Satisfied::kYesStrictSomewhere: return "yes_strict_somewhere";
    case Satisfied::kBoundary: return "boundary";
    case Satisfied::kViolated: return "violated";
  }
  return "unknown";
}

std::string conclusion_label(Family f) {
  switch (f) {
    case Family::kScalarDiffeo:
    case Family::kRicci2Diffeo:
      return "diffeomorphic to S^n";
    case Family::kScalarHomeo:
    case Family::kRicci4Homeo:
      return "homeomorphic to S^n";
  }
  return "";
}

const VerdictEntry* TheoremVerdict::find(const TheoremId& id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

TheoremVerdict classify(const std::vector<PointData>& points,
                        const AmbientSpec& ambient, std::optional<double> eps,
                        double strict_tol, Metadata metadata) {
  if (points.empty()) throw std::invalid_argument("classify: no points");
  const int n = points.front().n;
  bool all_real = true;
  bool all_ric4 = true;
  for (const auto& p : points) {
    if (p.n != n) {
      throw std::invalid_argument("classify: mixed dimensions " +
                                  std::to_string(n) + " and " + std::to_string(p.n));
    }
    all_real = all_real && p.totally_real;
    all_ric4 = all_ric4 && p.ric4min.has_value();
  }
  if (n < 2) throw std::invalid_argument("classify: n must be >= 2");

  std::vector<Variant> variants = {Variant::kGeneral};
  if (all_real) variants.push_back(Variant::kTotallyReal);
  if (all_real && ambient.kind == AmbientKind::kSpaceForm) {
    variants.push_back(Variant::kSpaceForm);
  }

  TheoremVerdict out;
  out.metadata = metadata;
  out.points = static_cast<int>(points.size());
  for (Family f : {Family::kScalarDiffeo, Family::kRicci2Diffeo,
                   Family::kScalarHomeo, Family::kRicci4Homeo}) {
    if (n < min_dimension(f)) continue;
    if (f == Family::kRicci2Diffeo && !eps) continue;
    if (f == Family::kRicci4Homeo && !all_ric4) continue;
    for (Variant v : variants) {
      VerdictEntry e;
      e.id = {f, v};
      e.margin_min = std::numeric_limits<double>::infinity();
      e.margin_max = -std::numeric_limits<double>::infinity();
      for (const auto& p : points) {
        const double margin = pinching_lhs(f, p) - threshold(e.id, ambient, n, p.normH2, eps);
        e.margins.push_back(margin);
        e.margin_min = std::min(e.margin_min, margin);
        e.margin_max = std::max(e.margin_max, margin);
      }
      if (e.margin_min >= -strict_tol && e.margin_max > strict_tol) {
        e.satisfied = Satisfied::kYesStrictSomewhere;
      } else if (e.margin_min >= -strict_tol && e.margin_max <= strict_tol) {
        e.satisfied = Satisfied::kBoundary;
      } else {
        e.satisfied = Satisfied::kViolated;
      }
      e.strict_required = requires_strict(e.id, ambient);
      e.hypothesis_met = e.satisfied == Satisfied::kYesStrictSomewhere ||
                         (e.satisfied == Satisfied::kBoundary && !e.strict_required);
      if (e.hypothesis_met) e.conclusion_label = conclusion_label(f);
      out.entries.push_back(std::move(e));
    }
  }
  return out;
}

CurvatureTensor intrinsic_tensor(const KahlerCurvature& ambient,
                                 const Embedding& emb) {
  const int n = static_cast<int>(emb.tangent.cols());
  if (emb.tangent.rows() != ambient.dim()) {
    throw std::invalid_argument("embedding: tangent basis has " +
                                std::to_string(emb.tangent.rows()) +
                                " rows, ambient dimension is " +
                                std::to_string(ambient.dim()));
  }
  if (emb.b.tangent_dim() != n || emb.b.normal_dim() != ambient.dim() - n) {
    throw std::invalid_argument(
        "embedding: second fundamental form must be " + std::to_string(n) +
        " tangent by " + std::to_string(ambient.dim() - n) + " normal");
  }
  const double orth =
      (emb.tangent.transpose() * emb.tangent - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (orth > kFrameTol) {
    throw std::invalid_argument("embedding: tangent basis is not orthonormal");
  }
  return ambient.k.pullback(emb.tangent) + gauss_tensor(emb.b);
}

double totally_real_defect(const KahlerCurvature& ambient, const Mat& tangent) {
  if (tangent.cols() == 0) return 0.0;
  return (tangent.transpose() * ambient.j.j * tangent).cwiseAbs().maxCoeff();
}

LemmaReport crosscheck_isotropic_chain(const KahlerCurvature& ambient,
                                       const AmbientSpec& spec,
                                       const Embedding& emb, TheoremId id,
                                       int samples, std::uint64_t seed,
                                       std::optional<double> eps) {
  const CurvatureTensor r = intrinsic_tensor(ambient, emb);
  const int n = r.dim();
  if (n < 4) {
    throw std::invalid_argument("crosscheck: chains need n >= 4, got " +
                                std::to_string(n));
  }
  if (id.variant != Variant::kGeneral && totally_real_defect(ambient, emb.tangent) > 1e-9) {
    throw std::invalid_argument("crosscheck: " + id.name() +
                                " needs a totally real tangent space");
  }
  const PointData p = point_from(r, emb.b, id.variant != Variant::kGeneral);
  const double thr = threshold(id, spec, n, p.normH2, eps);
  const double excess = pinching_lhs(id.family, p) - thr;
  const std::vector<Frame4> frames = sample_frames(n, samples, derive_seed(seed, kStreamChain, 0));

  struct Eval {
    double lhs, rhs;
    WeightedIsoParams w;
  };
  std::vector<Eval> evals(frames.size());
  const bool weighted = id.family == Family::kScalarDiffeo || id.family == Family::kRicci2Diffeo;
  // weighted >= (1 + l^2)(1 + m^2) q, with q = excess / 2 or excess / (2 eps).
  const double q = id.family == Family::kScalarDiffeo    ? 0.5 * excess
                   : id.family == Family::kRicci2Diffeo ? 0.5 * excess / eps.value_or(1.0)
                                                        : 0.0;
  parallel_for(frames.size(), [&](std::size_t i) {
    const FrameComponents k = frame_components(r, frames[i].matrix());
    const WeightedCoeffs w = weighted_coeffs(k);
    if (weighted) {
      const WeightMin wm = minimize_weights({w.a - q, w.b - q, w.c - q, w.d - q, w.e});
      const double l = wm.at.lambda, m = wm.at.mu;
      evals[i] = {w.eval(l, m), (1 + l * l) * (1 + m * m) * q, wm.at};
    } else {
      evals[i] = {w.eval(1.0, 1.0), excess, {1.0, 1.0}};
    }
  });

  LemmaReport rep;
  if (spec.kind == AmbientKind::kSpaceForm) {
    char buf[48];
    std::snprintf(buf, sizeof buf, ":c=%g", spec.c);
    rep.lemma_id = "chain:" + id.name() + buf;
  } else {
    rep.lemma_id = "chain:" + id.name() + ":" + to_string(sign_case_of(spec.pinch));
  }
  rep.samples = static_cast<int>(frames.size());
  rep.constant = thr;
  rep.gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < evals.size(); ++i) {
    const double gap = evals[i].lhs - evals[i].rhs;
    if (gap < rep.gap) {
      rep.gap = gap;
      rep.lhs = evals[i].lhs;
      rep.rhs = evals[i].rhs;
      rep.witness = frames[i];
      rep.weights = evals[i].w;
    }
  }
  rep.pass = rep.gap >= -rep.tol;
  return rep;
}

Mat random_tangent(int m, int n, bool totally_real, Rng& rng) {
  if (n < 1 || n > 2 * m) {
    throw std::invalid_argument("random_tangent: need 1 <= n <= 2m");
  }
  if (!totally_real) return random_frame(2 * m, n, rng);
  if (n > m) {
    throw std::invalid_argument("random_tangent: totally real needs n <= m");
  }
  Mat e = Mat::Zero(2 * m, n);
  for (int a = 0; a < n; ++a) e(2 * a, a) = 1.0;
  return random_unitary(m, rng) * e;
}

}  // namespace curvgate
