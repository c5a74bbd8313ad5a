// Pinching thresholds for the four sphere-theorem families, verdicts over
// finite point sets, and numeric cross-checks of the isotropic-curvature
// inequality chains behind them.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvgate/lemmas.hpp"
#include "curvgate/random.hpp"

namespace curvgate {

inline constexpr double kStrictTol = 1e-9;

enum class AmbientKind { kHolPinch, kSpaceForm };

struct AmbientSpec {
  AmbientKind kind = AmbientKind::kHolPinch;
  HolPinch pinch;  // for kSpaceForm this is (c, c)
  double c = 0.0;  // meaningful for kSpaceForm only
  int m = 0;       // complex dimension, 0 if unknown

  static AmbientSpec hol_pinch(const HolPinch& p, int m = 0);
  static AmbientSpec space_form(double c, int m = 0);
};

struct PointData {
  int n = 0;
  double scalar = 0.0;
  double ric2min = 0.0;
  std::optional<double> ric4min;  // required for the Ric^[4] family
  double normH2 = 0.0;
  bool totally_real = false;
};

/// Intrinsic invariants of a curvature tensor plus |H|^2 of its second
/// fundamental form.
PointData point_from(const CurvatureTensor& intrinsic,
                     const SecondFundamentalForm& b, bool totally_real);

/// scalar-diffeo: scalar curvature, diffeomorphism conclusion.
/// ricci2-diffeo: Ric^[2]_min with parameter eps, diffeomorphism conclusion.
/// scalar-homeo: scalar curvature, homeomorphism conclusion.
/// ricci4-homeo: Ric^[4]_min, homeomorphism conclusion.
enum class Family { kScalarDiffeo, kRicci2Diffeo, kScalarHomeo, kRicci4Homeo };

/// general: any submanifold, case-wise in the sign of the pinch.
/// totally-real: totally real submanifolds.
/// space-form: totally real submanifolds of a complex space form.
enum class Variant { kGeneral, kTotallyReal, kSpaceForm };

struct TheoremId {
  Family family = Family::kScalarDiffeo;
  Variant variant = Variant::kGeneral;

  std::string name() const;  // e.g. "scalar-diffeo/totally-real"
  static TheoremId parse(const std::string& s);
  friend bool operator==(const TheoremId&, const TheoremId&) = default;
};

const char* to_string(Family f);
const char* to_string(Variant v);

/// Smallest dimension the family applies to (2 for scalar-diffeo, else 4).
int min_dimension(Family f);

/// Right-hand side of the pinching condition. The sign case comes from the
/// ambient pinch; kmin = 0 resolves to the nonnegative case and kmax = 0 to
/// the nonpositive case (the formulas agree on the overlaps).
/// Throws std::invalid_argument for a dimension below the family minimum,
/// a missing or out-of-range eps for ricci2-diffeo, or the space-form
/// variant with a non-space-form ambient.
double threshold(TheoremId id, const AmbientSpec& ambient, int n,
                 double normH2, std::optional<double> eps = std::nullopt);

/// Whether the theorem asks for strict inequality at some point.
bool requires_strict(TheoremId id, const AmbientSpec& ambient);

/// Quantity compared against the threshold.
double pinching_lhs(Family f, const PointData& p);

enum class Satisfied { kYesStrictSomewhere, kBoundary, kViolated };
const char* to_string(Satisfied s);

struct VerdictEntry {
  TheoremId id;
  std::vector<double> margins;  // per point, lhs - threshold
  double margin_min = 0.0;
  double margin_max = 0.0;
  Satisfied satisfied = Satisfied::kViolated;
  bool strict_required = true;
  /// The theorem's hypothesis holds on the given points: all margins
  /// nonnegative, plus a strictly positive one when strictness is required.
  bool hypothesis_met = false;
  std::string conclusion_label;  // quoted only when hypothesis_met
};

struct Metadata {
  std::optional<bool> simply_connected;
  std::optional<bool> closed;
};

struct TheoremVerdict {
  std::vector<VerdictEntry> entries;
  Metadata metadata;
  int points = 0;

  const VerdictEntry* find(const TheoremId& id) const;
};

/// Margins for every applicable theorem: the general variant always, the
/// totally-real variant when every point is totally real, the space-form
/// variant when additionally the ambient is a space form. ricci2-diffeo is
/// evaluated only with eps; the n >= 4 families only for n >= 4, and
/// ricci4-homeo only when every point carries ric4min.
/// Throws std::invalid_argument on empty input or mixed dimensions.
TheoremVerdict classify(const std::vector<PointData>& points,
                        const AmbientSpec& ambient,
                        std::optional<double> eps = std::nullopt,
                        double strict_tol = kStrictTol, Metadata metadata = {});

std::string conclusion_label(Family f);

/// Embedding of a submanifold: orthonormal tangent basis (2m x n) of the
/// ambient, with B valued in the orthogonal complement (p = 2m - n).
struct Embedding {
  Mat tangent;
  SecondFundamentalForm b;
};

/// Intrinsic tensor K|_T + gauss(B).
CurvatureTensor intrinsic_tensor(const KahlerCurvature& ambient,
                                 const Embedding& emb);

/// Max |<t_i, J t_j>| over the tangent basis.
double totally_real_defect(const KahlerCurvature& ambient, const Mat& tangent);

/// Samples frames of the intrinsic tensor and checks the chain inequality of
/// the selected family/variant: the weighted isotropic expression (or the
/// plain one for the homeomorphism families) against the bound obtained from
/// the pinching quantity minus its threshold. Weights are minimized exactly.
/// Throws std::invalid_argument on dimension mismatch, n < 4, a totally real
/// variant on a non-totally-real tangent, or a space-form variant with a
/// non-space-form ambient spec.
LemmaReport crosscheck_isotropic_chain(const KahlerCurvature& ambient,
                                       const AmbientSpec& spec,
                                       const Embedding& emb, TheoremId id,
                                       int samples, std::uint64_t seed,
                                       std::optional<double> eps = std::nullopt);

/// Random tangent of dimension n in C^m: generic (random orthonormal) or
/// totally real (unitary image of span{e_0, e_2, ..., e_{2n-2}}, needs m >= n).
Mat random_tangent(int m, int n, bool totally_real, Rng& rng);

}  // namespace curvgate
