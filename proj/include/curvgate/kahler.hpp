// Complex structures, Kähler curvature tensors and the holomorphic
// polarization identities.
#pragma once

#include "curvgate/tensor.hpp"

namespace curvgate {

/// Real 2m x 2m matrix J with J^T J = I and J^2 = -I.
///
/// The standard structure acts on a J-adapted basis ordered
/// (e_1, Je_1, e_2, Je_2, ...).
struct ComplexStructure {
  int m = 0;
  Mat j;

  static ComplexStructure standard(int m);

  /// max(|J^T J - I|, |J^2 + I|), entrywise.
  double defect() const;
  Vec apply(const Vec& x) const { return j * x; }
};

/// A curvature tensor on R^{2m} paired with a complex structure. The
/// J-invariance K(JX, JY, Z, W) = K(X, Y, Z, W) is checked by
/// j_invariance_defect(); constructors in this header preserve it.
struct KahlerCurvature {
  CurvatureTensor k;
  ComplexStructure j;

  int dim() const { return k.dim(); }
};

/// max_{a,b,c,d} |K(Je_a, Je_b, e_c, e_d) - K(e_a, e_b, e_c, e_d)|.
double j_invariance_defect(const KahlerCurvature& kc);

/// Unnormalized quartic K(X, JX, X, JX).
double holomorphic_quartic(const KahlerCurvature& kc, const Vec& x);

/// K(X, JX, X, JX) / |X|^4. Throws std::invalid_argument for X = 0.
double holomorphic_sectional(const KahlerCurvature& kc, const Vec& x);

/// Recovers K(X, Y, Z, W) from the biquadratic U, V -> K(U, V, U, V) via the
/// eight-term polarization (valid for any algebraic curvature tensor).
double polarize_general(const CurvatureTensor& k, const Vec& x, const Vec& y,
                        const Vec& z, const Vec& w);

/// 3K(X+JY) + 3K(X-JY) - K(X+Y) - K(X-Y) - 4K(X) - 4K(Y) in terms of the
/// holomorphic quartic; equals 32 K(X, Y, X, Y) for Kähler tensors.
double sectional_from_holomorphic(const KahlerCurvature& kc, const Vec& x,
                                  const Vec& y);

/// Sixteen-term expansion of 256 K(X, Y, Z, W) in the holomorphic quartic.
double full_from_holomorphic(const KahlerCurvature& kc, const Vec& x,
                             const Vec& y, const Vec& z, const Vec& w);

/// Bounds on the holomorphic sectional curvature over unit vectors.
struct HolPinch {
  double kmin = 0.0;
  double kmax = 0.0;

  HolPinch() = default;
  HolPinch(double lo, double hi);  // throws unless lo <= hi
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v, double slack = 0.0) const {
    return v >= lo - slack && v <= hi + slack;
  }
};

/// Sign regime of a holomorphic pinch.
enum class SignCase { kNonneg, kMixed, kNonpos };

/// kmin >= 0 -> nonneg, kmax <= 0 -> nonpos, otherwise mixed. Ties at zero
/// resolve to nonneg / nonpos; the case-wise formulas agree there.
SignCase sign_case_of(const HolPinch& p);
const char* to_string(SignCase c);

/// Range of K(X, Y) for an orthonormal pair with t = <X, JY>.
Interval pinch_bounds_sectional(const HolPinch& p, double t);

/// b with |K(e1, e2, e3, e4)| <= b over orthonormal 4-frames.
/// Throws std::invalid_argument if `sign_case` is inconsistent with `p`.
double mixed_term_bound(const HolPinch& p, SignCase sign_case,
                        bool totally_real);

/// Constant holomorphic sectional curvature c on C^m with the standard J.
KahlerCurvature space_form(int m, double c);

/// Pullback K'(X, Y, Z, W) = K(UX, UY, UZ, UW) for orthogonal U with
/// UJ = JU (checked at 1e-10).
KahlerCurvature unitary_conjugate(const KahlerCurvature& kc, const Mat& u);

/// Block-diagonal sum, zero on mixed index blocks.
KahlerCurvature direct_sum(const KahlerCurvature& a, const KahlerCurvature& b);

/// s*a + t*b for tensors sharing the same complex structure.
KahlerCurvature combine(double s, const KahlerCurvature& a, double t,
                        const KahlerCurvature& b);

}  // namespace curvgate
