// Curvature functionals on orthonormal 4-frames and unit vectors, and their
// random-restart minimization.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "curvgate/kahler.hpp"

namespace curvgate {

inline constexpr double kFrameTol = 1e-8;

struct Frame4 {
  std::array<Vec, 4> e;

  static Frame4 from_matrix(const Mat& f);  // n x 4
  Mat matrix() const;
  int dim() const { return static_cast<int>(e[0].size()); }
  /// max |<e_i, e_j> - delta_ij|.
  double orthonormality_defect() const;
};

/// The coordinate frame (e_i, e_j, e_k, e_l) of R^n.
Frame4 coordinate_frame(int n, int i, int j, int k, int l);

struct WeightedIsoParams {
  double lambda = 1.0;
  double mu = 1.0;
};

/// R(f_a, f_b, f_c, f_d) for a, b, c, d < 4.
struct FrameComponents {
  std::array<double, 256> c{};
  double operator()(int a, int b, int c_, int d) const {
    return c[((a * 4 + b) * 4 + c_) * 4 + d];
  }
};

/// Components for any n x 4 matrix (no orthonormality check).
FrameComponents frame_components(const CurvatureTensor& r, const Mat& f);

/// R_1313 + R_1414 + R_2323 + R_2424 - 2 R_1234. Throws std::invalid_argument
/// if the frame is not orthonormal to kFrameTol.
double isotropic_expr(const CurvatureTensor& r, const Frame4& f);

/// R_1313 + l^2 R_1414 + m^2 R_2323 + l^2 m^2 R_2424 - 2 l m R_1234.
double weighted_isotropic_expr(const CurvatureTensor& r, const Frame4& f,
                               const WeightedIsoParams& w);

/// Coefficients of a + b l^2 + c m^2 + d l^2 m^2 - 2 e l m.
struct WeightedCoeffs {
  double a = 0, b = 0, c = 0, d = 0, e = 0;
  double eval(double l, double m) const {
    return a + b * l * l + c * m * m + d * l * l * m * m - 2.0 * e * l * m;
  }
};

WeightedCoeffs weighted_coeffs(const FrameComponents& comp);

struct WeightMin {
  double value = 0.0;
  WeightedIsoParams at;
};

/// Exact minimum over [-1, 1]^2: corners, edge critical points, the origin and
/// the interior critical points (roots of a quadratic in m^2).
WeightMin minimize_weights(const WeightedCoeffs& k);

enum class GradientMode { kAnalytic, kFiniteDifference };

struct SearchBudget {
  int restarts = 64;
  int max_iterations = 200;
  double grad_tol = 1e-8;
  GradientMode gradient = GradientMode::kAnalytic;
  double fd_step = 1e-5;
  /// Called with every accepted iterate (n x k). Forces serial restarts.
  std::function<void(const Mat&)> on_iterate;
};

struct OptResult {
  double value = 0.0;
  Frame4 frame;  // unused for sphere searches
  Vec vector;    // unit vector for sphere searches
  std::optional<WeightedIsoParams> weights;
  int restarts_used = 0;
  int converged_restarts = 0;
  bool converged = false;
};

/// Minimum of the (weighted) isotropic expression over orthonormal 4-frames.
/// The weighted search also runs the plain search and keeps the better
/// frame, so its value never exceeds the plain minimum found.
/// Throws std::invalid_argument for n < 4.
OptResult min_isotropic(const CurvatureTensor& r, bool weighted,
                        const SearchBudget& budget, std::uint64_t seed);

struct HolExtremes {
  double kmin = 0.0;
  double kmax = 0.0;
  Vec argmin;
  Vec argmax;
};

/// Extremes of X -> K(X, JX, X, JX) on the unit sphere.
HolExtremes hol_extremes(const KahlerCurvature& kc, const SearchBudget& budget,
                         std::uint64_t seed);

enum class PairExpr {
  kMixedPair,     // R_1212 + R_1234
  kPairRicci,     // Ric(e_1, e_1) + Ric(e_2, e_2), exact
  kSingleWeight,  // R_1313 + R_2323 + R_1234
};

const char* to_string(PairExpr e);
PairExpr pair_expr_from_string(const std::string& s);  // throws on unknown tag

double pair_expr_value(const CurvatureTensor& r, const Frame4& f, PairExpr e);

OptResult min_pair_expr(const CurvatureTensor& r, PairExpr expr,
                        const SearchBudget& budget, std::uint64_t seed);

}  // namespace curvgate
