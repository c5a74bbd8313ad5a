// Executable forms of the frame lemmas for algebraic curvature tensors and
// second fundamental forms: sampled gap reports and equality constructors.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvgate/frame_search.hpp"

namespace curvgate {

inline constexpr double kLemmaTol = 1e-9;

struct LemmaReport {
  std::string lemma_id;
  double lhs = 0.0;  // at the witness
  double rhs = 0.0;
  double gap = 0.0;  // lhs - rhs, minimal over samples
  Frame4 witness;
  std::optional<WeightedIsoParams> weights;
  int samples = 0;
  double constant = 0.0;  // c or D used for the right side
  /// Smallest hypothesis value seen on frames the proof relies on, when the
  /// lemma has a frame-wise hypothesis; must be >= constant.
  std::optional<double> hypothesis_min;
  bool hypothesis_ok = true;
  double tol = kLemmaTol;
  bool pass = true;
};

/// ((n-4) eps + 2)^2 / (4 (2 + (n^2 - 4n + 2) eps)). Throws
/// std::invalid_argument unless 0 < eps <= 1 and n >= 4.
double delta_eps(double eps, int n);

/// Frames visited by every check: ordered coordinate 4-tuples first (at most
/// half of `samples`), then seeded random orthonormal frames.
std::vector<Frame4> sample_frames(int n, int samples, std::uint64_t seed);

/// Weighted expression >= (1 + l^2)(1 + m^2) c given R_1212 + R_1234 >= c.
/// The weights are minimized exactly per frame.
LemmaReport check_amplify(const CurvatureTensor& r, double c, int samples,
                          std::uint64_t seed);

/// R_1313 + l^2 R_1414 + R_2323 + l^2 R_2424 - 2 l R_1234 >= (1 + l^2) c given
/// R_1313 + R_2323 + R_1234 >= c.
LemmaReport check_amplify_single(const CurvatureTensor& r, double c,
                                 int samples, std::uint64_t seed);

/// R~_1212 + R~_1234 >= (|H|^2 / (n-1) - |B|^2) / 2 with R~ = gauss(B).
LemmaReport check_eA1(const SecondFundamentalForm& b, int samples,
                      std::uint64_t seed);

/// sum_{i<=2<j<=4} R~_ijij - 2 R~_1234 >= |H|^2 / (n-2) - |B|^2.
LemmaReport check_eA2(const SecondFundamentalForm& b, int samples,
                      std::uint64_t seed);

/// R~_1212 + R~_1234 >= (D - delta(eps, n) |H|^2 / 2) / eps with 2D the sum of
/// the two smallest Ricci eigenvalues of R~.
LemmaReport check_eps_bound(const SecondFundamentalForm& b, double eps,
                            int samples, std::uint64_t seed);

/// sum_{i<=2<j<=4} R~_ijij - 2 R~_1234 >= 4D - |H|^2 / 2 with 4D the sum of
/// the four smallest Ricci eigenvalues of R~.
LemmaReport check_quad_bound(const SecondFundamentalForm& b, int samples,
                             std::uint64_t seed);

/// Per-frame gaps (lhs - rhs) of the two mean-curvature bounds.
double eA1_gap_at(const SecondFundamentalForm& b, const Frame4& f);
double eA2_gap_at(const SecondFundamentalForm& b, const Frame4& f);

/// h_ii = h_11 + h_22 for i >= 3, h_12 free, all other off-diagonal entries
/// zero; random free parameters. Equality holds in the first bound at the
/// coordinate frame (e_1, e_2, e_3, e_4).
SecondFundamentalForm build_eA1_equality(int n, int p, std::uint64_t seed);

/// Same rule with explicit free parameters per normal direction.
SecondFundamentalForm eA1_equality_from(int n, const std::vector<double>& h11,
                                        const std::vector<double>& h22,
                                        const std::vector<double>& h12);

/// h_ii = t (i <= 4), h_ii = 2t (i > 4), h_13 = h_24 = u, h_14 = -h_23 = v;
/// equality in the second bound at the coordinate frame.
SecondFundamentalForm build_eA2_equality(int n, int p, std::uint64_t seed);

}  // namespace curvgate
