// Seeded random draws and the test-tensor corpus.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "curvgate/kahler.hpp"

namespace curvgate {

/// splitmix64 finalizer applied to (seed, stream, index). Every sampled
/// object in the library is drawn from its own derived seed so results do not
/// depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
      : eng_(derive_seed(seed, stream, index)) {}

  double normal() { return normal_(eng_); }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(eng_);
  }
  int uniform_int(int lo, int hi);  // inclusive
  Vec normal_vec(int n);
  Mat normal_mat(int rows, int cols);

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Orthonormal n x k matrix (Haar distributed columns).
Mat random_frame(int n, int k, Rng& rng);
Mat random_orthogonal(int n, Rng& rng);
Vec random_unit(int n, Rng& rng);

/// Real 2m x 2m form of a Haar unitary; commutes with the standard J.
Mat random_unitary(int m, Rng& rng);

/// Symmetric components with N(0, scale^2) entries.
SecondFundamentalForm random_sff(int n, int p, Rng& rng, double scale = 1.0);

/// gauss(B1) - gauss(B2) for independent random forms: a generic algebraic
/// curvature tensor with indefinite sectional curvature.
CurvatureTensor random_curvature(int n, Rng& rng);

/// A Kähler tensor with its exact holomorphic pinch.
struct KahlerSample {
  std::string label;
  KahlerCurvature kc;
  HolPinch pinch;
};

/// Holomorphic pinch of the direct sum of space forms with constants c_i:
/// the extremes of sum c_i s_i^2 over the simplex s_i >= 0, sum s_i = 1.
HolPinch direct_sum_pinch(const std::vector<double>& constants);

/// Direct sum of one-dimensional space forms with the given constants.
KahlerCurvature diagonal_kahler(const std::vector<double>& constants);

enum class CorpusKind { kSpaceForm, kConjugate, kDirectSum, kCombination };
const char* to_string(CorpusKind kind);

/// One corpus member of complex dimension m. Constants are drawn from
/// [-4, 4]; combinations are s * space_form + t * (conjugated direct sum) with
/// t > 0, whose pinch is s*c + t*[kmin, kmax].
KahlerSample random_kahler(CorpusKind kind, int m, Rng& rng);

/// A conjugated direct sum whose pinch falls in the requested sign case.
/// kMixed needs m >= 2.
KahlerSample random_kahler_with_sign(SignCase sign_case, int m, Rng& rng);

}  // namespace curvgate
