// Symmetry checks, Gauss-equation tensors and Ricci-type invariants.
#pragma once

#include <vector>

#include "curvgate/tensor.hpp"

namespace curvgate {

inline constexpr double kDefaultSymmetryTol = 1e-9;

/// Max absolute violation of each algebraic curvature identity.
struct SymmetryReport {
  double antisym_first = 0.0;   // R_ijkl + R_jikl
  double antisym_second = 0.0;  // R_ijkl + R_ijlk
  double pair_symmetry = 0.0;   // R_ijkl - R_klij
  double bianchi = 0.0;         // R_ijkl + R_jkil + R_kijl
  double tol = kDefaultSymmetryTol;
  bool pass = true;

  double max_violation() const;
};

SymmetryReport validate_symmetries(const CurvatureTensor& t,
                                   double tol = kDefaultSymmetryTol);

/// kappa (d_ik d_jl - d_il d_jk): constant sectional curvature kappa.
CurvatureTensor constant_curvature(int n, double kappa);

/// sum_a h^a_ik h^a_jl - h^a_il h^a_jk.
CurvatureTensor gauss_tensor(const SecondFundamentalForm& b);

/// Entrywise r - k; throws std::invalid_argument on dimension mismatch.
CurvatureTensor difference_tensor(const CurvatureTensor& r,
                                  const CurvatureTensor& k);

struct MeanData {
  Vec mean;             // H^a = sum_i h^a_ii
  double norm_h2 = 0;   // |H|^2
  double norm_b2 = 0;   // |B|^2
};

MeanData mean_data(const SecondFundamentalForm& b);

struct TracelessSplit {
  SecondFundamentalForm traceless;
  Vec trace_part;  // T^a = H^a / n

  /// traceless + T^a * identity, i.e. the original form.
  SecondFundamentalForm reassemble() const;
};

TracelessSplit traceless_split(const SecondFundamentalForm& b);

struct RicciData {
  Mat ric;                   // Ric_ij = sum_k R_ikjk
  Vec eigenvalues;           // ascending
  Mat eigenvectors;          // columns match `eigenvalues`
  double scalar = 0.0;       // trace of ric
};

RicciData ricci(const CurvatureTensor& r);

/// Smallest trace of the Ricci form over k-dimensional subspaces, i.e. the
/// sum of the k smallest Ricci eigenvalues.
double weak_ricci_min(const CurvatureTensor& r, int k);
double weak_ricci_min(const RicciData& ric, int k);

}  // namespace curvgate
