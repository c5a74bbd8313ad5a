// Closed-form submanifold examples that sit on or near the pinching
// thresholds.
#pragma once

#include <map>
#include <string>

#include "curvgate/pinching.hpp"

namespace curvgate {

struct ModelInstance {
  std::string name;
  AmbientSpec ambient;
  KahlerCurvature ambient_tensor;
  Embedding embedding;
  /// Ambient basis vectors spanning the normal space, in the order of B's
  /// normal index.
  Mat normal_basis;
  CurvatureTensor intrinsic;
  PointData point;
  std::map<std::string, double> closed_forms;
  /// Differences between closed forms and recomputed values.
  std::map<std::string, double> residuals;

  double max_residual() const;
};

/// Totally geodesic CP^{n/2}(4) inside CP^m(4), spanned by the first n basis
/// vectors. Throws for odd n, n < 2 or m < n/2.
ModelInstance cp_totally_geodesic(int n, int m);

/// S^{n-p}(a) x S^p(b), a = mu/sqrt(1+mu^2), b = 1/sqrt(1+mu^2), inside the
/// unit sphere S^{n+1}, placed along e_0, e_2, ..., e_{2n-2} of C^{n+1} with
/// sphere normal e_{2n}. Ambient space_form(n+1, 4).
/// Throws unless 1 <= p <= n-1 and 0 < mu < 1.
ModelInstance clifford_product(int n, int p, double mu);

}  // namespace curvgate
