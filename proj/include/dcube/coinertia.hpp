#pragma once

// Two-table coupling through the crossed triplet (Y^T D_n X, D_p, D_q).

#include "dcube/gpca.hpp"
#include "dcube/permutation.hpp"

#include <string>
#include <vector>

namespace dcube {

struct AxisCoupling {
  double covariance = 0.0;
  double correlation = 0.0;
  double x_variance = 0.0;
  double y_variance = 0.0;
};

struct CoInertiaResult {
  Decomposition crossed;       ///< gpca of the crossed triplet; rows = Y columns
  Vector eigenvalues;          ///< squared covariances, descending (non-null part)
  Matrix x_axes;               ///< A: p x r, D_p-orthonormal
  Matrix y_axes;               ///< B: q x r, D_q-orthonormal
  Matrix x_scores;             ///< X D_p A
  Matrix y_scores;             ///< Y D_q B
  std::vector<AxisCoupling> axes;
  double total_coinertia = 0.0;
  double rv = 0.0;
  std::vector<std::string> warnings;
};

/// Z = Y^T D_n X (q x p) carried as the triplet (Z, D_p, D_q).
Triplet cross_table(const Triplet& tx, const Triplet& ty);

CoInertiaResult coia(const Triplet& tx, const Triplet& ty, Index n_axes);

/// trace(X D_p X^T D_n Y D_q Y^T D_n).
double total_coinertia(const Triplet& tx, const Triplet& ty);

/// Escoufier's RV between the row-space operators X D_p X^T D_n and Y D_q Y^T D_n.
double rv_coefficient(const Triplet& tx, const Triplet& ty);

/// Total co-inertia under random row permutations of X (Y fixed).
PermutationTestResult coia_permutation_test(const Triplet& tx, const Triplet& ty, int n_perm, std::uint64_t seed,
                                            unsigned threads = 0);

}  // namespace dcube
