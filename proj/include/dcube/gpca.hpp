#pragma once

// Generalized PCA of a triplet (X, D_p, D_n) and supplementary projection.

#include "dcube/tabular.hpp"

namespace dcube {

/// Eigenvalues below this fraction of the largest one are null.
inline constexpr double kRankTolerance = 1e-9;

struct Decomposition {
  Vector spectrum;      ///< all p eigenvalues of X^T D_n X D_p, descending, clamped at 0
  Vector eigenvalues;   ///< the r non-null eigenvalues
  Index rank = 0;
  Matrix axes;          ///< U: p x m, D_p-orthonormal columns (m = kept axes <= r)
  Matrix row_scores;    ///< X D_p U
  Matrix components;    ///< row scores scaled to unit D_n norm per axis
  Matrix col_coords;    ///< U Lambda^{1/2}: variable loadings
  double discarded_inertia = 0.0;  ///< sum of the null part of the spectrum

  // Source description, kept for supplementary projections.
  Matrix source_values;
  ColumnMetric metric{Vector()};
  RowWeights weights = RowWeights::uniform(1);
  Labels row_labels;
  Labels col_labels;

  Index kept_axes() const noexcept { return axes.cols(); }
  Labels axis_labels() const;
};

/// Spectral decomposition of the triplet, keeping at most `n_axes` axes.
/// Each axis is oriented so that its largest-magnitude loading is positive.
Decomposition gpca(const Triplet& t, Index n_axes);

/// Scores of supplementary rows: X_sup D_p U.
Matrix project_rows(const Decomposition& d, const Triplet& sup);

/// Coordinates of supplementary columns measured on the decomposed rows:
/// X_sup^T D_n X D_p U Lambda^{-1/2}. `n_axes` < 0 means every kept axis.
Matrix project_cols(const Decomposition& d, const Matrix& sup_cols, Index n_axes = -1);

/// Flips every column of `axes` so its largest |entry| is positive (ties go to
/// the lowest index). Returns the applied signs.
Vector orient_axes(Matrix& axes);

}  // namespace dcube
