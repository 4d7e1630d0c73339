#include "dcube/gpca.hpp"

#include "dcube/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dcube {

Labels Decomposition::axis_labels() const {
  Labels out;
  for (Index a = 0; a < kept_axes(); ++a) out.push_back("Axis" + std::to_string(a + 1));
  return out;
}

Vector orient_axes(Matrix& axes) {
  Vector signs = Vector::Ones(axes.cols());
  for (Index a = 0; a < axes.cols(); ++a) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index j = 0; j < axes.rows(); ++j) {
      // strict comparison keeps the lowest index on ties
      const double v = std::abs(axes(j, a));
      if (v > best_abs * (1.0 + 1e-12)) {
        best = j;
        best_abs = v;
      }
    }
    if (axes.rows() > 0 && axes(best, a) < 0.0) {
      axes.col(a) *= -1.0;
      signs[a] = -1.0;
    }
  }
  return signs;
}

Decomposition gpca(const Triplet& t, Index n_axes) {
  if (t.rows() < 1 || t.cols() < 1) throw Error(ErrorKind::DimensionMismatch, "gpca needs a nonempty table");
  if (n_axes < 1) throw Error(ErrorKind::InvalidConfig, "gpca needs at least one axis");

  const Matrix& x = t.values();
  const Vector& w = t.weights().values();
  const Vector sqrt_d = t.metric().values().cwiseSqrt();

  // Symmetric form D_p^{1/2} X^T D_n X D_p^{1/2}; same spectrum as X^T D_n X D_p.
  const Matrix xs = x * sqrt_d.asDiagonal();
  Matrix op = xs.transpose() * w.asDiagonal() * xs;
  op = 0.5 * (op + op.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> solver(op);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NullEigenvalue, "eigen solver failed");

  const Index p = t.cols();
  Decomposition d;
  d.spectrum.resize(p);
  Matrix vectors(p, p);
  for (Index i = 0; i < p; ++i) {
    // solver returns ascending order
    d.spectrum[i] = std::max(0.0, solver.eigenvalues()[p - 1 - i]);
    vectors.col(i) = solver.eigenvectors().col(p - 1 - i);
  }

  const double lmax = d.spectrum.size() > 0 ? d.spectrum[0] : 0.0;
  Index rank = 0;
  while (rank < p && d.spectrum[rank] > kRankTolerance * lmax && d.spectrum[rank] > 0.0) ++rank;
  d.rank = rank;
  d.eigenvalues = d.spectrum.head(rank);
  d.discarded_inertia = d.spectrum.tail(p - rank).sum();

  const Index keep = std::min(n_axes, rank);
  d.axes = sqrt_d.cwiseInverse().asDiagonal() * vectors.leftCols(keep);
  orient_axes(d.axes);

  d.row_scores = x * t.metric().values().asDiagonal() * d.axes;
  const Vector sqrt_l = d.eigenvalues.head(keep).cwiseSqrt();
  d.components = d.row_scores * sqrt_l.cwiseInverse().asDiagonal();
  d.col_coords = d.axes * sqrt_l.asDiagonal();

  d.source_values = x;
  d.metric = t.metric();
  d.weights = t.weights();
  d.row_labels = t.table().row_labels();
  d.col_labels = t.table().col_labels();
  return d;
}

Matrix project_rows(const Decomposition& d, const Triplet& sup) {
  if (sup.table().col_labels() != d.col_labels || !sup.metric().same_as(d.metric)) {
    throw Error(ErrorKind::ColumnMismatch, "supplementary rows do not share the decomposed columns");
  }
  return sup.values() * d.metric.values().asDiagonal() * d.axes;
}

Matrix project_cols(const Decomposition& d, const Matrix& sup_cols, Index n_axes) {
  if (sup_cols.rows() != d.source_values.rows()) {
    throw Error(ErrorKind::RowMismatch, "supplementary columns have " + std::to_string(sup_cols.rows()) +
                                            " rows, decomposition has " + std::to_string(d.source_values.rows()));
  }
  const Index axes = n_axes < 0 ? d.kept_axes() : n_axes;
  if (axes > d.kept_axes()) {
    throw Error(ErrorKind::NullEigenvalue, "axis " + std::to_string(axes) + " has a null eigenvalue or was not kept");
  }
  const Vector inv_sqrt_l = d.eigenvalues.head(axes).cwiseSqrt().cwiseInverse();
  return sup_cols.transpose() * d.weights.values().asDiagonal() * d.source_values * d.metric.values().asDiagonal() *
         d.axes.leftCols(axes) * inv_sqrt_l.asDiagonal();
}

}  // namespace dcube
