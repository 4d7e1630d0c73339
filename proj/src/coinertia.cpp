#include "dcube/coinertia.hpp"

#include "dcube/errors.hpp"

#include <cmath>

namespace dcube {

namespace {

void check_rows(const Triplet& tx, const Triplet& ty) {
  if (tx.rows() != ty.rows() || tx.table().row_labels() != ty.table().row_labels()) {
    throw Error(ErrorKind::RowMismatch, "the two tables do not share row labels");
  }
  if (!tx.weights().same_as(ty.weights())) {
    throw Error(ErrorKind::RowMismatch, "the two tables do not share row weights");
  }
}

Matrix cross_values(const Matrix& x, const Matrix& y, const Vector& w) {
  return y.transpose() * w.asDiagonal() * x;
}

// sum_l sum_j e_l d_j z_lj^2
double weighted_square_norm(const Matrix& z, const Vector& row_w, const Vector& col_d) {
  return (row_w.transpose() * z.array().square().matrix() * col_d).value();
}

}  // namespace

Triplet cross_table(const Triplet& tx, const Triplet& ty) {
  check_rows(tx, ty);
  DataTable z(cross_values(tx.values(), ty.values(), tx.weights().values()), ty.table().col_labels(),
              tx.table().col_labels());
  return Triplet(std::move(z), tx.metric(), RowWeights::from_metric(ty.metric()));
}

double total_coinertia(const Triplet& tx, const Triplet& ty) {
  check_rows(tx, ty);
  const Matrix z = cross_values(tx.values(), ty.values(), tx.weights().values());
  return weighted_square_norm(z, ty.metric().values(), tx.metric().values());
}

double rv_coefficient(const Triplet& tx, const Triplet& ty) {
  check_rows(tx, ty);
  const Vector& w = tx.weights().values();
  const double xy = weighted_square_norm(cross_values(tx.values(), ty.values(), w), ty.metric().values(),
                                         tx.metric().values());
  const double xx = weighted_square_norm(cross_values(tx.values(), tx.values(), w), tx.metric().values(),
                                         tx.metric().values());
  const double yy = weighted_square_norm(cross_values(ty.values(), ty.values(), w), ty.metric().values(),
                                         ty.metric().values());
  if (!(xx > 0.0) || !(yy > 0.0)) throw Error(ErrorKind::ZeroVarianceTable, "RV needs two nonzero tables");
  return xy / std::sqrt(xx * yy);
}

CoInertiaResult coia(const Triplet& tx, const Triplet& ty, Index n_axes) {
  CoInertiaResult res;
  if (!is_centered(tx)) res.warnings.emplace_back("columns of the first table are not centered");
  if (!is_centered(ty)) res.warnings.emplace_back("columns of the second table are not centered");

  const Triplet z = cross_table(tx, ty);
  res.crossed = gpca(z, n_axes);
  const Decomposition& d = res.crossed;

  res.eigenvalues = d.eigenvalues;
  res.x_axes = d.axes;
  res.y_axes = d.components;
  res.x_scores = tx.values() * tx.metric().values().asDiagonal() * res.x_axes;
  res.y_scores = ty.values() * ty.metric().values().asDiagonal() * res.y_axes;

  const Vector& w = tx.weights().values();
  for (Index a = 0; a < d.kept_axes(); ++a) {
    AxisCoupling c;
    c.covariance = (res.x_scores.col(a).array() * res.y_scores.col(a).array() * w.array()).sum();
    c.x_variance = (res.x_scores.col(a).array().square() * w.array()).sum();
    c.y_variance = (res.y_scores.col(a).array().square() * w.array()).sum();
    const double denom = std::sqrt(c.x_variance * c.y_variance);
    c.correlation = denom > 0.0 ? c.covariance / denom : 0.0;
    res.axes.push_back(c);
  }

  res.total_coinertia = weighted_square_norm(z.values(), z.weights().values(), z.metric().values());
  res.rv = res.total_coinertia > 0.0 ? rv_coefficient(tx, ty) : 0.0;
  return res;
}

PermutationTestResult coia_permutation_test(const Triplet& tx, const Triplet& ty, int n_perm, std::uint64_t seed,
                                            unsigned threads) {
  const double observed = total_coinertia(tx, ty);
  const Matrix& x = tx.values();
  const Matrix& y = ty.values();
  const Vector& w = tx.weights().values();
  const Vector& dp = tx.metric().values();
  const Vector& dq = ty.metric().values();
  auto statistic = [&](std::span<const int> perm) {
    Matrix xp(x.rows(), x.cols());
    for (Index i = 0; i < x.rows(); ++i) xp.row(i) = x.row(perm[static_cast<std::size_t>(i)]);
    return weighted_square_norm(cross_values(xp, y, w), dq, dp);
  };
  return permutation_test(observed, static_cast<int>(x.rows()), n_perm, seed, statistic, threads);
}

}  // namespace dcube
