#pragma once

// Brute-force reference computations used only by the tests. They avoid the
// library's code paths: explicit loops, the general (non-symmetric) eigen
// solver, SVD and power iteration.

#include "dcube/tabular.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using dcube::Index;
using dcube::Matrix;
using dcube::Vector;

inline Matrix random_matrix(std::mt19937_64& rng, Index n, Index p) {
  std::normal_distribution<double> z(0.0, 1.0);
  Matrix m(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) m(i, j) = z(rng);
  return m;
}

inline Vector random_positive(std::mt19937_64& rng, Index n, double lo = 0.2, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline Vector random_weights(std::mt19937_64& rng, Index n) {
  Vector w = random_positive(rng, n);
  return w / w.sum();
}

inline Index random_int(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

/// Column-wise weighted centering by explicit loops.
inline Matrix center(const Matrix& x, const Vector& w) {
  Matrix out = x;
  for (Index j = 0; j < x.cols(); ++j) {
    double mean = 0.0;
    double total = 0.0;
    for (Index i = 0; i < x.rows(); ++i) {
      mean += w[i] * x(i, j);
      total += w[i];
    }
    mean /= total;
    for (Index i = 0; i < x.rows(); ++i) out(i, j) -= mean;
  }
  return out;
}

/// sum_i sum_j w_i d_j a_ij b_ij
inline double covv(const Matrix& a, const Matrix& b, const Vector& d, const Vector& w) {
  double s = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) s += w[i] * d[j] * a(i, j) * b(i, j);
  return s;
}

inline double inertia(const Matrix& x, const Vector& d, const Vector& w) { return covv(x, x, d, w); }

/// Eigenvalues of the non-symmetric operator X^T D_n X D_p, descending,
/// from the general eigen solver.
inline Vector operator_eigenvalues(const Matrix& x, const Vector& d, const Vector& w) {
  const Matrix op = x.transpose() * w.asDiagonal() * x * d.asDiagonal();
  Eigen::EigenSolver<Matrix> es(op, false);
  std::vector<double> ev;
  for (Index i = 0; i < op.rows(); ++i) ev.push_back(std::max(0.0, es.eigenvalues()[i].real()));
  std::sort(ev.rbegin(), ev.rend());
  return Eigen::Map<Vector>(ev.data(), static_cast<Index>(ev.size()));
}

/// Squared singular values of D_q^{1/2} (Y^T D_n X) D_p^{1/2}: the co-inertia spectrum.
inline Vector coinertia_eigenvalues(const Matrix& x, const Matrix& y, const Vector& dp, const Vector& dq,
                                    const Vector& w) {
  Matrix z = Matrix::Zero(y.cols(), x.cols());
  for (Index l = 0; l < y.cols(); ++l)
    for (Index j = 0; j < x.cols(); ++j)
      for (Index i = 0; i < x.rows(); ++i) z(l, j) += w[i] * y(i, l) * x(i, j);
  const Matrix s = dq.cwiseSqrt().asDiagonal() * z * dp.cwiseSqrt().asDiagonal();
  Eigen::JacobiSVD<Matrix> svd(s);
  return svd.singularValues().cwiseAbs2();
}

/// sum_j sum_l d_j e_l (sum_i w_i x_ij y_il)^2
inline double coinertia(const Matrix& x, const Matrix& y, const Vector& dp, const Vector& dq, const Vector& w) {
  double s = 0.0;
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index l = 0; l < y.cols(); ++l) {
      double c = 0.0;
      for (Index i = 0; i < x.rows(); ++i) c += w[i] * x(i, j) * y(i, l);
      s += dp[j] * dq[l] * c * c;
    }
  }
  return s;
}

/// Dominant eigenvector of a positive semidefinite matrix by power iteration.
inline Vector dominant_eigenvector(const Matrix& s, int iterations = 200000) {
  Vector v = Vector::Constant(s.rows(), 1.0) + Vector::LinSpaced(s.rows(), 0.0, 0.01);
  v.normalize();
  for (int it = 0; it < iterations; ++it) {
    Vector next = s * v;
    next.normalize();
    if ((next - v).norm() < 1e-15) {
      v = next;
      break;
    }
    v = next;
  }
  if (v.sum() < 0) v = -v;
  return v;
}

/// Between-group over total inertia by direct sums of squares around the
/// weighted grand mean.
inline double anova_ratio(const Matrix& x, const std::vector<int>& group, const Vector& d, const Vector& w) {
  const int g = *std::max_element(group.begin(), group.end()) + 1;
  Matrix sums = Matrix::Zero(g, x.cols());
  Vector mass = Vector::Zero(g);
  Vector grand = Vector::Zero(x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    sums.row(group[static_cast<std::size_t>(i)]) += w[i] * x.row(i);
    mass[group[static_cast<std::size_t>(i)]] += w[i];
    grand += w[i] * x.row(i).transpose();
  }
  grand /= w.sum();
  double between = 0.0;
  double total = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    const int k = group[static_cast<std::size_t>(i)];
    for (Index j = 0; j < x.cols(); ++j) {
      const double mk = sums(k, j) / mass[k];
      between += w[i] * d[j] * (mk - grand[j]) * (mk - grand[j]);
      total += w[i] * d[j] * (x(i, j) - grand[j]) * (x(i, j) - grand[j]);
    }
  }
  return between / total;
}

/// Relative difference scaled by the larger magnitude (absolute below `floor`).
inline double rel_diff(double a, double b, double floor = 1.0) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

inline double max_rel_diff(const Vector& a, const Vector& b, double floor = 1.0) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (Index i = 0; i < a.size(); ++i) m = std::max(m, rel_diff(a[i], b[i], floor));
  return m;
}

/// Largest column-wise difference after matching each column's sign.
inline double max_diff_up_to_sign(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  double m = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    const double plus = (a.col(j) - b.col(j)).cwiseAbs().maxCoeff();
    const double minus = (a.col(j) + b.col(j)).cwiseAbs().maxCoeff();
    m = std::max(m, std::min(plus, minus));
  }
  return m;
}

}  // namespace oracle
