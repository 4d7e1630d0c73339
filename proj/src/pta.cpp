#include "dcube/pta.hpp"

#include "dcube/errors.hpp"

#include <cmath>

namespace dcube {

namespace {

void check_compatible(const Triplet& a, const Triplet& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "tables have different shapes");
  }
  if (!a.metric().same_as(b.metric())) throw Error(ErrorKind::DimensionMismatch, "tables have different metrics");
  if (!a.weights().same_as(b.weights())) throw Error(ErrorKind::DimensionMismatch, "tables have different row weights");
}

double covv_unchecked(const Triplet& a, const Triplet& b) {
  const Vector& w = a.weights().values();
  const Vector& d = a.metric().values();
  return (w.transpose() * a.values().cwiseProduct(b.values()) * d).value();
}

void check_rows_aligned(const KTable& kt) {
  if (!kt.rows_aligned()) {
    throw Error(ErrorKind::RowMismatch, "tables of the k-table do not share row labels and weights");
  }
}

}  // namespace

double covv(const Triplet& a, const Triplet& b) {
  check_compatible(a, b);
  return covv_unchecked(a, b);
}

double varv(const Triplet& a) { return covv_unchecked(a, a); }

double rv(const Triplet& a, const Triplet& b) {
  check_compatible(a, b);
  const double va = varv(a);
  const double vb = varv(b);
  if (!(va > 0.0) || !(vb > 0.0)) throw Error(ErrorKind::ZeroVarianceTable, "Rv needs two nonzero tables");
  return covv_unchecked(a, b) / std::sqrt(va * vb);
}

Interstructure interstructure(const KTable& kt, InterstructureMode mode, bool strict) {
  check_rows_aligned(kt);
  const Index k = kt.size();
  Interstructure res;
  res.mode = mode;
  res.similarity.resize(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = a; b < k; ++b) {
      const double v = mode == InterstructureMode::Cov ? covv(kt.table(a), kt.table(b)) : rv(kt.table(a), kt.table(b));
      res.similarity(a, b) = v;
      res.similarity(b, a) = v;
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(res.similarity);
  res.eigenvalues = solver.eigenvalues().reverse();
  res.first_eigenvalue = res.eigenvalues[0];
  res.alpha = solver.eigenvectors().col(k - 1);
  res.alpha /= res.alpha.norm();
  if (res.alpha.sum() < 0.0) res.alpha = -res.alpha;

  constexpr double tol = 1e-9;
  if (res.alpha.minCoeff() < -tol && res.alpha.maxCoeff() > tol) {
    const std::string msg = "dominant interstructure eigenvector has mixed signs; some tables get negative weights";
    if (strict) throw Error(ErrorKind::MixedSignEigenvector, msg);
    res.warning = msg;
  }
  return res;
}

Compromise build_compromise(const KTable& kt, const Vector& alpha, Index n_axes) {
  if (alpha.size() != kt.size()) {
    throw Error(ErrorKind::DimensionMismatch, "need one weight per table");
  }
  check_rows_aligned(kt);
  Matrix xc = Matrix::Zero(kt.table(0).rows(), kt.table(0).cols());
  for (Index t = 0; t < kt.size(); ++t) xc += alpha[t] * kt.table(t).values();
  Triplet table = kt.table(0).with_values(std::move(xc));
  Decomposition analysis = gpca(table, n_axes);
  return Compromise{std::move(table), std::move(analysis)};
}

std::vector<Matrix> intrastructure_rows(const KTable& kt, const Compromise& c) {
  std::vector<Matrix> out;
  for (const auto& t : kt.tables()) out.push_back(project_rows(c.analysis, t));
  return out;
}

std::vector<Matrix> intrastructure_cols(const KTable& kt, const Compromise& c) {
  std::vector<Matrix> out;
  for (const auto& t : kt.tables()) {
    if (!t.weights().same_as(c.table.weights())) {
      throw Error(ErrorKind::RowMismatch, "table rows do not match the compromise rows");
    }
    out.push_back(project_cols(c.analysis, t.values()));
  }
  return out;
}

std::vector<TypologicalValue> typological_values(const KTable& kt, const Compromise& c, const Vector& alpha) {
  std::vector<TypologicalValue> out;
  for (Index t = 0; t < kt.size(); ++t) {
    const double r = rv(kt.table(t), c.table);
    out.push_back({alpha[t], r * r, varv(kt.table(t))});
  }
  return out;
}

namespace detail {

PTAResult pta_any(const KTable& kt, const PTAOptions& options) {
  Interstructure inter = interstructure(kt, options.mode, options.strict_signs);
  Compromise comp = build_compromise(kt, inter.alpha, options.n_axes);
  auto rows = intrastructure_rows(kt, comp);
  auto cols = intrastructure_cols(kt, comp);

  // Zero tables (or a zero compromise) have no defined cosine; report 0.
  std::vector<TypologicalValue> typology;
  const double vc = varv(comp.table);
  for (Index t = 0; t < kt.size(); ++t) {
    const double vt = varv(kt.table(t));
    double cos2 = 0.0;
    if (vt > 0.0 && vc > 0.0) {
      const double r = covv(kt.table(t), comp.table) / std::sqrt(vt * vc);
      cos2 = std::min(1.0, r * r);
    }
    typology.push_back({inter.alpha[t], cos2, vt});
  }
  return PTAResult{std::move(inter), std::move(comp), std::move(rows), std::move(cols), std::move(typology),
                   kt.names()};
}

}  // namespace detail

PTAResult pta(const KTable& kt, const PTAOptions& options) {
  if (kt.size() < 2) throw Error(ErrorKind::TooFewTables, "partial triadic analysis needs at least two tables");
  return detail::pta_any(kt, options);
}

}  // namespace dcube
