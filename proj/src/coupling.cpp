#include "dcube/coupling.hpp"

#include "dcube/errors.hpp"

namespace dcube {

namespace {

double between_ratio(const Triplet& t, const GroupAssignment& g, double total) {
  if (!(total > 0.0)) return 0.0;
  return total_inertia(group_means(t, g).means) / total;
}

}  // namespace

BGAResult bga(const Triplet& t, const GroupAssignment& g, Index n_axes) {
  BGAResult res;
  if (!is_centered(t)) res.warnings.emplace_back("input columns are not centered");
  if (g.groups() < 2) res.warnings.emplace_back("between-group analysis with a single group");

  const GroupMeans gm = group_means(t, g);
  res.analysis = gpca(gm.means, n_axes);
  res.row_scores = project_rows(res.analysis, t);
  res.between_inertia = total_inertia(gm.means);
  res.total_inertia = total_inertia(t);
  if (res.total_inertia > 0.0) {
    res.ratio = res.between_inertia / res.total_inertia;
  } else {
    res.warnings.emplace_back("table has zero inertia; ratio set to 0");
  }
  return res;
}

PermutationTestResult bga_permutation_test(const Triplet& t, const GroupAssignment& g, int n_perm,
                                           std::uint64_t seed, unsigned threads) {
  const double total = total_inertia(t);
  const auto& base = g.assignments();
  auto statistic = [&](std::span<const int> perm) {
    std::vector<int> relabeled(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) relabeled[i] = base[static_cast<std::size_t>(perm[i])];
    return between_ratio(t, g.with_assignments(std::move(relabeled)), total);
  };
  const double observed = between_ratio(t, g, total);
  return permutation_test(observed, static_cast<int>(t.rows()), n_perm, seed, statistic, threads);
}

Matrix barycenters(const Matrix& scores, const GroupAssignment& g) {
  if (scores.rows() != g.rows()) throw Error(ErrorKind::RowMismatch, "scores and grouping differ in rows");
  Matrix out = Matrix::Zero(g.groups(), scores.cols());
  const auto n = g.counts();
  for (Index i = 0; i < scores.rows(); ++i) out.row(g.group_of(i)) += scores.row(i);
  for (Index k = 0; k < g.groups(); ++k) out.row(k) /= static_cast<double>(n[static_cast<std::size_t>(k)]);
  return out;
}

BGCOIAResult bgcoia(const Triplet& env, const Triplet& spe, const GroupAssignment& g, Index n_axes) {
  if (env.table().row_labels() != spe.table().row_labels()) {
    throw Error(ErrorKind::RowMismatch, "the two stacked tables do not share row labels");
  }
  GroupMeans gx = group_means(env, g);
  GroupMeans gy = group_means(spe, g);
  CoInertiaResult c = coia(gx.means, gy.means, n_axes);

  Matrix env_rows = env.values() * env.metric().values().asDiagonal() * c.x_axes;
  Matrix spe_rows = spe.values() * spe.metric().values().asDiagonal() * c.y_axes;
  Matrix env_bary = barycenters(env_rows, g);
  Matrix spe_bary = barycenters(spe_rows, g);
  return BGCOIAResult{std::move(c),        std::move(gx.means), std::move(gy.means), std::move(env_rows),
                      std::move(spe_rows), std::move(env_bary), std::move(spe_bary)};
}

STATICOResult statico(const PairedKTables& pair, const PTAOptions& options) {
  std::vector<Triplet> cross;
  for (Index t = 0; t < pair.size(); ++t) cross.push_back(cross_table(pair.env().table(t), pair.spe().table(t)));
  KTable zk(std::move(cross), pair.env().names());
  PTAResult res = pta(zk, options);

  const Decomposition& d = res.compromise.analysis;
  std::vector<Matrix> env_sites;
  std::vector<Matrix> spe_sites;
  for (Index t = 0; t < pair.size(); ++t) {
    const Triplet& x = pair.env().table(t);
    const Triplet& y = pair.spe().table(t);
    env_sites.push_back(x.values() * x.metric().values().asDiagonal() * d.axes);
    spe_sites.push_back(y.values() * y.metric().values().asDiagonal() * d.components);
  }
  auto species = res.rows;
  auto env_vars = res.cols;
  Matrix b = d.components;
  return STATICOResult{std::move(zk),        std::move(res),       std::move(species), std::move(env_vars),
                       std::move(env_sites), std::move(spe_sites), std::move(b)};
}

COSTATISResult costatis(const KTable& env, const KTable& spe, const PTAOptions& options, int n_perm,
                        std::uint64_t seed, unsigned threads) {
  const auto& x0 = env.table(0);
  const auto& y0 = spe.table(0);
  if (!env.rows_aligned() || !spe.rows_aligned() || x0.table().row_labels() != y0.table().row_labels() ||
      !x0.weights().same_as(y0.weights())) {
    throw Error(ErrorKind::RowMismatch, "every table of both k-tables must share the same rows");
  }
  PTAResult pe = detail::pta_any(env, options);
  PTAResult ps = detail::pta_any(spe, options);
  const Triplet& xc = pe.compromise.table;
  const Triplet& yc = ps.compromise.table;
  CoInertiaResult c = coia(xc, yc, options.n_axes);

  std::optional<PermutationTestResult> test;
  if (n_perm > 0) test = coia_permutation_test(xc, yc, n_perm, seed, threads);

  const Vector& w = xc.weights().values();
  std::vector<Matrix> env_rows, spe_rows, env_cols, spe_cols;
  for (const auto& x : env.tables()) {
    env_rows.push_back(x.values() * x.metric().values().asDiagonal() * c.x_axes);
    env_cols.push_back(x.values().transpose() * w.asDiagonal() * c.y_scores);
  }
  for (const auto& y : spe.tables()) {
    spe_rows.push_back(y.values() * y.metric().values().asDiagonal() * c.y_axes);
    spe_cols.push_back(y.values().transpose() * w.asDiagonal() * c.x_scores);
  }
  return COSTATISResult{std::move(pe),       std::move(ps),       std::move(c),        std::move(test),
                        std::move(env_rows), std::move(spe_rows), std::move(env_cols), std::move(spe_cols)};
}

}  // namespace dcube
