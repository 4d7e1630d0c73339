#include "helpers.hpp"
#include "oracles.hpp"

#include "dcube/coupling.hpp"

using namespace dcube;

namespace {

Matrix group_means_oracle(const Matrix& x, const std::vector<int>& g, int groups) {
  Matrix m = Matrix::Zero(groups, x.cols());
  std::vector<int> n(static_cast<std::size_t>(groups), 0);
  for (Index i = 0; i < x.rows(); ++i) {
    m.row(g[static_cast<std::size_t>(i)]) += x.row(i);
    ++n[static_cast<std::size_t>(g[static_cast<std::size_t>(i)])];
  }
  for (int k = 0; k < groups; ++k) m.row(k) /= n[static_cast<std::size_t>(k)];
  return m;
}

KTable blocks_of(const std::vector<Matrix>& parts, const Labels& rows) {
  std::vector<Triplet> ts;
  for (const auto& p : parts) {
    ts.push_back(Triplet::uniform(DataTable(p, rows, labels("v", p.cols()))));
  }
  return KTable(std::move(ts), labels("d", static_cast<Index>(parts.size())));
}

}  // namespace

TEST_SUITE("coupling") {

TEST_CASE("BGA trivial cases") {
  const Matrix x = oracle::center(mat({{1, 2}, {4, 3}, {0, 7}, {2, 2}}), Vector::Constant(4, 0.25));
  const BGAResult single = bga(triplet(x), GroupAssignment({0, 1, 2, 3}, labels("g", 4)), 2);
  CHECK(single.ratio == doctest::Approx(1.0).epsilon(1e-12));

  const Matrix flat = mat({{1, 0}, {-1, 0}, {1, 0}, {-1, 0}});
  const BGAResult none = bga(triplet(flat), GroupAssignment({0, 0, 1, 1}, {"a", "b"}), 2);
  CHECK(none.ratio == 0.0);
  CHECK(none.analysis.rank == 0);

  const BGAResult zero = bga(triplet(Matrix::Zero(4, 2)), GroupAssignment({0, 0, 1, 1}, {"a", "b"}), 2);
  CHECK(zero.ratio == 0.0);
  CHECK_FALSE(zero.warnings.empty());

  CHECK_ERROR_KIND(GroupAssignment({0, 2, 2, 0}, {"a", "b", "c"}), ErrorKind::EmptyGroup);
}

TEST_CASE("BGA against the ANOVA oracle") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 150; ++rep) {
    const Index n = oracle::random_int(rng, 3, 6);
    const Index p = oracle::random_int(rng, 1, 4);
    const Vector w = oracle::random_weights(rng, n);
    const Vector d = oracle::random_positive(rng, p);
    const Matrix x = oracle::center(oracle::random_matrix(rng, n, p), w);
    const int g = static_cast<int>(oracle::random_int(rng, 2, n - 1));
    std::vector<int> group(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) group[static_cast<std::size_t>(i)] = static_cast<int>(i % g);
    std::shuffle(group.begin(), group.end(), rng);
    const GroupAssignment ga(group, labels("g", g));
    const BGAResult r = bga(triplet(x, d, w), ga, p);

    CHECK(oracle::rel_diff(r.ratio, oracle::anova_ratio(x, group, d, w)) < 1e-9);
    CHECK(r.between_inertia <= r.total_inertia * (1.0 + 1e-12));
    CHECK(r.ratio >= 0.0);
    CHECK(r.ratio <= 1.0 + 1e-12);

    // weighted group mean of supplementary row scores = group score
    Matrix sums = Matrix::Zero(g, r.row_scores.cols());
    Vector mass = Vector::Zero(g);
    for (Index i = 0; i < n; ++i) {
      sums.row(group[static_cast<std::size_t>(i)]) += w[i] * r.row_scores.row(i);
      mass[group[static_cast<std::size_t>(i)]] += w[i];
    }
    const Matrix means = mass.cwiseInverse().asDiagonal() * sums;
    CHECK((means - r.analysis.row_scores).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("BGA ratio is one exactly when within-group residuals vanish") {
  const Matrix x = mat({{1, 1}, {1, 1}, {-1, -1}, {-1, -1}});
  const BGAResult r = bga(triplet(x), GroupAssignment({0, 0, 1, 1}, {"a", "b"}), 2);
  CHECK(r.ratio == doctest::Approx(1.0));
  const Matrix y = mat({{1, 1}, {1, 0}, {-1, -1}, {-1, 0}});
  CHECK(bga(triplet(y), GroupAssignment({0, 0, 1, 1}, {"a", "b"}), 2).ratio < 1.0);
}

TEST_CASE("BGA permutation test") {
  const Matrix x = oracle::center(mat({{1, 2}, {4, 3}, {0, 7}, {2, 2}, {5, 1}}), Vector::Constant(5, 0.2));
  const auto single = bga_permutation_test(triplet(x), GroupAssignment({0, 1, 2, 3, 4}, labels("g", 5)), 99, 5);
  CHECK(single.observed == doctest::Approx(1.0));
  CHECK(single.p_value == 1.0);

  std::mt19937_64 rng(8);
  const Matrix y = oracle::center(oracle::random_matrix(rng, 12, 3), Vector::Constant(12, 1.0 / 12));
  const GroupAssignment g({0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2}, {"a", "b", "c"});
  const auto a = bga_permutation_test(triplet(y), g, 299, 9, 1);
  const auto b = bga_permutation_test(triplet(y), g, 299, 9, 3);
  CHECK(a.permuted == b.permuted);
  CHECK(a.observed == doctest::Approx(bga(triplet(y), g, 2).ratio));

  int significant = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix z = oracle::center(oracle::random_matrix(rng, 12, 3), Vector::Constant(12, 1.0 / 12));
    if (bga_permutation_test(triplet(z), g, 199, static_cast<std::uint64_t>(rep)).p_value <= 0.05) ++significant;
  }
  CHECK(significant <= 5);

  Matrix sep = oracle::random_matrix(rng, 12, 3) * 0.1;
  for (Index i = 0; i < 12; ++i) sep(i, 0) += 3.0 * g.group_of(i);
  const auto strong = bga_permutation_test(center_table(triplet(sep)), g, 199, 1);
  CHECK(strong.p_value <= 0.01);
}

TEST_CASE("BGCOIA") {
  std::mt19937_64 rng(51);
  const Index n = 8;
  const Matrix x = oracle::center(oracle::random_matrix(rng, n, 3), Vector::Constant(n, 1.0 / n));
  const Matrix y = oracle::center(oracle::random_matrix(rng, n, 4), Vector::Constant(n, 1.0 / n));
  const std::vector<int> group{0, 1, 0, 1, 0, 1, 0, 1};
  const GroupAssignment g(group, {"s1", "s2"});

  SUBCASE("composition oracle") {
    const BGCOIAResult r = bgcoia(triplet(x), triplet(y), g, 2);
    const Matrix mx = group_means_oracle(x, group, 2);
    const Matrix my = group_means_oracle(y, group, 2);
    const Vector ref = oracle::coinertia_eigenvalues(mx, my, Vector::Ones(3), Vector::Ones(4), vec({0.5, 0.5}));
    CHECK(oracle::max_rel_diff(r.coia.crossed.spectrum.head(ref.size()), ref) < 1e-9);
    CHECK((r.env_barycenters - r.coia.x_scores).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((r.spe_barycenters - r.coia.y_scores).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r.env_rows.rows() == n);
  }
  SUBCASE("identical cubes and singleton groups reduce to coia(X,X)") {
    const GroupAssignment each(std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7}, labels("g", n));
    const BGCOIAResult r = bgcoia(triplet(x), triplet(x), each, 3);
    const CoInertiaResult c = coia(triplet(x), triplet(x), 3);
    CHECK(oracle::max_rel_diff(r.coia.eigenvalues, c.eigenvalues) < 1e-12);
  }
  SUBCASE("row labels must match") {
    const Triplet other = Triplet::uniform(DataTable(y, labels("q", n), labels("c", 4)));
    CHECK_ERROR_KIND(bgcoia(triplet(x), other, g, 2), ErrorKind::RowMismatch);
  }
}

TEST_CASE("STATICO") {
  std::mt19937_64 rng(61);
  const Labels rows = labels("s", 5);
  const Matrix x = oracle::center(oracle::random_matrix(rng, 5, 3), Vector::Constant(5, 0.2));
  const Matrix y = oracle::center(oracle::random_matrix(rng, 5, 4), Vector::Constant(5, 0.2));

  SUBCASE("identical date pairs scale the spectrum by k") {
    const STATICOResult r = statico(PairedKTables(blocks_of({x, x, x}, rows), blocks_of({y, y, y}, rows)), {});
    const Decomposition single = gpca(cross_table(triplet(x), triplet(y)), 2);
    CHECK(oracle::max_rel_diff(r.pta.compromise.analysis.spectrum, 3.0 * single.spectrum) < 1e-9);
    CHECK(std::abs(r.pta.inter.alpha.squaredNorm() - 1.0) < 1e-12);
  }
  SUBCASE("compromise analysis is the gpca of the compromise cross table") {
    const Matrix x2 = oracle::center(oracle::random_matrix(rng, 5, 3), Vector::Constant(5, 0.2));
    const Matrix y2 = oracle::center(oracle::random_matrix(rng, 5, 4), Vector::Constant(5, 0.2));
    const STATICOResult r = statico(PairedKTables(blocks_of({x, x2}, rows), blocks_of({y, y2}, rows)), {});
    const Decomposition again = gpca(r.pta.compromise.table, 2);
    CHECK(again.spectrum == r.pta.compromise.analysis.spectrum);
    CHECK(again.axes == r.pta.compromise.analysis.axes);

    Matrix z = Matrix::Zero(4, 3);
    for (Index t = 0; t < 2; ++t) z += r.pta.inter.alpha[t] * r.cross_tables.table(t).values();
    CHECK((r.pta.compromise.table.values() - z).cwiseAbs().maxCoeff() < 1e-12);

    const Index m = r.species_axes.cols();
    CHECK((r.species_axes.transpose() * r.species_axes - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r.env_sites_by_date.size() == 2);
    CHECK(r.spe_sites_by_date[1].rows() == 5);
    CHECK(r.species_by_date[0].rows() == 4);
    CHECK(r.env_vars_by_date[0].rows() == 3);
  }
  SUBCASE("zero cube") {
    const STATICOResult r =
        statico(PairedKTables(blocks_of({x, x}, rows), blocks_of({Matrix::Zero(5, 4), Matrix::Zero(5, 4)}, rows)), {});
    CHECK(r.pta.compromise.analysis.spectrum.isZero(0.0));
    for (const auto& t : r.pta.typology) CHECK(t.cos2 == 0.0);
  }
  SUBCASE("dates must pair rows") {
    const KTable env = blocks_of({x, x}, rows);
    const KTable spe = blocks_of({y, y}, labels("t", 5));
    CHECK_ERROR_KIND(statico(PairedKTables(env, spe), {}), ErrorKind::RowMismatch);
  }
}

TEST_CASE("COSTATIS") {
  std::mt19937_64 rng(71);
  const Labels rows = labels("s", 6);
  std::vector<Matrix> xs, ys;
  const Matrix base_x = oracle::random_matrix(rng, 6, 3);
  const Matrix base_y = oracle::random_matrix(rng, 6, 4);
  for (int t = 0; t < 3; ++t) {
    xs.push_back(oracle::center(base_x + 0.3 * oracle::random_matrix(rng, 6, 3), Vector::Constant(6, 1.0 / 6)));
    ys.push_back(oracle::center(base_y + 0.3 * oracle::random_matrix(rng, 6, 4), Vector::Constant(6, 1.0 / 6)));
  }
  const KTable env = blocks_of(xs, rows);
  const KTable spe = blocks_of({ys[0], ys[1]}, rows);

  SUBCASE("co-inertia of the two compromises") {
    const COSTATISResult r = costatis(env, spe, {}, 99, 3, 2);
    const CoInertiaResult direct = coia(r.env.compromise.table, r.spe.compromise.table, 2);
    CHECK(direct.eigenvalues == r.coia.eigenvalues);
    CHECK(oracle::rel_diff(r.coia.crossed.spectrum.sum(), r.coia.total_coinertia) < 1e-9);
    for (std::size_t a = 0; a < r.coia.axes.size(); ++a) {
      CHECK(oracle::rel_diff(r.coia.axes[a].covariance * r.coia.axes[a].covariance,
                             r.coia.eigenvalues[static_cast<Index>(a)]) < 1e-9);
    }
    REQUIRE(r.test.has_value());
    CHECK(r.test->observed == doctest::Approx(r.coia.total_coinertia));
    CHECK(r.env_rows.size() == 3);
    CHECK(r.spe_rows.size() == 2);
    const Matrix expect = xs[1].transpose() * (Vector::Constant(6, 1.0 / 6)).asDiagonal() * r.coia.y_scores;
    CHECK((r.env_cols[1] - expect).cwiseAbs().maxCoeff() < 1e-12);

    const COSTATISResult again = costatis(env, spe, {}, 99, 3, 1);
    CHECK(again.test->permuted == r.test->permuted);
    CHECK(again.coia.x_scores == r.coia.x_scores);

    CHECK_FALSE(costatis(env, spe, {}, 0, 0).test.has_value());
  }
  SUBCASE("single-table cubes reduce to plain coia") {
    const COSTATISResult r = costatis(blocks_of({xs[0]}, rows), blocks_of({ys[0]}, rows), {}, 0, 0);
    const CoInertiaResult c = coia(Triplet::uniform(DataTable(xs[0], rows, labels("v", 3))),
                                   Triplet::uniform(DataTable(ys[0], rows, labels("v", 4))), 2);
    CHECK(oracle::max_rel_diff(r.coia.eigenvalues, c.eigenvalues) < 1e-12);
  }
  SUBCASE("rows must agree across every table") {
    const KTable shifted = blocks_of({ys[0], ys[1]}, labels("u", 6));
    CHECK_ERROR_KIND(costatis(env, shifted, {}, 0, 0), ErrorKind::RowMismatch);
  }
}

}  // TEST_SUITE
