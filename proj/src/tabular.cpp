#include "dcube/tabular.hpp"

#include "dcube/errors.hpp"

#include <cmath>
#include <map>
#include <unordered_set>

namespace dcube {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr double kSameTol = 1e-12;

void check_unique(const Labels& labels, const char* axis) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(ErrorKind::DuplicateLabel, std::string(axis) + " label '" + l + "'");
    }
  }
}

Labels numbered(const char* prefix, Index n) {
  Labels out;
  out.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

bool close_vectors(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kSameTol * std::max(1.0, std::abs(a[i]))) return false;
  }
  return true;
}

// Variance below this fraction of the squared magnitude counts as constant.
bool negligible_variance(double var, double magnitude) {
  const double scale = 1e-12 * std::max(magnitude, 1e-300);
  return var <= scale * scale || var <= 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------

DataTable::DataTable(Matrix values, Labels row_labels, Labels col_labels)
    : values_(std::move(values)), row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
  if (static_cast<Index>(row_labels_.size()) != values_.rows() ||
      static_cast<Index>(col_labels_.size()) != values_.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "label counts " + std::to_string(row_labels_.size()) + "x" +
                    std::to_string(col_labels_.size()) + " do not match matrix " +
                    std::to_string(values_.rows()) + "x" + std::to_string(values_.cols()));
  }
  if (!values_.allFinite()) throw Error(ErrorKind::NonFiniteEntry, "table contains NaN or Inf");
  check_unique(row_labels_, "row");
  check_unique(col_labels_, "column");
}

DataTable DataTable::unlabeled(Matrix values) {
  auto rows = numbered("r", values.rows());
  auto cols = numbered("c", values.cols());
  return DataTable(std::move(values), std::move(rows), std::move(cols));
}

DataTable DataTable::with_values(Matrix values) const {
  if (values.rows() != rows() || values.cols() != cols()) {
    throw Error(ErrorKind::DimensionMismatch, "replacement values change the table shape");
  }
  return DataTable(std::move(values), row_labels_, col_labels_);
}

DataTable DataTable::with_row_labels(Labels row_labels) const {
  return DataTable(values_, std::move(row_labels), col_labels_);
}

// ---------------------------------------------------------------------------

ColumnMetric::ColumnMetric(Vector d) : d_(std::move(d)) {
  for (Index j = 0; j < d_.size(); ++j) {
    if (!(d_[j] > 0.0) || !std::isfinite(d_[j])) {
      throw Error(ErrorKind::InvalidWeights, "column metric entries must be positive");
    }
  }
}

ColumnMetric ColumnMetric::identity(Index p) { return ColumnMetric(Vector::Ones(p)); }

bool ColumnMetric::same_as(const ColumnMetric& other) const { return close_vectors(d_, other.d_); }

RowWeights RowWeights::uniform(Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidWeights, "row weights need at least one row");
  return RowWeights(Vector::Constant(n, 1.0 / static_cast<double>(n)), true);
}

RowWeights RowWeights::normalized(Vector w) {
  if (w.size() < 1) throw Error(ErrorKind::InvalidWeights, "row weights need at least one row");
  for (Index i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
      throw Error(ErrorKind::InvalidWeights, "row weights must be positive");
    }
  }
  if (std::abs(w.sum() - 1.0) > kWeightSumTol) {
    throw Error(ErrorKind::InvalidWeights, "row weights must sum to 1");
  }
  return RowWeights(std::move(w), true);
}

RowWeights RowWeights::from_metric(const ColumnMetric& metric) { return RowWeights(metric.values(), false); }

bool RowWeights::same_as(const RowWeights& other) const { return close_vectors(w_, other.w_); }

// ---------------------------------------------------------------------------

Triplet::Triplet(DataTable table, ColumnMetric metric, RowWeights weights)
    : table_(std::move(table)), metric_(std::move(metric)), weights_(std::move(weights)) {
  if (metric_.size() != table_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "column metric length " + std::to_string(metric_.size()) +
                                                  " != " + std::to_string(table_.cols()) + " columns");
  }
  if (weights_.size() != table_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "row weight length " + std::to_string(weights_.size()) +
                                                  " != " + std::to_string(table_.rows()) + " rows");
  }
}

Triplet Triplet::uniform(DataTable table) {
  const Index n = table.rows();
  const Index p = table.cols();
  return Triplet(std::move(table), ColumnMetric::identity(p), RowWeights::uniform(n));
}

Triplet Triplet::with_values(Matrix values) const {
  return Triplet(table_.with_values(std::move(values)), metric_, weights_);
}

Triplet Triplet::with_table(DataTable table) const { return Triplet(std::move(table), metric_, weights_); }

// ---------------------------------------------------------------------------

GroupAssignment::GroupAssignment(std::vector<int> group_of, Labels group_labels)
    : group_of_(std::move(group_of)), labels_(std::move(group_labels)) {
  check_unique(labels_, "group");
  std::vector<Index> n(labels_.size(), 0);
  for (int k : group_of_) {
    if (k < 0 || k >= static_cast<int>(labels_.size())) {
      throw Error(ErrorKind::EmptyGroup, "group index " + std::to_string(k) + " out of range");
    }
    ++n[static_cast<std::size_t>(k)];
  }
  for (std::size_t k = 0; k < n.size(); ++k) {
    if (n[k] == 0) throw Error(ErrorKind::EmptyGroup, "group '" + labels_[k] + "' has no rows");
  }
}

GroupAssignment GroupAssignment::from_row_groups(const Labels& per_row) {
  std::map<std::string, int> index;
  Labels labels;
  std::vector<int> group_of;
  group_of.reserve(per_row.size());
  for (const auto& g : per_row) {
    auto [it, inserted] = index.emplace(g, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(g);
    group_of.push_back(it->second);
  }
  return GroupAssignment(std::move(group_of), std::move(labels));
}

std::vector<Index> GroupAssignment::counts() const {
  std::vector<Index> n(labels_.size(), 0);
  for (int k : group_of_) ++n[static_cast<std::size_t>(k)];
  return n;
}

GroupAssignment GroupAssignment::with_assignments(std::vector<int> group_of) const {
  return GroupAssignment(std::move(group_of), labels_);
}

// ---------------------------------------------------------------------------

BlockDescriptor::BlockDescriptor(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorKind::BlockSizeMismatch, "no blocks given");
  Labels names;
  for (const auto& b : blocks_) {
    if (b.rows < 1) throw Error(ErrorKind::BlockSizeMismatch, "block '" + b.name + "' has no rows");
    names.push_back(b.name);
  }
  check_unique(names, "block");
}

Index BlockDescriptor::total_rows() const {
  Index n = 0;
  for (const auto& b : blocks_) n += b.rows;
  return n;
}

Labels BlockDescriptor::names() const {
  Labels out;
  for (const auto& b : blocks_) out.push_back(b.name);
  return out;
}

// ---------------------------------------------------------------------------

KTable::KTable(std::vector<Triplet> tables, Labels names) : tables_(std::move(tables)), names_(std::move(names)) {
  if (tables_.empty()) throw Error(ErrorKind::TooFewTables, "k-table has no tables");
  if (names_.size() != tables_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "k-table needs one name per table");
  }
  check_unique(names_, "table");
  const auto& first = tables_.front();
  for (std::size_t t = 1; t < tables_.size(); ++t) {
    const auto& cur = tables_[t];
    if (cur.table().col_labels() != first.table().col_labels()) {
      throw Error(ErrorKind::ColumnMismatch, "table '" + names_[t] + "' has different column labels");
    }
    if (!cur.metric().same_as(first.metric())) {
      throw Error(ErrorKind::ColumnMismatch, "table '" + names_[t] + "' has a different column metric");
    }
  }
}

bool KTable::rows_aligned() const {
  const auto& first = tables_.front();
  for (const auto& t : tables_) {
    if (t.table().row_labels() != first.table().row_labels()) return false;
    if (!t.weights().same_as(first.weights())) return false;
  }
  return true;
}

PairedKTables::PairedKTables(KTable env, KTable spe) : env_(std::move(env)), spe_(std::move(spe)) {
  if (env_.size() != spe_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "paired k-tables have " + std::to_string(env_.size()) + " and " +
                                                  std::to_string(spe_.size()) + " tables");
  }
  for (Index t = 0; t < env_.size(); ++t) {
    const auto& x = env_.table(t);
    const auto& y = spe_.table(t);
    if (x.table().row_labels() != y.table().row_labels() || !x.weights().same_as(y.weights())) {
      throw Error(ErrorKind::RowMismatch, "rows of table '" + env_.names()[static_cast<std::size_t>(t)] +
                                              "' differ between the two k-tables");
    }
  }
}

// ---------------------------------------------------------------------------

Vector weighted_means(const Matrix& x, const Vector& w) {
  return (x.transpose() * w) / w.sum();
}

Vector weighted_variances(const Matrix& x, const Vector& w) {
  const Vector mean = weighted_means(x, w);
  const Matrix c = x.rowwise() - mean.transpose();
  return (c.array().square().matrix().transpose() * w) / w.sum();
}

bool is_centered(const Triplet& t, double tol) {
  const Vector mean = weighted_means(t.values(), t.weights().values());
  const double scale = std::max(1.0, t.values().cwiseAbs().maxCoeff());
  return mean.cwiseAbs().maxCoeff() <= tol * scale;
}

namespace {

Matrix centered_values(const Matrix& x, const Vector& w) {
  const Vector mean = weighted_means(x, w);
  return x.rowwise() - mean.transpose();
}

Matrix standardized_values(const Matrix& x, const Vector& w, const Labels& cols, const std::string& context) {
  Matrix c = centered_values(x, w);
  const Vector var = (c.array().square().matrix().transpose() * w) / w.sum();
  for (Index j = 0; j < c.cols(); ++j) {
    if (negligible_variance(var[j], x.col(j).cwiseAbs().maxCoeff())) {
      throw Error(ErrorKind::ZeroVarianceColumn, "column '" + cols[static_cast<std::size_t>(j)] + "'" + context);
    }
    c.col(j) /= std::sqrt(var[j]);
  }
  return c;
}

template <class F>
KTable map_blocks(const KTable& kt, F&& f) {
  std::vector<Triplet> out;
  out.reserve(kt.tables().size());
  for (Index t = 0; t < kt.size(); ++t) out.push_back(f(kt.table(t), kt.names()[static_cast<std::size_t>(t)]));
  return KTable(std::move(out), kt.names());
}

}  // namespace

Triplet center_table(const Triplet& t) {
  return t.with_values(centered_values(t.values(), t.weights().values()));
}

Triplet standardize_table(const Triplet& t) {
  return t.with_values(standardized_values(t.values(), t.weights().values(), t.table().col_labels(), ""));
}

KTable block_center(const KTable& kt) {
  return map_blocks(kt, [](const Triplet& t, const std::string&) { return center_table(t); });
}

KTable partial_standardize(const KTable& kt) {
  return map_blocks(kt, [](const Triplet& t, const std::string& name) {
    return t.with_values(
        standardized_values(t.values(), t.weights().values(), t.table().col_labels(), " in block '" + name + "'"));
  });
}

DataTable log1p_transform(const DataTable& t) {
  if ((t.values().array() < 0.0).any()) {
    throw Error(ErrorKind::NegativeEntry, "log1p requires nonnegative entries");
  }
  return t.with_values(t.values().array().log1p().matrix());
}

GroupMeans group_means(const Triplet& t, const GroupAssignment& g) {
  if (g.rows() != t.rows()) {
    throw Error(ErrorKind::RowMismatch, "grouping covers " + std::to_string(g.rows()) + " rows, table has " +
                                            std::to_string(t.rows()));
  }
  const Index ng = g.groups();
  const Vector& w = t.weights().values();
  Matrix sums = Matrix::Zero(ng, t.cols());
  Vector mass = Vector::Zero(ng);
  for (Index i = 0; i < t.rows(); ++i) {
    const int k = g.group_of(i);
    sums.row(k) += w[i] * t.values().row(i);
    mass[k] += w[i];
  }
  for (Index k = 0; k < ng; ++k) {
    if (!(mass[k] > 0.0)) throw Error(ErrorKind::EmptyGroup, "group '" + g.labels()[static_cast<std::size_t>(k)] + "'");
    sums.row(k) /= mass[k];
  }
  // Mass-preserving weights; renormalized to absorb rounding.
  RowWeights weights = RowWeights::normalized(mass / mass.sum());
  Triplet means(DataTable(std::move(sums), g.labels(), t.table().col_labels()), t.metric(), weights);
  return GroupMeans{std::move(means), std::move(weights)};
}

namespace {

KTable split_impl(const Triplet& t, const BlockDescriptor& b, const GroupAssignment* row_ids) {
  if (b.total_rows() != t.rows()) {
    throw Error(ErrorKind::BlockSizeMismatch, "blocks cover " + std::to_string(b.total_rows()) +
                                                  " rows, table has " + std::to_string(t.rows()));
  }
  if (row_ids != nullptr && row_ids->rows() != t.rows()) {
    throw Error(ErrorKind::RowMismatch, "row identities do not cover the stacked table");
  }
  std::vector<Triplet> tables;
  Index start = 0;
  for (const auto& blk : b.blocks()) {
    Labels rows;
    for (Index i = start; i < start + blk.rows; ++i) {
      rows.push_back(row_ids ? row_ids->labels()[static_cast<std::size_t>(row_ids->group_of(i))]
                             : t.table().row_labels()[static_cast<std::size_t>(i)]);
    }
    DataTable part(t.values().middleRows(start, blk.rows), std::move(rows), t.table().col_labels());
    tables.emplace_back(std::move(part), t.metric(), RowWeights::uniform(blk.rows));
    start += blk.rows;
  }
  return KTable(std::move(tables), b.names());
}

}  // namespace

KTable split_blocks(const Triplet& t, const BlockDescriptor& b) { return split_impl(t, b, nullptr); }

KTable split_blocks(const Triplet& t, const BlockDescriptor& b, const GroupAssignment& row_ids) {
  return split_impl(t, b, &row_ids);
}

Triplet stack_blocks(const KTable& kt, const Labels& row_labels) {
  Index n = 0;
  for (const auto& t : kt.tables()) n += t.rows();
  Matrix values(n, kt.table(0).cols());
  Vector w(n);
  Index start = 0;
  for (const auto& t : kt.tables()) {
    values.middleRows(start, t.rows()) = t.values();
    w.segment(start, t.rows()) = t.weights().values() * (static_cast<double>(t.rows()) / static_cast<double>(n));
    start += t.rows();
  }
  w /= w.sum();
  return Triplet(DataTable(std::move(values), row_labels, kt.col_labels()), kt.metric(), RowWeights::normalized(w));
}

double total_inertia(const Triplet& t) {
  const Vector& w = t.weights().values();
  const Vector& d = t.metric().values();
  // sum_i sum_j w_i d_j x_ij^2
  return (w.transpose() * t.values().array().square().matrix() * d).value();
}

}  // namespace dcube
