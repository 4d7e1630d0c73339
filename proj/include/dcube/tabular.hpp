#pragma once

// Data model for the duality diagram: labeled tables, row weights, column
// metrics, triplets, groupings and k-tables, plus the preprocessing
// transforms applied before any analysis.

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace dcube {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using Labels = std::vector<std::string>;

/// Labeled numeric matrix; rows are samples and columns are variables.
/// All entries are finite and labels are unique within each axis.
class DataTable {
 public:
  DataTable(Matrix values, Labels row_labels, Labels col_labels);

  /// Table with default labels r1..rn / c1..cp.
  static DataTable unlabeled(Matrix values);

  const Matrix& values() const noexcept { return values_; }
  const Labels& row_labels() const noexcept { return row_labels_; }
  const Labels& col_labels() const noexcept { return col_labels_; }
  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }

  /// Same labels, new values of identical shape.
  DataTable with_values(Matrix values) const;
  DataTable with_row_labels(Labels row_labels) const;

 private:
  Matrix values_;
  Labels row_labels_;
  Labels col_labels_;
};

/// Diagonal metric on the variable space; every entry strictly positive.
class ColumnMetric {
 public:
  explicit ColumnMetric(Vector d);
  static ColumnMetric identity(Index p);

  const Vector& values() const noexcept { return d_; }
  Index size() const noexcept { return d_.size(); }
  bool same_as(const ColumnMetric& other) const;

 private:
  Vector d_;
};

/// Diagonal row weights D_n. Sample weights are positive and sum to one.
/// The crossed triplet of co-inertia uses a column metric (D_q) in this role,
/// which need not sum to one; `from_metric` builds that form.
class RowWeights {
 public:
  static RowWeights uniform(Index n);
  static RowWeights normalized(Vector w);
  static RowWeights from_metric(const ColumnMetric& metric);

  const Vector& values() const noexcept { return w_; }
  Index size() const noexcept { return w_.size(); }
  bool is_normalized() const noexcept { return normalized_; }
  bool same_as(const RowWeights& other) const;

 private:
  RowWeights(Vector w, bool normalized) : w_(std::move(w)), normalized_(normalized) {}
  Vector w_;
  bool normalized_;
};

/// The statistical triplet (X, D_p, D_n).
class Triplet {
 public:
  Triplet(DataTable table, ColumnMetric metric, RowWeights weights);

  /// Identity metric and uniform row weights: an ordinary PCA triplet.
  static Triplet uniform(DataTable table);

  const DataTable& table() const noexcept { return table_; }
  const Matrix& values() const noexcept { return table_.values(); }
  const ColumnMetric& metric() const noexcept { return metric_; }
  const RowWeights& weights() const noexcept { return weights_; }
  Index rows() const noexcept { return table_.rows(); }
  Index cols() const noexcept { return table_.cols(); }

  Triplet with_values(Matrix values) const;
  Triplet with_table(DataTable table) const;

 private:
  DataTable table_;
  ColumnMetric metric_;
  RowWeights weights_;
};

/// Assignment of each of n rows to one of g nonempty groups (0-based).
class GroupAssignment {
 public:
  GroupAssignment(std::vector<int> group_of, Labels group_labels);

  /// Groups numbered in order of first appearance.
  static GroupAssignment from_row_groups(const Labels& per_row);

  int group_of(Index row) const { return group_of_.at(static_cast<std::size_t>(row)); }
  const std::vector<int>& assignments() const noexcept { return group_of_; }
  const Labels& labels() const noexcept { return labels_; }
  Index rows() const noexcept { return static_cast<Index>(group_of_.size()); }
  Index groups() const noexcept { return static_cast<Index>(labels_.size()); }
  std::vector<Index> counts() const;

  GroupAssignment with_assignments(std::vector<int> group_of) const;

 private:
  std::vector<int> group_of_;
  Labels labels_;
};

struct Block {
  std::string name;
  Index rows = 0;
};

/// Ordered split of a stacked table into consecutive row blocks.
class BlockDescriptor {
 public:
  explicit BlockDescriptor(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  Index size() const noexcept { return static_cast<Index>(blocks_.size()); }
  Index total_rows() const;
  Labels names() const;

 private:
  std::vector<Block> blocks_;
};

/// Ordered sequence of triplets sharing column labels and metric.
class KTable {
 public:
  KTable(std::vector<Triplet> tables, Labels names);

  const std::vector<Triplet>& tables() const noexcept { return tables_; }
  const Triplet& table(Index t) const { return tables_.at(static_cast<std::size_t>(t)); }
  const Labels& names() const noexcept { return names_; }
  Index size() const noexcept { return static_cast<Index>(tables_.size()); }
  const ColumnMetric& metric() const { return tables_.front().metric(); }
  const Labels& col_labels() const { return tables_.front().table().col_labels(); }

  /// True when every table has the same row labels and row weights.
  bool rows_aligned() const;

 private:
  std::vector<Triplet> tables_;
  Labels names_;
};

/// Environmental and species k-tables paired date by date.
class PairedKTables {
 public:
  PairedKTables(KTable env, KTable spe);

  const KTable& env() const noexcept { return env_; }
  const KTable& spe() const noexcept { return spe_; }
  Index size() const noexcept { return env_.size(); }

 private:
  KTable env_;
  KTable spe_;
};

// ---------------------------------------------------------------------------
// Weighted column moments (population form, divisor sum of weights).

Vector weighted_means(const Matrix& x, const Vector& w);
Vector weighted_variances(const Matrix& x, const Vector& w);
bool is_centered(const Triplet& t, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Transforms

Triplet center_table(const Triplet& t);
Triplet standardize_table(const Triplet& t);

/// Centering of every block separately, using the block's own weights.
KTable block_center(const KTable& kt);
/// Centering and unit-variance scaling of every block separately.
KTable partial_standardize(const KTable& kt);

DataTable log1p_transform(const DataTable& t);

struct GroupMeans {
  Triplet means;        ///< g x p table of weighted group means
  RowWeights weights;   ///< sum of member row weights (n_k / n when uniform)
};
GroupMeans group_means(const Triplet& t, const GroupAssignment& g);

/// Cuts a stacked triplet into consecutive blocks with uniform weights 1/n_t.
KTable split_blocks(const Triplet& t, const BlockDescriptor& b);
/// As above, relabeling each block's rows by their group label so that blocks
/// sampled on the same sites share row labels.
KTable split_blocks(const Triplet& t, const BlockDescriptor& b, const GroupAssignment& row_ids);

/// Vertical concatenation; weights are rescaled so the stack sums to one.
Triplet stack_blocks(const KTable& kt, const Labels& row_labels);

/// trace(X D_p X^T D_n).
double total_inertia(const Triplet& t);

}  // namespace dcube
