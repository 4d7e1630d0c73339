#pragma once

// Partial Triadic Analysis: interstructure, compromise and intrastructure of
// a k-table whose tables share rows and columns.

#include "dcube/gpca.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dcube {

enum class InterstructureMode { Cov, Rv };

double covv(const Triplet& a, const Triplet& b);
double varv(const Triplet& a);
double rv(const Triplet& a, const Triplet& b);

struct Interstructure {
  InterstructureMode mode = InterstructureMode::Cov;
  Matrix similarity;          ///< k x k, Covv or Rv
  Vector alpha;               ///< dominant unit eigenvector, sum(alpha) > 0
  double first_eigenvalue = 0.0;
  Vector eigenvalues;         ///< full spectrum of the similarity matrix
  std::optional<std::string> warning;  ///< set when alpha has mixed signs
};

/// Fails with MixedSignEigenvector when `strict` and the weights mix signs;
/// otherwise the condition is reported through `Interstructure::warning`.
Interstructure interstructure(const KTable& kt, InterstructureMode mode, bool strict = false);

struct Compromise {
  Triplet table;
  Decomposition analysis;
};

Compromise build_compromise(const KTable& kt, const Vector& alpha, Index n_axes);

std::vector<Matrix> intrastructure_rows(const KTable& kt, const Compromise& c);
std::vector<Matrix> intrastructure_cols(const KTable& kt, const Compromise& c);

struct TypologicalValue {
  double weight = 0.0;
  double cos2 = 0.0;
  double inertia = 0.0;
};
std::vector<TypologicalValue> typological_values(const KTable& kt, const Compromise& c, const Vector& alpha);

struct PTAOptions {
  InterstructureMode mode = InterstructureMode::Cov;
  Index n_axes = 2;
  bool strict_signs = false;
};

struct PTAResult {
  Interstructure inter;
  Compromise compromise;
  std::vector<Matrix> rows;  ///< R_k, n x m
  std::vector<Matrix> cols;  ///< C_k, p x m
  std::vector<TypologicalValue> typology;
  Labels names;
};

/// Requires k >= 2 tables with identical rows.
PTAResult pta(const KTable& kt, const PTAOptions& options);

namespace detail {
/// PTA without the k >= 2 requirement; a single table is its own compromise.
PTAResult pta_any(const KTable& kt, const PTAOptions& options);
}  // namespace detail

}  // namespace dcube
