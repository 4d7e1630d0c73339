#pragma once

// Cube-coupling methods (BGCOIA, STATICO, COSTATIS) and Between-Group Analysis.

#include "dcube/coinertia.hpp"
#include "dcube/pta.hpp"

#include <optional>

namespace dcube {

struct BGAResult {
  Decomposition analysis;   ///< gpca of the group-mean triplet
  Matrix row_scores;        ///< supplementary scores of the original rows
  double between_inertia = 0.0;
  double total_inertia = 0.0;
  double ratio = 0.0;
  std::vector<std::string> warnings;
};

BGAResult bga(const Triplet& t, const GroupAssignment& g, Index n_axes);

/// Between/total inertia ratio under random relabelings of the rows.
PermutationTestResult bga_permutation_test(const Triplet& t, const GroupAssignment& g, int n_perm,
                                           std::uint64_t seed, unsigned threads = 0);

/// Unweighted per-group means of score rows.
Matrix barycenters(const Matrix& scores, const GroupAssignment& g);

struct BGCOIAResult {
  CoInertiaResult coia;     ///< co-inertia of the two group-mean triplets
  Triplet env_means;
  Triplet spe_means;
  Matrix env_rows;          ///< original env rows projected: X D_p A
  Matrix spe_rows;          ///< original species rows projected: Y D_q B
  Matrix env_barycenters;
  Matrix spe_barycenters;
};

/// Co-inertia of the group-mean tables of two stacked tables sharing rows.
BGCOIAResult bgcoia(const Triplet& env, const Triplet& spe, const GroupAssignment& g, Index n_axes);

struct STATICOResult {
  KTable cross_tables;                 ///< Z_k = Y_k^T D_{n_k} X_k with (D_p, D_q)
  PTAResult pta;
  std::vector<Matrix> species_by_date; ///< rows of Z_k projected (q x m)
  std::vector<Matrix> env_vars_by_date;///< columns of Z_k projected (p x m)
  std::vector<Matrix> env_sites_by_date;  ///< X_k D_p U
  std::vector<Matrix> spe_sites_by_date;  ///< Y_k D_q B, B the unit species-side axes
  Matrix species_axes;                 ///< B: q x m, D_q-orthonormal
};

STATICOResult statico(const PairedKTables& pair, const PTAOptions& options);

struct COSTATISResult {
  PTAResult env;
  PTAResult spe;
  CoInertiaResult coia;
  std::optional<PermutationTestResult> test;
  std::vector<Matrix> env_rows;   ///< X_k D_p A per env table
  std::vector<Matrix> spe_rows;   ///< Y_k D_q B per species table
  std::vector<Matrix> env_cols;   ///< X_k^T D_n (Y_c D_q B) per env table
  std::vector<Matrix> spe_cols;   ///< Y_k^T D_n (X_c D_p A) per species table
};

/// n_perm = 0 skips the permutation test.
COSTATISResult costatis(const KTable& env, const KTable& spe, const PTAOptions& options, int n_perm,
                        std::uint64_t seed, unsigned threads = 0);

}  // namespace dcube
