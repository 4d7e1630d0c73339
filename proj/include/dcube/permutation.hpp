#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dcube {

struct PermutationTestResult {
  double observed = 0.0;
  std::vector<double> permuted;
  double p_value = 1.0;  ///< (#{permuted >= observed} + 1) / (n_perm + 1)
  std::uint64_t seed = 0;
  int n_perm = 0;
};

/// Permutation of 0..n-1 for draw `index` of a run seeded with `seed`. The
/// draw depends only on (seed, index), never on scheduling.
std::vector<int> seeded_permutation(std::uint64_t seed, std::uint64_t index, int n);

using PermutedStatistic = std::function<double(std::span<const int>)>;

/// Evaluates `statistic` on n_perm random permutations of n items, spread over
/// `threads` workers (0 = hardware concurrency).
PermutationTestResult permutation_test(double observed, int n, int n_perm, std::uint64_t seed,
                                       const PermutedStatistic& statistic, unsigned threads = 0);

}  // namespace dcube
