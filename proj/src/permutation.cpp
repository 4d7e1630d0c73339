#include "dcube/permutation.hpp"

#include "dcube/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

namespace dcube {

namespace {

// Unbiased draw in [0, bound) by rejection; std::uniform_int_distribution is
// implementation-defined, mt19937_64 output is not.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace

std::vector<int> seeded_permutation(std::uint64_t seed, std::uint64_t index, int n) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

PermutationTestResult permutation_test(double observed, int n, int n_perm, std::uint64_t seed,
                                       const PermutedStatistic& statistic, unsigned threads) {
  if (n_perm < 1) throw Error(ErrorKind::InvalidConfig, "permutation test needs n_perm >= 1");
  if (n < 1) throw Error(ErrorKind::InvalidConfig, "permutation test needs at least one row");

  PermutationTestResult res;
  res.observed = observed;
  res.seed = seed;
  res.n_perm = n_perm;
  res.permuted.assign(static_cast<std::size_t>(n_perm), 0.0);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n_perm));

  auto work = [&](unsigned worker) {
    for (int i = static_cast<int>(worker); i < n_perm; i += static_cast<int>(threads)) {
      const auto perm = seeded_permutation(seed, static_cast<std::uint64_t>(i), n);
      res.permuted[static_cast<std::size_t>(i)] = statistic(perm);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  // Ties within rounding count as "at least as extreme".
  const double cut = observed - 1e-12 * std::abs(observed);
  const auto hits = std::count_if(res.permuted.begin(), res.permuted.end(), [&](double v) { return v >= cut; });
  res.p_value = static_cast<double>(hits + 1) / static_cast<double>(n_perm + 1);
  return res;
}

}  // namespace dcube
