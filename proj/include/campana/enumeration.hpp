#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "campana/orbifold.hpp"

namespace campana {

using SmallPoint = std::vector<std::int64_t>;

/// The m-full integers in [1, B], ascending, from the products
/// a_m^m a_{m+1}^{m+1} ... a_{2m-1}^{2m-1} with duplicates removed.
std::vector<std::uint64_t> m_full_stream(unsigned m, std::uint64_t bound);

/// Worker count for the parallel enumerations: CAMPANA_THREADS if set, else the
/// hardware concurrency.
unsigned worker_count();

/// Visits every Campana point (S empty) of naive height <= B on a standard arrangement
/// with finite multiplicities, once per projective point (first nonzero coordinate
/// positive). Single-threaded; visiting order is unspecified.
void for_each_campana_point(const HyperplaneOrbifold& orbifold, std::int64_t bound,
                            const std::function<void(const SmallPoint&)>& visit);

/// All Campana points of height <= B ordered by height, then lexicographically.
std::vector<SmallPoint> enumerate_campana(const HyperplaneOrbifold& orbifold, std::int64_t bound);

std::uint64_t count_campana(const HyperplaneOrbifold& orbifold, std::int64_t bound);

/// All primitive points of height <= B (first nonzero coordinate positive) accepted by
/// is_global_campana with S empty. Reference filter; slow.
std::vector<SmallPoint> brute_force_campana(const HyperplaneOrbifold& orbifold, std::int64_t bound);

std::int64_t height(const SmallPoint& x);

struct DensityReport {
  std::uint64_t prime = 0;
  unsigned depth = 0;
  std::uint64_t total = 0;
  /// Point counts per canonical class of P^n(Z/p^k) (classes never hit are absent).
  std::map<std::vector<std::uint64_t>, std::uint64_t> histogram;
  /// Classes passing the truncated-valuation test, canonical form, ascending.
  std::vector<std::vector<std::uint64_t>> feasible_classes;
  std::size_t attained_feasible = 0;
  std::uint64_t infeasible_hits = 0;

  bool all_feasible_attained() const { return attained_feasible == feasible_classes.size(); }
};

DensityReport density_stats(const HyperplaneOrbifold& orbifold, std::int64_t bound, std::uint64_t p, unsigned k);

}  // namespace campana
