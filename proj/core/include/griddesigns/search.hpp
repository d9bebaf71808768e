#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "griddesigns/criteria.hpp"
#include "griddesigns/grid.hpp"

namespace gd {

struct ParamTuple {
  std::vector<int> e;  // ascending
  std::int64_t k = 0;
  BigInt v;
};

// Admissibility: 2(v-1) divides k(k-1)(e_j - 1) for every factor.
bool params_admissible(const std::vector<int>& e, std::int64_t k);

// All admissible ascending factor tuples with k <= k_max, sorted by
// (k, e lexicographic). Complete for each k: the divisibility forces
// k(k-1)(e_j - 1) >= 2(v-1), which bounds every factor.
std::vector<ParamTuple> param_search(int s, std::int64_t k_max,
                                     std::optional<int> e_cap = std::nullopt);

struct SearchHit {
  Block block;
  DesignReport report;
  BigInt stab_order;
  BigInt lambda;
  BigInt b;
};

struct SearchResult {
  std::vector<SearchHit> hits;  // orbit representatives, pairwise not same_orbit
  bool complete = true;
  std::uint64_t candidates_tested = 0;
  std::string dedup_method = "same_orbit";
};

// Exhaustive origin-anchored search for generating blocks of 2-designs,
// pruning partial blocks whose squared cell-count sums already exceed the
// per-subset targets. Guard exhaustion flags the result incomplete.
SearchResult block_search(const GridShape& shape, int k, std::uint64_t guard = 10'000'000);

struct CatalogRow {
  std::vector<int> shape;
  std::vector<Point> block;
  std::int64_t lambda = 0;
};

const std::vector<CatalogRow>& catalog();

struct CatalogRowReport {
  bool ok = false;
  BigInt lambda;
  BigInt b;
  BigInt stab_order;
  bool flag_transitive = false;
  std::string failure;  // empty when ok
};

struct CatalogReport {
  std::vector<CatalogRowReport> rows;
  bool all_ok = false;
};

// Re-derives every catalog row: 2-design by all three methods, stabilizer,
// lambda, flag-transitivity (always false here), shape prefilter (always
// failing here).
CatalogReport verify_catalog();

}  // namespace gd
