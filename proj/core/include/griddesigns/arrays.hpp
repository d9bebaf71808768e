#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "griddesigns/grid.hpp"

namespace gd {

// Cell count function of a block: for each factor subset J, counts[J.mask()][i]
// is the number of block points in the i-th cell of J (codec order). Proper
// subsets are always present; the full subset (the per-point indicator) only
// when has_full is set.
struct ArrayFunction {
  GridShape shape;
  std::int64_t k = 0;
  std::vector<std::vector<std::int64_t>> counts;  // indexed by subset mask
  bool has_full = false;

  const std::vector<std::int64_t>& at(const CoordSet& J) const;
};

std::vector<std::int64_t> array_of(const Block& b, const CoordSet& J);
ArrayFunction full_array(const Block& b, bool include_full = false);

// Checks the defining invariants (totals, empty-subset value, marginal
// consistency between nested subsets). Throws InconsistencyError on violation.
void validate_array(const ArrayFunction& a);

// Image of the array under g: the count of a cell moves to the g-image cell.
ArrayFunction translate_array(const ArrayFunction& a, const PermTuple& g);

// Searches for g with translate_array(a, g) == b over every proper subset.
// Exhaustive up to pruning by invariants, so nullopt means no witness exists.
std::optional<PermTuple> arrays_equivalent(const ArrayFunction& a, const ArrayFunction& b,
                                           std::uint64_t node_guard = 10'000'000);

// Common cell value y_J per proper nonempty subset, for blocks whose arrays
// are constant on each J.
struct UniformProfile {
  GridShape shape;
  std::vector<std::int64_t> y;  // indexed by subset mask, proper nonempty J
};

// Present iff every proper nonempty J-array is constant.
std::optional<UniformProfile> uniform_profile(const Block& b);

}  // namespace gd
