#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "griddesigns/arrays.hpp"
#include "griddesigns/grid.hpp"

namespace gd {

struct StabilizerOptions {
  std::uint64_t node_guard = 10'000'000;
  std::size_t max_generators = 256;
  // when the order is at most this, generators are taken from a full element
  // enumeration and re-verified by orbit counting
  std::uint64_t enumeration_guard = 1'000'000;
};

struct StabilizerResult {
  BigInt order;
  std::vector<PermTuple> generators;
  bool generators_complete = false;  // generators came from a full enumeration
  std::uint64_t nodes = 0;
  std::uint64_t prefix_solutions = 0;
};

// Setwise stabilizer of the block inside the product of the per-factor
// symmetric groups. Factors are processed in ascending size order; the
// largest factor is never backtracked, its contribution is counted in closed
// form from fiber matching. The order always comes from this count, never
// from the returned generators.
StabilizerResult stabilizer(const Block& b, const StabilizerOptions& opt = {});

// All stabilizer elements; throws ResourceError when the order exceeds the limit.
std::vector<PermTuple> stabilizer_elements(const Block& b, std::uint64_t limit,
                                           const StabilizerOptions& opt = {});

// Witness mapping b1 onto b2, if the blocks lie in the same group orbit.
std::optional<PermTuple> same_orbit(const Block& b1, const Block& b2,
                                    const StabilizerOptions& opt = {});

// Whether the stabilizer is transitive on the points of the block.
bool is_flag_transitive(const Block& b, const StabilizerOptions& opt = {});

// Orbit of the block under the whole product group, up to the cap.
std::vector<Block> orbit_of(const Block& b, std::uint64_t cap = 1'000'000);

// Arithmetic necessary conditions for a flag-transitive block-transitive
// 2-design with the given shape and block size.
struct FtPrefilter {
  bool pass = false;
  std::int64_t D = 0;                // gcd of the e_i - 1
  std::vector<std::int64_t> y;       // indexed by subset mask; hypothetical uniform values
  std::vector<std::string> reasons;  // failed conditions, empty when pass
};

FtPrefilter ft_prefilter(const GridShape& shape, std::int64_t k);

}  // namespace gd
