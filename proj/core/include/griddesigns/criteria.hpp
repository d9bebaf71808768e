#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "griddesigns/arrays.hpp"
#include "griddesigns/grid.hpp"

namespace gd {

// Number of unordered point pairs inside a block whose coordinates differ
// exactly on the factors of J, for every nonempty J.
struct PairOrbitCounts {
  GridShape shape;
  std::vector<std::int64_t> n;  // indexed by subset mask; entry 0 unused

  std::int64_t at(const CoordSet& J) const;
};

PairOrbitCounts n_direct(const Block& b);
// Same counts via alternating sums of squared cell counts; needs has_full.
PairOrbitCounts n_from_arrays(const ArrayFunction& a);

enum class Method { arrays, pairs, alternating };
std::string method_name(Method m);
Method parse_method(const std::string& name);

struct DesignReport {
  bool is_2_design = false;
  BigInt v;
  std::int64_t k = 0;
  // nonempty proper J at which the quadratic cell-sum condition fails,
  // the same set regardless of the method used
  std::vector<CoordSet> failing_J;
  std::optional<PairOrbitCounts> n;
  std::optional<BigInt> lambda;
  std::optional<BigInt> b;
  std::optional<BigInt> lambda1;
  std::string note;
};

DesignReport check_2design(const Block& b, Method method);

// Reduced test for grid blocks assembled as B' x {0} plus one point in every
// other last-factor layer, over the recursive family shapes: verifies the two
// hypotheses and then only the conditions avoiding the last factor.
DesignReport check_reduced(const Block& bprime, const Block& bs, const GridShape& shape);

struct LambdaTriple {
  BigInt lambda;   // pair multiplicity of the block orbit
  BigInt b;        // number of blocks in the orbit
  BigInt lambda1;  // point multiplicity
};

// Orbit invariants from the setwise stabilizer order. Non-divisible
// intermediate results raise InconsistencyError.
LambdaTriple lambda_of(const Block& blk, const BigInt& stab_order);

// Exact t-design multiplicity of an explicit block list by counting t-subset
// coverage; nullopt when coverage is not constant. Guarded by the number of
// incidence tests.
std::optional<BigInt> t_design_bruteforce(const GridShape& shape, const std::vector<Block>& blocks,
                                          int t, std::uint64_t guard = 100'000'000);

}  // namespace gd
