#include <doctest.h>

#include "griddesigns/arrays.hpp"
#include "../support.hpp"

using namespace gd;

namespace {

// The running 4x4 example pair: same arrays, different group orbits.
const GridShape kGrid44({4, 4});
const Block kB(kGrid44, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}});
const Block kBPrime(kGrid44, {{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 0}});

bool arrays_match(const ArrayFunction& a, const ArrayFunction& b) {
  if (a.shape != b.shape || a.k != b.k) return false;
  const std::uint32_t full = (1u << a.shape.s()) - 1u;
  for (std::uint32_t m = 0; m < full; ++m)
    if (a.counts[m] != b.counts[m]) return false;
  return true;
}

}  // namespace

TEST_CASE("cell counts of the 4x4 example pair") {
  CHECK(array_of(kB, CoordSet::single(0, 2)) == std::vector<std::int64_t>{2, 2, 1, 0});
  CHECK(array_of(kB, CoordSet::single(1, 2)) == std::vector<std::int64_t>{1, 2, 2, 0});
  CHECK(array_of(kBPrime, CoordSet::single(0, 2)) == std::vector<std::int64_t>{2, 2, 1, 0});
  CHECK(array_of(kBPrime, CoordSet::single(1, 2)) == std::vector<std::int64_t>{1, 2, 2, 0});
  CHECK(array_of(kB, CoordSet::empty(2)) == std::vector<std::int64_t>{5});
}

TEST_CASE("full array stores every proper subset and validates") {
  ArrayFunction a = full_array(kB);
  CHECK(a.k == 5);
  CHECK(!a.has_full);
  CHECK(a.at(CoordSet::single(0, 2)) == std::vector<std::int64_t>{2, 2, 1, 0});
  CHECK_NOTHROW(validate_array(a));
  CHECK_THROWS_AS(a.at(CoordSet::full(2)), RangeError);
  ArrayFunction with_full = full_array(kB, true);
  CHECK(with_full.has_full);
  std::int64_t total = 0;
  for (std::int64_t x : with_full.at(CoordSet::full(2))) total += x;
  CHECK(total == 5);

  ArrayFunction broken = a;
  broken.counts[1][0] += 1;
  CHECK_THROWS_AS(validate_array(broken), InconsistencyError);
}

TEST_CASE("the array of a block image is the translated array") {
  ts::Rng rng(611);
  for (int rep = 0; rep < 120; ++rep) {
    GridShape shape = ts::random_shape(rng, ts::pick(rng, 2, 4), 5, 300);
    int k = ts::pick(rng, 2, std::min<int>(8, static_cast<int>(shape.point_count())));
    Block b = ts::random_block(rng, shape, k);
    PermTuple g = ts::random_perm_tuple(rng, shape);
    ArrayFunction moved = translate_array(full_array(b, true), g);
    ArrayFunction direct = full_array(gd::apply(g, b), true);
    CHECK(arrays_match(moved, direct));
    CHECK(moved.at(CoordSet::full(shape.s())) == direct.at(CoordSet::full(shape.s())));
  }
}

TEST_CASE("array equivalence finds a witness for the example pair") {
  ArrayFunction a = full_array(kB);
  ArrayFunction b = full_array(kBPrime);
  auto witness = arrays_equivalent(a, b);
  REQUIRE(witness.has_value());
  ArrayFunction moved = translate_array(a, *witness);
  CHECK(arrays_match(moved, b));
  // equivalence is reflexive, and fails across different sizes
  CHECK(arrays_equivalent(a, a).has_value());
  Block small(kGrid44, {{0, 0}, {1, 1}});
  CHECK(!arrays_equivalent(a, full_array(small)).has_value());
}

TEST_CASE("array equivalence is invariant under relabeling") {
  ts::Rng rng(612);
  for (int rep = 0; rep < 40; ++rep) {
    GridShape shape = ts::random_shape(rng, 2, 4, 64);
    int k = ts::pick(rng, 2, std::min<int>(5, static_cast<int>(shape.point_count())));
    Block b = ts::random_block(rng, shape, k);
    PermTuple g = ts::random_perm_tuple(rng, shape);
    auto w = arrays_equivalent(full_array(b), full_array(gd::apply(g, b)));
    CHECK(w.has_value());
  }
}

TEST_CASE("uniform profile exists exactly when every array is constant") {
  GridShape shape({2, 3});
  std::vector<Point> all;
  for (std::uint64_t i = 0; i < shape.point_count(); ++i) all.push_back(point_at(shape, i));
  auto whole = uniform_profile(Block(shape, all));
  REQUIRE(whole.has_value());
  CHECK(whole->y[1] == 3);  // J = {1}: each of the 2 rows holds 3 points
  CHECK(whole->y[2] == 2);
  CHECK(!uniform_profile(kB).has_value());
}
