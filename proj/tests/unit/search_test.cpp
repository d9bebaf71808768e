#include <doctest.h>

#include <algorithm>

#include "griddesigns/criteria.hpp"
#include "griddesigns/search.hpp"
#include "griddesigns/symmetry.hpp"

using namespace gd;

TEST_CASE("parameter admissibility") {
  CHECK(params_admissible({3, 7}, 5));
  CHECK(!params_admissible({3, 7}, 4));
  // k = 2 would need e_j - 1 >= v - 1, impossible on a genuine grid
  for (auto& e : std::vector<std::vector<int>>{{2, 2}, {3, 4}, {2, 2, 4}})
    CHECK(!params_admissible(e, 2));
  // normalisation: a block and its complement generate the same designs
  CHECK(!params_admissible({2, 2, 4}, 10));
  CHECK(params_admissible({2, 2, 4}, 6));
}

TEST_CASE("the complete admissible table for three factors up to k = 12") {
  auto tuples = param_search(3, 12);
  REQUIRE(tuples.size() == 5);
  auto expect = [&](std::size_t i, std::vector<int> e, std::int64_t k, int v) {
    CHECK(tuples[i].e == e);
    CHECK(tuples[i].k == k);
    CHECK(tuples[i].v == v);
  };
  expect(0, {2, 2, 4}, 6, 16);
  expect(1, {4, 4, 4}, 7, 64);
  expect(2, {2, 2, 14}, 11, 56);
  expect(3, {2, 4, 7}, 11, 56);
  expect(4, {3, 3, 5}, 12, 45);
  for (const auto& t : tuples) {
    CHECK(params_admissible(t.e, t.k));
    CHECK(std::is_sorted(t.e.begin(), t.e.end()));
  }
}

TEST_CASE("a factor-size cap restricts the table") {
  auto tuples = param_search(3, 12, 5);
  REQUIRE(tuples.size() == 3);
  CHECK(tuples[0].e == std::vector<int>{2, 2, 4});
  CHECK(tuples[1].e == std::vector<int>{4, 4, 4});
  CHECK(tuples[2].e == std::vector<int>{3, 3, 5});
}

TEST_CASE("pruned search equals the unpruned oracle on a tiny grid") {
  GridShape shape({2, 2, 3});
  const int k = 3;
  SearchResult res = block_search(shape, k);
  CHECK(res.complete);

  // oracle: every origin-containing block, tested outright, deduped by orbit
  std::vector<Block> reps;
  const std::uint64_t v = shape.point_count();
  for (std::uint64_t i = 1; i < v; ++i)
    for (std::uint64_t j = i + 1; j < v; ++j) {
      Block b(shape, {point_at(shape, 0), point_at(shape, i), point_at(shape, j)});
      if (!check_2design(b, Method::pairs).is_2_design) continue;
      bool fresh = true;
      for (const auto& r : reps)
        if (same_orbit(r, b).has_value()) {
          fresh = false;
          break;
        }
      if (fresh) reps.push_back(std::move(b));
    }

  REQUIRE(res.hits.size() == reps.size());
  for (const auto& r : reps) {
    int matches = 0;
    for (const auto& hit : res.hits)
      if (same_orbit(r, hit.block).has_value()) ++matches;
    CHECK(matches == 1);
  }
}

TEST_CASE("the whole point set is the only block of size v") {
  GridShape shape({2, 2, 2});
  SearchResult res = block_search(shape, 8);
  CHECK(res.complete);
  REQUIRE(res.hits.size() == 1);
  CHECK(res.hits[0].block.k() == 8);
}

TEST_CASE("search hits satisfy the counting identity") {
  GridShape shape({2, 2, 4});
  SearchResult res = block_search(shape, 6);
  CHECK(res.complete);
  BigInt v = shape.v();
  for (const auto& hit : res.hits) {
    BigInt k = hit.block.k();
    CHECK(hit.lambda * v * (v - 1) == k * (k - 1) * hit.b);
    CHECK(hit.report.is_2_design);
  }
}

TEST_CASE("an exhausted node budget is flagged, not thrown") {
  SearchResult res = block_search(GridShape({2, 2, 4}), 6, 50);
  CHECK(!res.complete);
}

TEST_CASE("catalog rows parse and carry the recorded shapes") {
  const auto& rows = catalog();
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].shape == std::vector<int>{2, 2, 4});
  CHECK(rows[4].shape == std::vector<int>{4, 4, 4});
  CHECK(rows[8].shape == std::vector<int>{2, 4, 7});
  CHECK(rows[9].shape == std::vector<int>{3, 3, 5});
  for (const auto& r : rows) CHECK_NOTHROW(Block(GridShape(r.shape), r.block));
}
