#include <doctest.h>

#include "griddesigns/grid.hpp"
#include "../support.hpp"

using namespace gd;

TEST_CASE("shape validation and derived quantities") {
  CHECK_THROWS_AS(GridShape({5}), ShapeError);
  CHECK_THROWS_AS(GridShape({2, 1}), ShapeError);
  GridShape g({2, 3});
  CHECK(g.s() == 2);
  CHECK(g.v() == 6);
  CHECK(g.point_count() == 6);
  CHECK(g.group_order() == 12);  // 2! * 3!
  // factor order is preserved as given
  CHECK(GridShape({4, 2}).factor(0) == 4);
}

TEST_CASE("point codec is mixed radix with the last coordinate fastest") {
  GridShape shape({2, 2, 4});
  CHECK(point_index(shape, {1, 1, 3}) == 15);
  CHECK(point_index(shape, {0, 0, 0}) == 0);
  CHECK(point_index(shape, {0, 0, 1}) == 1);
  CHECK(point_index(shape, {0, 1, 0}) == 4);
  for (std::uint64_t i = 0; i < shape.point_count(); ++i)
    CHECK(point_index(shape, point_at(shape, i)) == i);
  CHECK_THROWS_AS(point_index(shape, {0, 0, 4}), RangeError);
  CHECK_THROWS_AS(point_at(shape, 16), RangeError);
}

TEST_CASE("cell codec and enumeration agree") {
  GridShape shape({3, 2, 4});
  for (std::uint32_t m = 1; m < 8; ++m) {
    CoordSet J(m, 3);
    auto cells = enumerate_cells(shape, J);
    CHECK(cells.size() == cell_count(shape, J));
    for (std::uint64_t i = 0; i < cells.size(); ++i) {
      CHECK(cell_index(shape, J, cells[i]) == i);
      CHECK(cell_at(shape, J, i) == cells[i]);
    }
  }
  CellGeometry geo = cell_geometry(shape, CoordSet::of({0, 2}, 3));
  CHECK(geo.d == 12);
  CHECK(geo.c == 2);
  CHECK(geo.c * geo.d == shape.v());
}

TEST_CASE("coordinate subsets render 1-based and round-trip through parse") {
  CoordSet J = CoordSet::of({0, 2}, 3);
  CHECK(J.to_string() == "{1,3}");
  CHECK(CoordSet::parse("{1,3}", 3) == J);
  CHECK(CoordSet::parse("1,3", 3) == J);
  CHECK(CoordSet::parse(" { 1 , 3 } ", 3) == J);
  CHECK(CoordSet::parse("", 3).is_empty());
  CHECK(J.complement() == CoordSet::single(1, 3));
  CHECK(J.complement().complement() == J);
  CHECK(J.members() == std::vector<int>{0, 2});
  CHECK(CoordSet::full(3).is_full());
  CHECK_THROWS_AS(CoordSet::parse("0", 3), RangeError);
  CHECK_THROWS_AS(CoordSet::parse("4", 3), RangeError);
  CHECK_THROWS_AS(CoordSet::parse("1,,2", 3), RangeError);
}

TEST_CASE("projection selects coordinates in ascending position order") {
  Point p{0, 1, 3};
  CHECK(project(p, CoordSet::of({1, 2}, 3)) == Cell{1, 3});
  CHECK(project(p, CoordSet::empty(3)).empty());
  CHECK(project(p, CoordSet::full(3)) == p);
  CHECK_THROWS_AS(project(p, CoordSet::full(2)), ShapeError);
}

TEST_CASE("group elements compose left to right and invert") {
  ts::Rng rng(20240901);
  for (int rep = 0; rep < 50; ++rep) {
    GridShape shape = ts::random_shape(rng, ts::pick(rng, 2, 4), 5, 400);
    PermTuple g = ts::random_perm_tuple(rng, shape);
    PermTuple h = ts::random_perm_tuple(rng, shape);
    validate_perm_tuple(shape, g);
    CHECK(compose(g, g.inverse()).is_identity());
    CHECK(compose(g.inverse(), g).is_identity());
    Point p = point_at(shape, ts::pick(rng, 0, static_cast<int>(shape.point_count()) - 1));
    CHECK(gd::apply(compose(g, h), p) == gd::apply(h, gd::apply(g, p)));
    // projection commutes with the action restricted to the subset
    CoordSet J(static_cast<std::uint32_t>(ts::pick(rng, 0, (1 << shape.s()) - 1)), shape.s());
    CHECK(project(gd::apply(g, p), J) == apply_on_cell(g, J, project(p, J)));
  }
}

TEST_CASE("malformed permutation tuples are rejected") {
  GridShape shape({2, 3});
  PermTuple g = PermTuple::identity(shape);
  g.perms[1] = {0, 0, 2};
  CHECK_THROWS_AS(validate_perm_tuple(shape, g), RangeError);
  g.perms.pop_back();
  CHECK_THROWS_AS(validate_perm_tuple(shape, g), ShapeError);
}

TEST_CASE("blocks keep points sorted by index and reject duplicates") {
  GridShape shape({2, 2, 4});
  Block b(shape, {{1, 1, 3}, {0, 0, 0}, {0, 1, 0}});
  CHECK(b.k() == 3);
  CHECK(b.points().front() == Point{0, 0, 0});
  CHECK(b.points().back() == Point{1, 1, 3});
  CHECK(b.contains({0, 1, 0}));
  CHECK(!b.contains({1, 0, 0}));
  CHECK_THROWS_AS(Block(shape, {{0, 0, 0}, {0, 0, 0}}), RangeError);
}

TEST_CASE("applying a group element permutes the block") {
  GridShape shape({2, 3});
  Block b(shape, {{0, 0}, {0, 1}, {1, 2}});
  PermTuple g = PermTuple::identity(shape);
  g.perms[0] = {1, 0};
  g.perms[1] = {2, 0, 1};
  Block image = gd::apply(g, b);
  CHECK(image == Block(shape, {{1, 2}, {1, 0}, {0, 1}}));
  CHECK(gd::apply(g.inverse(), image) == b);
}
