#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "griddesigns/bigint.hpp"

namespace gd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed shapes, dimension mismatches between arguments.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Out-of-range coordinates, indices, or parameters.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A construction failed one of its built-in self checks.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A guard (node budget, candidate budget, size cap) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Internally contradictory results, e.g. a divisibility that must hold but does not.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

using Coord = int;
using Point = std::vector<Coord>;  // full coordinate tuple, length s
using Cell = std::vector<Coord>;   // coordinates restricted to a CoordSet, ascending factor order

constexpr int kMaxFactors = 16;

// Factor sizes e_1..e_s of a grid E_1 x ... x E_s. Order is preserved as given;
// shapes are not sorted behind the caller's back.
class GridShape {
 public:
  explicit GridShape(std::vector<int> factors);

  int s() const { return static_cast<int>(e_.size()); }
  int factor(int i) const { return e_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& factors() const { return e_; }

  BigInt v() const;
  // v as a machine integer; throws RangeError when it does not fit.
  std::uint64_t point_count() const;
  BigInt group_order() const;  // product of e_i!

  bool operator==(const GridShape& o) const { return e_ == o.e_; }
  bool operator!=(const GridShape& o) const { return !(*this == o); }

 private:
  std::vector<int> e_;
};

// Subset of factor positions, stored as a bitmask over 0-based positions.
// Rendered 1-based ascending, e.g. "{1,3}".
class CoordSet {
 public:
  CoordSet() : mask_(0), s_(0) {}
  CoordSet(std::uint32_t mask, int s);

  static CoordSet empty(int s) { return CoordSet(0, s); }
  static CoordSet full(int s);
  static CoordSet single(int pos, int s);
  static CoordSet of(std::initializer_list<int> positions, int s);  // 0-based
  // Parses the external 1-based form, e.g. "1,3" or "{1,3}".
  static CoordSet parse(const std::string& text, int s);

  std::uint32_t mask() const { return mask_; }
  int s() const { return s_; }
  int size() const;
  bool is_empty() const { return mask_ == 0; }
  bool is_full() const;
  bool contains(int pos) const { return (mask_ >> pos) & 1u; }

  CoordSet complement() const;
  CoordSet with(int pos) const { return CoordSet(mask_ | (1u << pos), s_); }
  CoordSet without(int pos) const { return CoordSet(mask_ & ~(1u << pos), s_); }

  std::vector<int> members() const;  // ascending, 0-based
  std::string to_string() const;

  bool operator==(const CoordSet& o) const { return mask_ == o.mask_ && s_ == o.s_; }
  bool operator!=(const CoordSet& o) const { return !(*this == o); }
  bool operator<(const CoordSet& o) const { return mask_ < o.mask_; }

 private:
  std::uint32_t mask_;
  int s_;
};

// Element of the direct product of symmetric groups: one permutation per factor,
// perms[i][x] = image of value x in factor i.
struct PermTuple {
  std::vector<std::vector<int>> perms;

  static PermTuple identity(const GridShape& shape);
  PermTuple inverse() const;
  bool is_identity() const;

  bool operator==(const PermTuple& o) const { return perms == o.perms; }
  bool operator<(const PermTuple& o) const { return perms < o.perms; }
};

// first, then second.
PermTuple compose(const PermTuple& first, const PermTuple& second);
void validate_perm_tuple(const GridShape& shape, const PermTuple& g);

// Block: a set of points, kept sorted by point index, duplicates rejected.
class Block {
 public:
  Block(GridShape shape, std::vector<Point> points);

  const GridShape& shape() const { return shape_; }
  const std::vector<Point>& points() const { return points_; }
  int k() const { return static_cast<int>(points_.size()); }
  bool contains(const Point& p) const;

  bool operator==(const Block& o) const { return shape_ == o.shape_ && points_ == o.points_; }
  bool operator<(const Block& o) const { return points_ < o.points_; }

 private:
  GridShape shape_;
  std::vector<Point> points_;
};

Cell project(const Point& p, const CoordSet& J);
Point apply(const PermTuple& g, const Point& p);
Block apply(const PermTuple& g, const Block& b);
Cell apply_on_cell(const PermTuple& g, const CoordSet& J, const Cell& c);

struct CellGeometry {
  BigInt c;  // cell size: product of e_i over the complement of J
  BigInt d;  // number of cells: product of e_i over J
};
CellGeometry cell_geometry(const GridShape& shape, const CoordSet& J);
std::uint64_t cell_count(const GridShape& shape, const CoordSet& J);  // d as machine int

// Mixed-radix codec over the members of J in ascending factor order, last
// (highest) member varying fastest. Point codec is the J = full case.
std::uint64_t cell_index(const GridShape& shape, const CoordSet& J, const Cell& c);
Cell cell_at(const GridShape& shape, const CoordSet& J, std::uint64_t index);
std::uint64_t point_index(const GridShape& shape, const Point& p);
Point point_at(const GridShape& shape, std::uint64_t index);

void for_each_cell(const GridShape& shape, const CoordSet& J,
                   const std::function<void(std::uint64_t, const Cell&)>& fn);
std::vector<Cell> enumerate_cells(const GridShape& shape, const CoordSet& J);

}  // namespace gd
