#include "griddesigns/grid.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace gd {

GridShape::GridShape(std::vector<int> factors) : e_(std::move(factors)) {
  if (e_.size() < 2) throw ShapeError("grid needs at least two factors");
  if (e_.size() > kMaxFactors) throw ShapeError("too many factors");
  for (int x : e_)
    if (x < 2) throw ShapeError("every factor size must be at least 2");
}

BigInt GridShape::v() const {
  BigInt r = 1;
  for (int x : e_) r *= x;
  return r;
}

std::uint64_t GridShape::point_count() const {
  BigInt w = v();
  if (w > std::numeric_limits<std::int64_t>::max())
    throw RangeError("point count exceeds machine range");
  return static_cast<std::uint64_t>(w);
}

BigInt GridShape::group_order() const {
  BigInt r = 1;
  for (int x : e_) r *= factorial(static_cast<unsigned>(x));
  return r;
}

CoordSet::CoordSet(std::uint32_t mask, int s) : mask_(mask), s_(s) {
  if (s < 0 || s > kMaxFactors) throw ShapeError("bad subset dimension");
  if (s < 32 && (mask >> s) != 0) throw RangeError("subset mask out of range");
}

CoordSet CoordSet::full(int s) { return CoordSet((1u << s) - 1u, s); }

CoordSet CoordSet::single(int pos, int s) {
  if (pos < 0 || pos >= s) throw RangeError("factor position out of range");
  return CoordSet(1u << pos, s);
}

CoordSet CoordSet::of(std::initializer_list<int> positions, int s) {
  std::uint32_t m = 0;
  for (int p : positions) {
    if (p < 0 || p >= s) throw RangeError("factor position out of range");
    m |= 1u << p;
  }
  return CoordSet(m, s);
}

CoordSet CoordSet::parse(const std::string& text, int s) {
  std::string t;
  for (char ch : text)
    if (ch != '{' && ch != '}' && ch != ' ') t.push_back(ch);
  std::uint32_t m = 0;
  if (!t.empty()) {
    std::istringstream in(t);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) throw RangeError("malformed factor list: " + text);
      int p = std::stoi(tok);
      if (p < 1 || p > s) throw RangeError("factor position out of range: " + tok);
      m |= 1u << (p - 1);
    }
  }
  return CoordSet(m, s);
}

int CoordSet::size() const { return __builtin_popcount(mask_); }

bool CoordSet::is_full() const { return mask_ == (1u << s_) - 1u; }

CoordSet CoordSet::complement() const { return CoordSet(~mask_ & ((1u << s_) - 1u), s_); }

std::vector<int> CoordSet::members() const {
  std::vector<int> r;
  for (int i = 0; i < s_; ++i)
    if (contains(i)) r.push_back(i);
  return r;
}

std::string CoordSet::to_string() const {
  std::string r = "{";
  bool first = true;
  for (int i = 0; i < s_; ++i)
    if (contains(i)) {
      if (!first) r += ',';
      r += std::to_string(i + 1);
      first = false;
    }
  r += '}';
  return r;
}

PermTuple PermTuple::identity(const GridShape& shape) {
  PermTuple g;
  g.perms.resize(static_cast<std::size_t>(shape.s()));
  for (int i = 0; i < shape.s(); ++i) {
    g.perms[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(shape.factor(i)));
    for (int x = 0; x < shape.factor(i); ++x) g.perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] = x;
  }
  return g;
}

PermTuple PermTuple::inverse() const {
  PermTuple r;
  r.perms.resize(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    r.perms[i].resize(perms[i].size());
    for (std::size_t x = 0; x < perms[i].size(); ++x)
      r.perms[i][static_cast<std::size_t>(perms[i][x])] = static_cast<int>(x);
  }
  return r;
}

bool PermTuple::is_identity() const {
  for (const auto& p : perms)
    for (std::size_t x = 0; x < p.size(); ++x)
      if (p[x] != static_cast<int>(x)) return false;
  return true;
}

PermTuple compose(const PermTuple& first, const PermTuple& second) {
  if (first.perms.size() != second.perms.size()) throw ShapeError("composing mismatched tuples");
  PermTuple r;
  r.perms.resize(first.perms.size());
  for (std::size_t i = 0; i < first.perms.size(); ++i) {
    if (first.perms[i].size() != second.perms[i].size())
      throw ShapeError("composing mismatched tuples");
    r.perms[i].resize(first.perms[i].size());
    for (std::size_t x = 0; x < first.perms[i].size(); ++x)
      r.perms[i][x] = second.perms[i][static_cast<std::size_t>(first.perms[i][x])];
  }
  return r;
}

void validate_perm_tuple(const GridShape& shape, const PermTuple& g) {
  if (static_cast<int>(g.perms.size()) != shape.s())
    throw ShapeError("permutation tuple length does not match shape");
  for (int i = 0; i < shape.s(); ++i) {
    const auto& p = g.perms[static_cast<std::size_t>(i)];
    if (static_cast<int>(p.size()) != shape.factor(i))
      throw ShapeError("permutation degree does not match factor size");
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
      if (x < 0 || x >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(x)])
        throw RangeError("not a permutation");
      seen[static_cast<std::size_t>(x)] = 1;
    }
  }
}

Block::Block(GridShape shape, std::vector<Point> points)
    : shape_(std::move(shape)), points_(std::move(points)) {
  std::vector<std::pair<std::uint64_t, Point>> keyed;
  keyed.reserve(points_.size());
  for (auto& p : points_) keyed.emplace_back(point_index(shape_, p), std::move(p));
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 1; i < keyed.size(); ++i)
    if (keyed[i].first == keyed[i - 1].first) throw RangeError("duplicate point in block");
  points_.clear();
  points_.reserve(keyed.size());
  for (auto& kv : keyed) points_.push_back(std::move(kv.second));
}

bool Block::contains(const Point& p) const {
  return std::binary_search(
      points_.begin(), points_.end(), p, [this](const Point& a, const Point& b) {
        return point_index(shape_, a) < point_index(shape_, b);
      });
}

Cell project(const Point& p, const CoordSet& J) {
  if (static_cast<int>(p.size()) != J.s()) throw ShapeError("point length does not match subset");
  Cell c;
  c.reserve(static_cast<std::size_t>(J.size()));
  for (int i = 0; i < J.s(); ++i)
    if (J.contains(i)) c.push_back(p[static_cast<std::size_t>(i)]);
  return c;
}

Point apply(const PermTuple& g, const Point& p) {
  if (g.perms.size() != p.size()) throw ShapeError("point length does not match tuple");
  Point r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[i] = g.perms[i].at(static_cast<std::size_t>(p[i]));
  return r;
}

Block apply(const PermTuple& g, const Block& b) {
  validate_perm_tuple(b.shape(), g);
  std::vector<Point> pts;
  pts.reserve(b.points().size());
  for (const auto& p : b.points()) pts.push_back(gd::apply(g, p));
  return Block(b.shape(), std::move(pts));
}

Cell apply_on_cell(const PermTuple& g, const CoordSet& J, const Cell& c) {
  auto pos = J.members();
  if (pos.size() != c.size()) throw ShapeError("cell length does not match subset");
  Cell r(c.size());
  for (std::size_t t = 0; t < pos.size(); ++t)
    r[t] = g.perms.at(static_cast<std::size_t>(pos[t])).at(static_cast<std::size_t>(c[t]));
  return r;
}

CellGeometry cell_geometry(const GridShape& shape, const CoordSet& J) {
  if (J.s() != shape.s()) throw ShapeError("subset dimension does not match shape");
  CellGeometry g{1, 1};
  for (int i = 0; i < shape.s(); ++i) {
    if (J.contains(i))
      g.d *= shape.factor(i);
    else
      g.c *= shape.factor(i);
  }
  return g;
}

std::uint64_t cell_count(const GridShape& shape, const CoordSet& J) {
  BigInt d = cell_geometry(shape, J).d;
  if (d > std::numeric_limits<std::int64_t>::max())
    throw RangeError("cell count exceeds machine range");
  return static_cast<std::uint64_t>(d);
}

std::uint64_t cell_index(const GridShape& shape, const CoordSet& J, const Cell& c) {
  auto pos = J.members();
  if (pos.size() != c.size()) throw ShapeError("cell length does not match subset");
  std::uint64_t idx = 0;
  for (std::size_t t = 0; t < pos.size(); ++t) {
    int e = shape.factor(pos[t]);
    int x = c[t];
    if (x < 0 || x >= e) throw RangeError("coordinate out of range");
    idx = idx * static_cast<std::uint64_t>(e) + static_cast<std::uint64_t>(x);
  }
  return idx;
}

Cell cell_at(const GridShape& shape, const CoordSet& J, std::uint64_t index) {
  auto pos = J.members();
  Cell c(pos.size());
  for (std::size_t t = pos.size(); t-- > 0;) {
    int e = shape.factor(pos[t]);
    c[t] = static_cast<int>(index % static_cast<std::uint64_t>(e));
    index /= static_cast<std::uint64_t>(e);
  }
  if (index != 0) throw RangeError("cell index out of range");
  return c;
}

std::uint64_t point_index(const GridShape& shape, const Point& p) {
  return cell_index(shape, CoordSet::full(shape.s()), p);
}

Point point_at(const GridShape& shape, std::uint64_t index) {
  return cell_at(shape, CoordSet::full(shape.s()), index);
}

void for_each_cell(const GridShape& shape, const CoordSet& J,
                   const std::function<void(std::uint64_t, const Cell&)>& fn) {
  std::uint64_t d = cell_count(shape, J);
  auto pos = J.members();
  Cell c(pos.size(), 0);
  for (std::uint64_t idx = 0; idx < d; ++idx) {
    fn(idx, c);
    for (std::size_t t = pos.size(); t-- > 0;) {
      if (++c[t] < shape.factor(pos[t])) break;
      c[t] = 0;
    }
  }
}

std::vector<Cell> enumerate_cells(const GridShape& shape, const CoordSet& J) {
  std::vector<Cell> r;
  r.reserve(cell_count(shape, J));
  for_each_cell(shape, J, [&](std::uint64_t, const Cell& c) { r.push_back(c); });
  return r;
}

}  // namespace gd
