#include "griddesigns/constructions.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "griddesigns/arrays.hpp"

namespace gd {

namespace {

BigInt pow_big(int base, const BigInt& exp) {
  BigInt r = 1;
  for (BigInt i = 0; i < exp; ++i) r *= base;
  return r;
}

BigInt p_to_2exp(int p, int h) {
  // p^(2^h) by repeated squaring
  BigInt r = p;
  for (int i = 0; i < h; ++i) r *= r;
  return r;
}

void check_counts(const Block& b, const CoordSet& J, const std::vector<std::int64_t>& expected,
                  const char* what) {
  if (array_of(b, J) != expected)
    throw IntegrityError(std::string(what) + ": cell counts differ at J=" + J.to_string());
}

void check_multiset(const Block& b, const CoordSet& J,
                    std::map<std::int64_t, std::int64_t> expected_nonzero, const char* what) {
  std::map<std::int64_t, std::int64_t> got;
  for (std::int64_t x : array_of(b, J))
    if (x != 0) ++got[x];
  if (got != expected_nonzero)
    throw IntegrityError(std::string(what) + ": count multiset differs at J=" + J.to_string());
}

}  // namespace

GridShape DesShape::grid() const {
  std::vector<int> f;
  f.reserve(e.size());
  for (const BigInt& x : e) {
    if (x > std::numeric_limits<int>::max()) throw RangeError("family factor exceeds machine range");
    f.push_back(static_cast<int>(x));
  }
  return GridShape(std::move(f));
}

DesShape des_shape(int s, int p) {
  if (s < 2 || p < 2) throw RangeError("family parameters need s > 1 and p > 1");
  if (s > 12) throw RangeError("family dimension too large");
  DesShape d;
  d.s = s;
  d.p = p;
  d.e.resize(static_cast<std::size_t>(s));
  d.q.assign(static_cast<std::size_t>(s), 0);
  d.e[0] = BigInt(p) * p + p + 1;
  for (int i = 2; i <= s; ++i) {
    BigInt qi = p_to_2exp(p, i - 2);
    d.q[static_cast<std::size_t>(i - 1)] = qi;
    d.e[static_cast<std::size_t>(i - 1)] = qi * qi - qi + 1;
  }
  d.v = 1;
  for (const BigInt& x : d.e) d.v *= x;
  d.k = p_to_2exp(p, s - 1) + 1;
  if (d.v - 1 != d.k * (d.k - 1))
    throw InconsistencyError("family shape arithmetic failed");
  return d;
}

std::optional<int> des_p_of(const GridShape& shape) {
  for (int p = 2;; ++p) {
    BigInt e1 = BigInt(p) * p + p + 1;
    if (e1 > shape.factor(0)) return std::nullopt;
    if (e1 == shape.factor(0)) {
      DesShape d = des_shape(shape.s(), p);
      for (int i = 0; i < shape.s(); ++i)
        if (d.e[static_cast<std::size_t>(i)] != shape.factor(i)) return std::nullopt;
      return p;
    }
  }
}

BigInt lambda_des2_closed_form(int p) {
  if (p < 2) throw RangeError("family parameter needs p > 1");
  unsigned up = static_cast<unsigned>(p);
  BigInt num = factorial(up * up + up) * factorial(up * up - up);
  BigInt den = factorial(up + 1) * factorial((up * up + up) / 2) *
               pow_big(2, (up * up - up) / 2) * factorial((up * up - up) / 2);
  if (num % den != 0) throw InconsistencyError("closed-form lambda is not an integer");
  return num / den;
}

Block des2(int p) {
  DesShape d = des_shape(2, p);
  GridShape shape = d.grid();
  std::vector<Point> pts;
  for (int a = 0; a <= p; ++a) pts.push_back({a, 0});
  for (int a = 1; a <= (p * p - p) / 2; ++a) {
    pts.push_back({p + a, 2 * a - 1});
    pts.push_back({p + a, 2 * a});
  }
  Block b(shape, std::move(pts));

  std::vector<std::int64_t> col(static_cast<std::size_t>(shape.factor(0)), 0);
  for (int a = 0; a <= p; ++a) col[static_cast<std::size_t>(a)] = 1;
  for (int a = 1; a <= (p * p - p) / 2; ++a) col[static_cast<std::size_t>(p + a)] = 2;
  check_counts(b, CoordSet::single(0, 2), col, "des2");
  std::vector<std::int64_t> row(static_cast<std::size_t>(shape.factor(1)), 1);
  row[0] = p + 1;
  check_counts(b, CoordSet::single(1, 2), row, "des2");
  return b;
}

Block des3(int p) {
  DesShape d = des_shape(3, p);
  GridShape shape = d.grid();
  const int e1 = shape.factor(0), e2 = shape.factor(1), e3 = shape.factor(2);

  std::vector<Point> pts;
  const Block base = des2(p);
  for (const auto& q : base.points()) pts.push_back({q[0], q[1], 0});

  auto push_pair = [&](int x, int y, int c) {
    pts.push_back({x, y, c - 1});
    pts.push_back({x, y, c});
  };

  if (p == 2) {
    for (int b = 1; b <= 2; ++b)
      for (int a = 1; a <= 3; ++a) push_pair(3 + a, b, 2 * (a + 3 * (b - 1)));
  } else {
    const int half = (p * p - p) / 2;
    // widths of the b-ranges of the first and third strips differ by parity
    const int b1max = (p % 2 == 1) ? (p * p - 1) / 2 : (p * p - 2 * p) / 2;
    const int b3max = (p % 2 == 1) ? (p * p - 2 * p + 1) / 2 : (p * p) / 2;
    const int row3 = (p % 2 == 1) ? (p * p - 1) / 2 : (p * p - 2 * p) / 2;
    const int off2 = 2 * p * b1max;
    const int off3 = off2 + 2 * half * half;
    const int off4 = off3 + 2 * p * b3max;
    const int shift_amax = (p * p - p + 2) / 4;

    for (int b = 1; b <= b1max; ++b)
      for (int a = 1; a <= p; ++a) push_pair(a, b, 2 * (a + (b - 1) * p));
    for (int b = 1; b <= half; ++b)
      for (int a = 1; a <= half; ++a) {
        int delta = (a <= shift_amax && (b == 2 * a - 1 || b == 2 * a)) ? half : 0;
        push_pair(p + a, b + delta, off2 + 2 * (a + (b - 1) * half));
      }
    for (int b = 1; b <= b3max; ++b)
      for (int a = 1; a <= p; ++a)
        push_pair((p * p + p) / 2 + a, row3 + b, off3 + 2 * (a + (b - 1) * p));
    for (int b = 1; b <= half; ++b)
      for (int a = 1; a <= half; ++a) {
        // the a = 1 column stays in the top rows; the rest of the strip sits below
        int delta = (a == 1) ? 0 : half;
        push_pair((p * p + 3 * p) / 2 + a, b + delta, off4 + 2 * (a + (b - 1) * half));
      }
  }
  Block b(shape, std::move(pts));

  std::vector<std::int64_t> col(static_cast<std::size_t>(e1));
  if (p == 2) {
    col = {1, 1, 1, 2, 4, 4, 4};
  } else {
    col[0] = 1;
    for (int i = 1; i <= p; ++i) col[static_cast<std::size_t>(i)] = (p % 2 == 1) ? p * p : (p - 1) * (p - 1);
    for (int i = p + 1; i <= (p * p + p) / 2; ++i) col[static_cast<std::size_t>(i)] = e2 + 1;
    for (int i = (p * p + p) / 2 + 1; i <= (p * p + 3 * p) / 2; ++i)
      col[static_cast<std::size_t>(i)] = (p % 2 == 1) ? (p - 1) * (p - 1) : p * p;
    for (int i = (p * p + 3 * p) / 2 + 1; i <= p * p + p; ++i) col[static_cast<std::size_t>(i)] = e2 - 1;
  }
  check_counts(b, CoordSet::single(0, 3), col, "des3");
  std::vector<std::int64_t> row(static_cast<std::size_t>(e2), e1);
  row[0] = p + 1;
  check_counts(b, CoordSet::single(1, 3), row, "des3");
  check_multiset(b, CoordSet::of({0, 1}, 3),
                 {{1, static_cast<std::int64_t>(p) * p + 1}, {2, (e3 - 1) / 2}}, "des3");
  return b;
}

Block des4_2() {
  GridShape shape = des_shape(4, 2).grid();

  // The three-dimensional part uses a different labelling of the nonzero
  // layers than des3(2) does: the layer pairs run through the six paired
  // columns in column-major rather than row-major order.  Relabelling layers
  // is a group element, so this base block generates the same design as
  // des3(2); the point sets B4 below are tailored to this labelling.
  static const int relabel[13] = {0, 1, 2, 5, 6, 9, 10, 3, 4, 7, 8, 11, 12};
  std::vector<Point> pts;
  const Block base = des3(2);
  for (const auto& q : base.points()) pts.push_back({q[0], q[1], relabel[q[2]], 0});

  struct Row {
    int d1, d2, c_lo, c_hi, off;  // d = 2c + off for c in c_lo..c_hi
  };
  static const Row rows[] = {
      {0, 0, 9, 12, -16}, {1, 0, 1, 4, 8},    {2, 0, 5, 8, 8},
      {0, 1, 5, 8, 16},   {0, 1, 11, 12, 12}, {1, 1, 3, 4, 32},   {1, 1, 9, 12, 24},
      {2, 1, 1, 4, 48},   {2, 1, 7, 8, 44},   {0, 2, 5, 10, 52},  {1, 2, 1, 2, 72},
      {1, 2, 9, 12, 60},  {2, 2, 1, 6, 84},
      {3, 0, 1, 12, 96},
      {3, 1, 3, 4, 116},  {3, 1, 7, 8, 112},  {3, 1, 11, 12, 108},
      {3, 2, 1, 2, 132},  {3, 2, 5, 6, 128},  {3, 2, 9, 10, 124},
      {4, 0, 9, 12, 128}, {5, 0, 1, 4, 152},  {6, 0, 5, 8, 152},
      {4, 1, 5, 8, 160},  {4, 1, 11, 12, 156}, {5, 1, 3, 4, 176}, {5, 1, 9, 12, 168},
      {6, 1, 1, 4, 192},  {6, 1, 7, 8, 188},  {4, 2, 5, 10, 196}, {5, 2, 1, 2, 216},
      {5, 2, 9, 12, 204}, {6, 2, 1, 6, 228},
  };
  for (const Row& r : rows)
    for (int c = r.c_lo; c <= r.c_hi; ++c) {
      int dd = 2 * c + r.off;
      pts.push_back({r.d1, r.d2, c, dd - 1});
      pts.push_back({r.d1, r.d2, c, dd});
    }
  Block b(shape, std::move(pts));

  check_counts(b, CoordSet::single(0, 4), {33, 33, 33, 50, 36, 36, 36}, "des4");
  check_counts(b, CoordSet::single(1, 4), {75, 91, 91}, "des4");
  std::vector<std::int64_t> layers(13, 21);
  layers[0] = 5;
  check_counts(b, CoordSet::single(2, 4), layers, "des4");
  check_multiset(b, CoordSet::of({0, 1, 2}, 4), {{1, 17}, {2, 120}}, "des4");
  check_multiset(b, CoordSet::of({0, 2}, 4), {{1, 15}, {2, 1}, {4, 60}}, "des4");
  check_multiset(b, CoordSet::of({1, 2}, 4), {{3, 1}, {1, 2}, {5, 12}, {6, 12}, {10, 12}}, "des4");
  check_multiset(b, CoordSet::of({0, 1}, 4), {{9, 3}, {12, 6}, {24, 1}, {13, 2}, {8, 3}, {14, 6}},
                 "des4");
  return b;
}

Block assemble(const Block& bprime, const Block& bs, int e_last) {
  if (e_last < 2) throw ShapeError("last factor size must be at least 2");
  std::vector<int> f = bprime.shape().factors();
  f.push_back(e_last);
  GridShape shape(std::move(f));
  if (bs.shape() != shape) throw ShapeError("layer points are over the wrong shape");
  std::vector<Point> pts;
  for (const auto& q : bprime.points()) {
    Point p = q;
    p.push_back(0);
    pts.push_back(std::move(p));
  }
  for (const auto& q : bs.points()) {
    if (q.back() == 0) throw IntegrityError("layer point in the zero layer");
    pts.push_back(q);
  }
  return Block(shape, std::move(pts));
}

}  // namespace gd
