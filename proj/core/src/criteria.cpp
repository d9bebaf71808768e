#include "griddesigns/criteria.hpp"

#include <algorithm>
#include <unordered_map>

#include "griddesigns/constructions.hpp"

namespace gd {

std::int64_t PairOrbitCounts::at(const CoordSet& J) const {
  if (J.s() != shape.s() || J.is_empty()) throw RangeError("pair counts need a nonempty subset");
  return n.at(J.mask());
}

PairOrbitCounts n_direct(const Block& b) {
  const int s = b.shape().s();
  PairOrbitCounts r{b.shape(), std::vector<std::int64_t>(1u << s, 0)};
  const auto& pts = b.points();
  if (pts.size() > 1) {
    std::uint64_t pairs = static_cast<std::uint64_t>(pts.size()) * (pts.size() - 1) / 2;
    if (pairs > 2'000'000'000ull) throw ResourceError("too many point pairs");
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      std::uint32_t diff = 0;
      for (int t = 0; t < s; ++t)
        if (pts[i][static_cast<std::size_t>(t)] != pts[j][static_cast<std::size_t>(t)])
          diff |= 1u << t;
      ++r.n[diff];
    }
  return r;
}

namespace {

// sum of squared cell counts per subset mask
std::vector<std::int64_t> square_sums(const ArrayFunction& a) {
  std::vector<std::int64_t> sq(a.counts.size(), 0);
  for (std::size_t m = 0; m < a.counts.size(); ++m)
    for (std::int64_t x : a.counts[m]) sq[m] += x * x;
  return sq;
}

}  // namespace

PairOrbitCounts n_from_arrays(const ArrayFunction& a) {
  if (!a.has_full) throw RangeError("pair counts from arrays need the full-subset counts");
  const int s = a.shape.s();
  const std::uint32_t full = (1u << s) - 1u;
  auto sq = square_sums(a);
  PairOrbitCounts r{a.shape, std::vector<std::int64_t>(full + 1, 0)};
  for (std::uint32_t J = 1; J <= full; ++J) {
    const std::uint32_t Jc = ~J & full;
    std::int64_t total = 0;
    // alternating sum over subsets S of J, of square sums over the complement of J joined with S
    std::uint32_t S = J;
    while (true) {
      std::int64_t term = sq[Jc | S];
      total += (__builtin_popcount(S) % 2 == 0) ? term : -term;
      if (S == 0) break;
      S = (S - 1) & J;
    }
    if (total < 0 || total % 2 != 0)
      throw InconsistencyError("alternating pair-count expansion is not an even nonnegative number");
    r.n[J] = total / 2;
  }
  return r;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::arrays: return "arrays";
    case Method::pairs: return "pairs";
    case Method::alternating: return "alternating";
  }
  throw RangeError("unknown method");
}

Method parse_method(const std::string& name) {
  if (name == "arrays") return Method::arrays;
  if (name == "pairs") return Method::pairs;
  if (name == "alternating") return Method::alternating;
  throw RangeError("unknown method: " + name);
}

namespace {

// whether sum x^2 over the cells of J equals k + k(k-1)(c_J - 1)/(v - 1),
// given the left side
bool quadratic_condition_holds(const GridShape& shape, std::int64_t k, const CoordSet& J,
                               const BigInt& lhs) {
  BigInt v = shape.v();
  BigInt cJ = cell_geometry(shape, J).c;
  BigInt num = BigInt(k) * (k - 1) * (cJ - 1);
  if (num % (v - 1) != 0) return false;
  return lhs == BigInt(k) + num / (v - 1);
}

void fill_failing_from_sq(DesignReport& rep, const GridShape& shape, std::int64_t k,
                          const std::vector<std::int64_t>& sq) {
  const std::uint32_t full = (1u << shape.s()) - 1u;
  for (std::uint32_t m = 1; m < full; ++m) {
    CoordSet J(m, shape.s());
    if (!quadratic_condition_holds(shape, k, J, sq[m])) rep.failing_J.push_back(J);
  }
}

void fill_failing_from_pairs(DesignReport& rep, const GridShape& shape, std::int64_t k,
                             const PairOrbitCounts& n) {
  // sum x^2 over cells of J = k + 2 * (pairs agreeing on all of J)
  const std::uint32_t full = (1u << shape.s()) - 1u;
  for (std::uint32_t m = 1; m < full; ++m) {
    const std::uint32_t Jc = ~m & full;
    std::int64_t agree = 0;
    for (std::uint32_t D = Jc; D != 0; D = (D - 1) & Jc) agree += n.n[D];
    CoordSet J(m, shape.s());
    if (!quadratic_condition_holds(shape, k, J, BigInt(k) + 2 * BigInt(agree)))
      rep.failing_J.push_back(J);
  }
}

}  // namespace

DesignReport check_2design(const Block& b, Method method) {
  const GridShape& shape = b.shape();
  const int s = shape.s();
  const std::uint32_t full = (1u << s) - 1u;
  DesignReport rep;
  rep.v = shape.v();
  rep.k = b.k();
  if (rep.k < 2) {
    rep.is_2_design = false;
    rep.note = "fewer than two points";
    return rep;
  }
  const std::int64_t k = rep.k;
  const BigInt v = rep.v;

  switch (method) {
    case Method::arrays: {
      ArrayFunction a = full_array(b, false);
      auto sq = square_sums(a);
      fill_failing_from_sq(rep, shape, k, sq);
      rep.is_2_design = rep.failing_J.empty();
      break;
    }
    case Method::pairs: {
      PairOrbitCounts n = n_direct(b);
      bool ok = true;
      for (std::uint32_t m = 1; m <= full; ++m) {
        BigInt prod = 1;
        for (int t = 0; t < s; ++t)
          if ((m >> t) & 1u) prod *= shape.factor(t) - 1;
        // n_J * 2(v-1) must equal k(k-1) * prod of (e_j - 1) over J
        if (BigInt(n.n[m]) * 2 * (v - 1) != BigInt(k) * (k - 1) * prod) ok = false;
      }
      fill_failing_from_pairs(rep, shape, k, n);
      rep.n = std::move(n);
      rep.is_2_design = ok;
      break;
    }
    case Method::alternating: {
      ArrayFunction a = full_array(b, true);
      auto sq = square_sums(a);
      bool ok = true;
      for (std::uint32_t m = 0; m < full; ++m) {
        const std::uint32_t Jc = ~m & full;
        std::int64_t lhs = 0;
        for (std::uint32_t S = Jc;; S = (S - 1) & Jc) {
          std::int64_t term = sq[m | S];
          lhs += (__builtin_popcount(S) % 2 == 0) ? term : -term;
          if (S == 0) break;
        }
        BigInt prod = 1;
        for (int t = 0; t < s; ++t)
          if ((Jc >> t) & 1u) prod *= shape.factor(t) - 1;
        BigInt num = BigInt(k) * (k - 1) * prod;
        if (num % (v - 1) != 0 || BigInt(lhs) != num / (v - 1)) ok = false;
      }
      fill_failing_from_sq(rep, shape, k, sq);
      rep.is_2_design = ok;
      break;
    }
  }
  return rep;
}

DesignReport check_reduced(const Block& bprime, const Block& bs, const GridShape& shape) {
  auto p = des_p_of(shape);
  if (!p) throw ShapeError("not a recursive-family shape");
  const int s = shape.s();
  if (bprime.shape().s() != s - 1) throw ShapeError("base block has the wrong dimension");
  for (int i = 0; i + 1 < s; ++i)
    if (bprime.shape().factor(i) != shape.factor(i))
      throw ShapeError("base block shape disagrees with the family shape");

  DesignReport rep;
  rep.v = shape.v();

  BigInt expected_kprime = 1;
  {
    DesShape d = des_shape(s, *p);
    expected_kprime = d.q[static_cast<std::size_t>(s - 1)] + 1;  // p^(2^(s-2)) + 1
  }
  if (BigInt(bprime.k()) != expected_kprime) {
    rep.is_2_design = false;
    rep.note = "base block has the wrong size";
    return rep;
  }
  if (!check_2design(bprime, Method::arrays).is_2_design) {
    rep.is_2_design = false;
    rep.note = "base block is not a 2-design";
    return rep;
  }

  const int e_last = shape.factor(s - 1);
  std::vector<char> seen(static_cast<std::size_t>(e_last), 0);
  bool layers_ok = bs.shape() == shape && bs.k() == e_last - 1;
  if (layers_ok)
    for (const auto& q : bs.points()) {
      int c = q.back();
      if (c == 0 || seen[static_cast<std::size_t>(c)]) {
        layers_ok = false;
        break;
      }
      seen[static_cast<std::size_t>(c)] = 1;
    }
  if (!layers_ok) {
    rep.is_2_design = false;
    rep.note = "layer points do not cover each nonzero layer exactly once";
    return rep;
  }

  Block b = assemble(bprime, bs, e_last);
  rep.k = b.k();
  for (std::uint32_t m = 1; m < (1u << (s - 1)); ++m) {
    CoordSet J(m, s);
    std::int64_t lhs = 0;
    for (std::int64_t x : array_of(b, J)) lhs += x * x;
    if (!quadratic_condition_holds(shape, rep.k, J, lhs)) rep.failing_J.push_back(J);
  }
  rep.is_2_design = rep.failing_J.empty();
  return rep;
}

LambdaTriple lambda_of(const Block& blk, const BigInt& stab_order) {
  if (stab_order <= 0) throw RangeError("stabilizer order must be positive");
  BigInt g = blk.shape().group_order();
  if (g % stab_order != 0)
    throw InconsistencyError("stabilizer order does not divide the group order");
  LambdaTriple t;
  t.b = g / stab_order;
  BigInt v = blk.shape().v();
  BigInt k = blk.k();
  BigInt num = k * (k - 1) * t.b;
  BigInt den = v * (v - 1);
  if (num % den != 0) throw InconsistencyError("pair multiplicity is not an integer");
  t.lambda = num / den;
  if ((k * t.b) % v != 0) throw InconsistencyError("point multiplicity is not an integer");
  t.lambda1 = k * t.b / v;
  return t;
}

std::optional<BigInt> t_design_bruteforce(const GridShape& shape, const std::vector<Block>& blocks,
                                          int t, std::uint64_t guard) {
  if (t < 1 || t > 4) throw RangeError("subset size must be between 1 and 4");
  const std::uint64_t v = shape.point_count();
  BigInt total_subsets = binomial(BigInt(v), static_cast<unsigned>(t));
  BigInt work = 0;
  for (const auto& b : blocks) {
    if (b.shape() != shape) throw ShapeError("block over the wrong shape");
    work += binomial(BigInt(b.k()), static_cast<unsigned>(t));
  }
  if (total_subsets > guard || work > guard) throw ResourceError("t-design check budget exceeded");

  std::unordered_map<std::uint64_t, std::int64_t> cover;
  for (const auto& b : blocks) {
    std::vector<std::uint64_t> idx;
    idx.reserve(b.points().size());
    for (const auto& q : b.points()) idx.push_back(point_index(shape, q));
    const std::size_t k = idx.size();
    std::vector<std::size_t> pick(static_cast<std::size_t>(t));
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int depth) {
      if (depth == t) {
        std::uint64_t key = 0;
        for (int u = 0; u < t; ++u) key = key * v + idx[pick[static_cast<std::size_t>(u)]];
        ++cover[key];
        return;
      }
      for (std::size_t i = start; i + (static_cast<std::size_t>(t) - static_cast<std::size_t>(depth)) <= k; ++i) {
        pick[static_cast<std::size_t>(depth)] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
  }
  if (cover.empty()) return std::nullopt;
  if (BigInt(cover.size()) != total_subsets) return std::nullopt;
  std::int64_t common = cover.begin()->second;
  for (const auto& kv : cover)
    if (kv.second != common) return std::nullopt;
  return BigInt(common);
}

}  // namespace gd
