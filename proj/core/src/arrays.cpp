#include "griddesigns/arrays.hpp"

#include <algorithm>
#include <map>

namespace gd {

const std::vector<std::int64_t>& ArrayFunction::at(const CoordSet& J) const {
  if (J.s() != shape.s()) throw ShapeError("subset dimension does not match array");
  if (J.is_full() && !has_full) throw RangeError("full-subset counts not stored");
  return counts.at(J.mask());
}

std::vector<std::int64_t> array_of(const Block& b, const CoordSet& J) {
  std::uint64_t d = cell_count(b.shape(), J);
  std::vector<std::int64_t> counts(d, 0);
  for (const auto& p : b.points())
    ++counts[cell_index(b.shape(), J, project(p, J))];
  return counts;
}

ArrayFunction full_array(const Block& b, bool include_full) {
  const int s = b.shape().s();
  const std::uint32_t full = (1u << s) - 1u;
  ArrayFunction a{b.shape(), b.k(), {}, include_full};
  a.counts.resize(full + 1);
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (m == full && !include_full) continue;
    a.counts[m] = array_of(b, CoordSet(m, s));
  }
  return a;
}

void validate_array(const ArrayFunction& a) {
  const int s = a.shape.s();
  const std::uint32_t full = (1u << s) - 1u;
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (m == full && !a.has_full) continue;
    const auto& row = a.counts.at(m);
    CoordSet J(m, s);
    if (row.size() != cell_count(a.shape, J))
      throw InconsistencyError("array row has wrong length at J=" + J.to_string());
    std::int64_t total = 0;
    for (std::int64_t x : row) {
      if (x < 0) throw InconsistencyError("negative cell count at J=" + J.to_string());
      total += x;
    }
    if (total != a.k) throw InconsistencyError("cell counts do not total k at J=" + J.to_string());
  }
  if (a.counts.at(0).size() != 1 || a.counts.at(0)[0] != a.k)
    throw InconsistencyError("empty-subset count must equal k");
  // marginal consistency: dropping one factor from J must sum out that coordinate
  for (std::uint32_t m = 1; m <= full; ++m) {
    if (m == full && !a.has_full) continue;
    CoordSet J(m, s);
    auto pos = J.members();
    for (std::size_t t = 0; t < pos.size(); ++t) {
      CoordSet Jsub = J.without(pos[t]);
      std::vector<std::int64_t> marg(cell_count(a.shape, Jsub), 0);
      for_each_cell(a.shape, J, [&](std::uint64_t idx, const Cell& c) {
        Cell sub;
        sub.reserve(c.size() - 1);
        for (std::size_t u = 0; u < c.size(); ++u)
          if (u != t) sub.push_back(c[u]);
        marg[cell_index(a.shape, Jsub, sub)] += a.counts[m][idx];
      });
      if (marg != a.counts.at(Jsub.mask()))
        throw InconsistencyError("marginal mismatch between J=" + J.to_string() +
                                 " and J=" + Jsub.to_string());
    }
  }
}

ArrayFunction translate_array(const ArrayFunction& a, const PermTuple& g) {
  validate_perm_tuple(a.shape, g);
  const int s = a.shape.s();
  ArrayFunction r{a.shape, a.k, {}, a.has_full};
  r.counts.resize(a.counts.size());
  const std::uint32_t full = (1u << s) - 1u;
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (m == full && !a.has_full) continue;
    CoordSet J(m, s);
    r.counts[m].assign(a.counts[m].size(), 0);
    for_each_cell(a.shape, J, [&](std::uint64_t idx, const Cell& c) {
      r.counts[m][cell_index(a.shape, J, apply_on_cell(g, J, c))] = a.counts[m][idx];
    });
  }
  return r;
}

namespace {

// sorted count multisets, one per stored subset containing the factor, for a
// single value of that factor
std::vector<std::vector<std::int64_t>> value_fingerprint(const ArrayFunction& a, int factor,
                                                         int value) {
  const int s = a.shape.s();
  const std::uint32_t full = (1u << s) - 1u;
  std::vector<std::vector<std::int64_t>> fp;
  for (std::uint32_t m = 1; m < full; ++m) {
    if (!((m >> factor) & 1u)) continue;
    CoordSet J(m, s);
    auto pos = J.members();
    std::size_t slot = 0;
    while (pos[slot] != factor) ++slot;
    std::vector<std::int64_t> bucket;
    for_each_cell(a.shape, J, [&](std::uint64_t idx, const Cell& c) {
      if (c[slot] == value) bucket.push_back(a.counts[m][idx]);
    });
    std::sort(bucket.begin(), bucket.end());
    fp.push_back(std::move(bucket));
  }
  return fp;
}

}  // namespace

std::optional<PermTuple> arrays_equivalent(const ArrayFunction& a, const ArrayFunction& b,
                                           std::uint64_t node_guard) {
  if (a.shape != b.shape) throw ShapeError("arrays over different shapes");
  if (a.k != b.k) return std::nullopt;
  const int s = a.shape.s();
  const std::uint32_t full = (1u << s) - 1u;

  // quick reject: per-subset value multisets must match
  for (std::uint32_t m = 1; m < full; ++m) {
    auto xs = a.counts.at(m);
    auto ys = b.counts.at(m);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (xs != ys) return std::nullopt;
  }

  std::vector<int> order(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a.shape.factor(x) < a.shape.factor(y); });

  // candidate images per factor value, from fingerprint classes
  std::vector<std::vector<std::vector<int>>> cand(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    int e = a.shape.factor(i);
    cand[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(e));
    std::map<std::vector<std::vector<std::int64_t>>, std::vector<int>> classes;
    for (int v = 0; v < e; ++v) classes[value_fingerprint(b, i, v)].push_back(v);
    for (int v = 0; v < e; ++v) {
      auto it = classes.find(value_fingerprint(a, i, v));
      if (it == classes.end()) return std::nullopt;
      cand[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] = it->second;
    }
  }

  PermTuple g = PermTuple::identity(a.shape);
  std::vector<std::vector<char>> used(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i)
    used[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(a.shape.factor(i)), 0);
  std::uint32_t assigned_mask = 0;
  std::uint64_t nodes = 0;

  // all subsets inside the assigned factors must already map correctly
  auto prefix_ok = [&](std::uint32_t avail) {
    for (std::uint32_t m = avail; m != 0; m = (m - 1) & avail) {
      if (m == full && !(a.has_full && b.has_full)) continue;
      CoordSet J(m, s);
      bool ok = true;
      for_each_cell(a.shape, J, [&](std::uint64_t idx, const Cell& c) {
        if (!ok) return;
        if (a.counts[m][idx] != b.counts[m][cell_index(a.shape, J, apply_on_cell(g, J, c))])
          ok = false;
      });
      if (!ok) return false;
    }
    return true;
  };

  std::function<bool(int, int)> assign = [&](int stage, int value) -> bool {
    const int i = order[static_cast<std::size_t>(stage)];
    const int e = a.shape.factor(i);
    if (value == e) {
      assigned_mask |= 1u << i;
      bool ok = prefix_ok(assigned_mask);
      if (ok) {
        if (stage + 1 == s) return true;
        ok = assign(stage + 1, 0);
      }
      if (!ok) assigned_mask &= ~(1u << i);
      return ok;
    }
    for (int img : cand[static_cast<std::size_t>(i)][static_cast<std::size_t>(value)]) {
      if (used[static_cast<std::size_t>(i)][static_cast<std::size_t>(img)]) continue;
      if (++nodes > node_guard) throw ResourceError("array equivalence node budget exceeded");
      used[static_cast<std::size_t>(i)][static_cast<std::size_t>(img)] = 1;
      g.perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(value)] = img;
      if (assign(stage, value + 1)) return true;
      used[static_cast<std::size_t>(i)][static_cast<std::size_t>(img)] = 0;
    }
    return false;
  };

  if (!assign(0, 0)) return std::nullopt;

  // re-verify the witness on every stored subset
  ArrayFunction moved = translate_array(a, g);
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (m == full && !(a.has_full && b.has_full)) continue;
    if (moved.counts[m] != b.counts.at(m))
      throw InconsistencyError("array equivalence witness failed re-verification");
  }
  return g;
}

std::optional<UniformProfile> uniform_profile(const Block& b) {
  const int s = b.shape().s();
  const std::uint32_t full = (1u << s) - 1u;
  UniformProfile up{b.shape(), std::vector<std::int64_t>(full + 1, 0)};
  for (std::uint32_t m = 1; m < full; ++m) {
    auto row = array_of(b, CoordSet(m, s));
    for (std::int64_t x : row)
      if (x != row[0]) return std::nullopt;
    up.y[m] = row[0];
  }
  return up;
}

}  // namespace gd
