#pragma once

// Shared helpers for the unit and acceptance suites: deterministic random
// generation of shapes, blocks, and group elements, plus small brute-force
// oracles that the optimized kernels are compared against.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "griddesigns/grid.hpp"

namespace ts {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random shape with s factors, each in [2, e_max], total point count capped.
inline gd::GridShape random_shape(Rng& rng, int s, int e_max, std::uint64_t v_cap) {
  for (;;) {
    std::vector<int> e;
    std::uint64_t v = 1;
    for (int i = 0; i < s; ++i) {
      int x = pick(rng, 2, e_max);
      e.push_back(x);
      v *= static_cast<std::uint64_t>(x);
    }
    if (v <= v_cap) return gd::GridShape(e);
  }
}

inline gd::Block random_block(Rng& rng, const gd::GridShape& shape, int k) {
  std::uint64_t v = shape.point_count();
  std::vector<std::uint64_t> idx(v);
  for (std::uint64_t i = 0; i < v; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<gd::Point> pts;
  for (int i = 0; i < k; ++i) pts.push_back(gd::point_at(shape, idx[static_cast<std::size_t>(i)]));
  return gd::Block(shape, std::move(pts));
}

inline gd::PermTuple random_perm_tuple(Rng& rng, const gd::GridShape& shape) {
  gd::PermTuple g = gd::PermTuple::identity(shape);
  for (auto& p : g.perms) std::shuffle(p.begin(), p.end(), rng);
  return g;
}

// Odometer over the whole product group: perms must start at the identity,
// advances to the next element, returns false after the last one.
inline bool next_group_element(gd::PermTuple& g) {
  for (std::size_t i = g.perms.size(); i-- > 0;) {
    if (std::next_permutation(g.perms[i].begin(), g.perms[i].end())) return true;
    // wrapped back to the identity on this factor, carry into the next
  }
  return false;
}

inline std::vector<std::uint64_t> index_set(const gd::Block& b) {
  std::vector<std::uint64_t> idx;
  idx.reserve(b.points().size());
  for (const auto& p : b.points()) idx.push_back(gd::point_index(b.shape(), p));
  return idx;  // already sorted: Block keeps points in codec order
}

inline bool fixes_block(const gd::GridShape& shape, const std::vector<std::uint64_t>& idx,
                        const gd::PermTuple& g) {
  for (std::uint64_t i : idx) {
    gd::Point q = gd::apply(g, gd::point_at(shape, i));
    if (!std::binary_search(idx.begin(), idx.end(), gd::point_index(shape, q))) return false;
  }
  return true;
}

// Whole-group stabilizer count, usable whenever the group order is small.
inline gd::BigInt brute_stabilizer_order(const gd::Block& b) {
  const auto idx = index_set(b);
  gd::PermTuple g = gd::PermTuple::identity(b.shape());
  gd::BigInt count = 0;
  do {
    if (fixes_block(b.shape(), idx, g)) ++count;
  } while (next_group_element(g));
  return count;
}

}  // namespace ts
