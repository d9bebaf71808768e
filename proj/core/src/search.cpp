#include "griddesigns/search.hpp"

#include <algorithm>

#include "griddesigns/symmetry.hpp"

namespace gd {

bool params_admissible(const std::vector<int>& e, std::int64_t k) {
  if (k < 2) return false;
  BigInt v = 1;
  for (int x : e) {
    if (x < 2) return false;
    v *= x;
  }
  // complements of blocks generate 2-designs too, so tuples are normalised
  // to k <= v/2; this also drops the degenerate k = v-1 and k = v cases
  if (v < 2 * k) return false;
  BigInt kk = BigInt(k) * (k - 1);
  for (int x : e)
    if ((kk * (x - 1)) % (2 * (v - 1)) != 0) return false;
  return true;
}

namespace {

void extend_params(int s, std::int64_t k, const BigInt& v_max, std::optional<int> e_cap,
                   std::vector<int>& e, BigInt prod, std::vector<ParamTuple>& out) {
  const int depth = static_cast<int>(e.size());
  if (depth == s) {
    if (params_admissible(e, k)) out.push_back({e, k, prod});
    return;
  }
  const int remaining = s - depth;
  for (int x = e.empty() ? 2 : e.back();; ++x) {
    if (e_cap && x > *e_cap) break;
    // every later factor is at least x, so x^remaining must fit under the cap
    BigInt need = prod;
    for (int t = 0; t < remaining; ++t) need *= x;
    if (need > v_max) break;
    e.push_back(x);
    extend_params(s, k, v_max, e_cap, e, prod * x, out);
    e.pop_back();
  }
}

}  // namespace

std::vector<ParamTuple> param_search(int s, std::int64_t k_max, std::optional<int> e_cap) {
  if (s < 2 || k_max < 2) throw RangeError("parameter search needs s >= 2 and k_max >= 2");
  std::vector<ParamTuple> out;
  for (std::int64_t k = 2; k <= k_max; ++k) {
    // smallest factor e_1: the divisibility forces v <= 1 + k(k-1)(e_1-1)/2
    std::vector<int> e;
    for (int e1 = 2;; ++e1) {
      BigInt v_max = 1 + BigInt(k) * (k - 1) * (e1 - 1) / 2;
      BigInt least = 1;
      for (int t = 0; t < s; ++t) least *= e1;
      if (least > v_max) break;
      e.push_back(e1);
      extend_params(s, k, v_max, e_cap, e, e1, out);
      e.pop_back();
    }
  }
  std::sort(out.begin(), out.end(), [](const ParamTuple& a, const ParamTuple& b) {
    if (a.k != b.k) return a.k < b.k;
    return a.e < b.e;
  });
  for (const auto& t : out)
    if (!params_admissible(t.e, t.k))
      throw InconsistencyError("emitted parameter tuple fails re-verification");
  return out;
}

SearchResult block_search(const GridShape& shape, int k, std::uint64_t guard) {
  SearchResult res;
  const std::uint64_t v = shape.point_count();
  if (k < 1 || static_cast<std::uint64_t>(k) > v) throw RangeError("block size out of range");
  const int s = shape.s();
  const std::uint32_t full = (1u << s) - 1u;
  const BigInt vb = shape.v();

  // per-subset targets for the squared cell-count sums
  std::vector<std::int64_t> target(full, 0);
  for (std::uint32_t m = 1; m < full; ++m) {
    BigInt cJ = cell_geometry(shape, CoordSet(m, s)).c;
    BigInt num = BigInt(k) * (k - 1) * (cJ - 1);
    if (num % (vb - 1) != 0) {
      res.complete = true;  // no block can satisfy an integrality-violating target
      return res;
    }
    target[m] = static_cast<std::int64_t>(BigInt(k) + num / (vb - 1));
  }

  // cell index of every point for every proper nonempty subset
  std::vector<std::vector<std::uint32_t>> cell_of(full);
  for (std::uint32_t m = 1; m < full; ++m) {
    CoordSet J(m, s);
    cell_of[m].resize(v);
    for (std::uint64_t i = 0; i < v; ++i)
      cell_of[m][i] = static_cast<std::uint32_t>(cell_index(shape, J, project(point_at(shape, i), J)));
  }

  std::vector<std::vector<std::int64_t>> counts(full);
  std::vector<std::int64_t> sq(full, 0);
  for (std::uint32_t m = 1; m < full; ++m) counts[m].assign(cell_count(shape, CoordSet(m, s)), 0);

  std::vector<std::uint64_t> chosen;
  std::uint64_t nodes = 0;
  bool aborted = false;

  auto add_point = [&](std::uint64_t i, int dir) {
    for (std::uint32_t m = 1; m < full; ++m) {
      std::int64_t& c = counts[m][cell_of[m][i]];
      if (dir > 0) {
        sq[m] += 2 * c + 1;
        ++c;
      } else {
        --c;
        sq[m] -= 2 * c + 1;
      }
    }
  };

  auto over_target = [&]() {
    for (std::uint32_t m = 1; m < full; ++m)
      if (sq[m] > target[m]) return true;
    return false;
  };

  std::function<void(std::uint64_t)> rec = [&](std::uint64_t next) {
    if (aborted) return;
    if (chosen.size() == static_cast<std::size_t>(k)) {
      ++res.candidates_tested;
      std::vector<Point> pts;
      pts.reserve(chosen.size());
      for (std::uint64_t i : chosen) pts.push_back(point_at(shape, i));
      Block b(shape, std::move(pts));
      DesignReport rep = check_2design(b, Method::arrays);
      if (!rep.is_2_design) return;
      for (const auto& hit : res.hits)
        if (same_orbit(hit.block, b)) return;
      StabilizerResult st = stabilizer(b);
      LambdaTriple lt = lambda_of(b, st.order);
      rep.lambda = lt.lambda;
      rep.b = lt.b;
      rep.lambda1 = lt.lambda1;
      res.hits.push_back({std::move(b), std::move(rep), st.order, lt.lambda, lt.b});
      return;
    }
    const std::uint64_t needed = static_cast<std::uint64_t>(k) - chosen.size();
    for (std::uint64_t i = next; i + needed <= v; ++i) {
      if (++nodes > guard) {
        aborted = true;
        return;
      }
      add_point(i, +1);
      chosen.push_back(i);
      if (!over_target()) rec(i + 1);
      chosen.pop_back();
      add_point(i, -1);
      if (aborted) return;
    }
  };

  add_point(0, +1);
  chosen.push_back(0);
  if (!over_target()) rec(1);
  res.complete = !aborted;
  return res;
}

const std::vector<CatalogRow>& catalog() {
  static const std::vector<CatalogRow> rows = {
      {{2, 2, 4}, {{0,0,0},{1,1,3},{1,1,1},{0,1,0},{1,0,0},{1,1,2}}, 2},
      {{2, 2, 4}, {{0,0,0},{0,0,2},{1,0,3},{0,0,1},{0,1,2},{1,1,2}}, 6},
      {{2, 2, 4}, {{0,0,2},{1,1,3},{1,0,1},{0,0,1},{0,1,2},{0,0,3}}, 12},
      {{2, 2, 4}, {{0,1,3},{1,0,1},{1,0,2},{0,0,1},{0,1,2},{0,0,3}}, 12},
      {{4, 4, 4}, {{0,0,0},{1,0,0},{3,1,2},{1,3,0},{0,1,3},{3,3,3},{1,0,2}}, 144},
      {{4, 4, 4}, {{0,0,0},{1,0,0},{0,1,2},{1,2,2},{3,1,1},{3,0,1},{1,2,1}}, 144},
      {{4, 4, 4}, {{0,0,0},{1,0,0},{1,2,2},{3,2,1},{3,1,2},{0,1,1},{1,0,2}}, 144},
      {{4, 4, 4}, {{0,0,0},{1,0,0},{1,3,1},{3,1,2},{0,1,1},{3,3,2},{1,0,2}}, 144},
      {{2, 4, 7},
       {{0,0,0},{0,0,1},{0,0,2},{0,0,3},{0,1,0},{0,2,0},{0,3,4},{1,0,0},{1,1,1},{1,2,5},{1,3,6}},
       4320},
      {{3, 3, 5},
       {{0,0,0},{0,1,1},{0,1,2},{0,1,3},{0,2,0},{1,0,1},{1,0,2},{1,0,3},{1,1,1},{1,2,2},{2,0,0},{2,1,3}},
       288},
  };
  return rows;
}

CatalogReport verify_catalog() {
  CatalogReport rep;
  rep.all_ok = true;
  for (std::size_t at = 0; at < catalog().size(); ++at) {
    const CatalogRow& row = catalog()[at];
    CatalogRowReport r;
    std::string where = "row " + std::to_string(at + 1);
    try {
      GridShape shape(row.shape);
      Block b(shape, row.block);
      for (Method m : {Method::arrays, Method::pairs, Method::alternating})
        if (!check_2design(b, m).is_2_design)
          throw IntegrityError(where + ": not a 2-design by the " + method_name(m) + " method");
      StabilizerResult st = stabilizer(b);
      r.stab_order = st.order;
      LambdaTriple lt = lambda_of(b, st.order);
      r.lambda = lt.lambda;
      r.b = lt.b;
      if (r.lambda != row.lambda)
        throw IntegrityError(where + ": pair multiplicity " + r.lambda.str() +
                             " differs from the recorded " + std::to_string(row.lambda));
      r.flag_transitive = is_flag_transitive(b);
      if (r.flag_transitive) throw IntegrityError(where + ": unexpectedly flag-transitive");
      if (ft_prefilter(shape, b.k()).pass)
        throw IntegrityError(where + ": shape unexpectedly passes the flag-transitivity prefilter");
      r.ok = true;
    } catch (const Error& err) {
      r.ok = false;
      r.failure = err.what();
      rep.all_ok = false;
    }
    rep.rows.push_back(std::move(r));
  }
  return rep;
}

}  // namespace gd
