#include "griddesigns/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gd {

namespace {

std::vector<std::vector<std::int64_t>> proper_fingerprint(const ArrayFunction& a, int factor,
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

// Backtracking search for elements g of the product group with src^g = tgt.
// Factors are assigned in ascending size order; the largest factor is handled
// at the leaves in closed form by matching the fibers of the last coordinate.
class MapSearch {
 public:
  MapSearch(const Block& src, const Block& tgt, const StabilizerOptions& opt)
      : src_(src), tgt_(tgt), shape_(src.shape()), s_(shape_.s()), opt_(opt) {
    if (tgt.shape() != shape_) throw ShapeError("blocks over different shapes");
    order_.resize(static_cast<std::size_t>(s_));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int x, int y) { return shape_.factor(x) < shape_.factor(y); });
    last_ = order_.back();
    rest_ = CoordSet::full(s_).without(last_);

    asrc_ = full_array(src, false);
    atgt_ = full_array(tgt, false);

    // candidate images per value, from per-value count-multiset fingerprints
    feasible_ = true;
    cand_.resize(static_cast<std::size_t>(s_));
    for (int i = 0; i < s_ && feasible_; ++i) {
      const int e = shape_.factor(i);
      cand_[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(e));
      std::map<std::vector<std::vector<std::int64_t>>, std::vector<int>> classes;
      for (int v = 0; v < e; ++v) classes[proper_fingerprint(atgt_, i, v)].push_back(v);
      for (int v = 0; v < e; ++v) {
        auto it = classes.find(proper_fingerprint(asrc_, i, v));
        if (it == classes.end()) {
          feasible_ = false;
          break;
        }
        cand_[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] = it->second;
      }
    }

    // fibers of the last coordinate: target side keyed by raw rest indices
    const int e_last = shape_.factor(last_);
    tgt_fiber_of_value_.resize(static_cast<std::size_t>(e_last));
    for (const auto& p : tgt_.points())
      tgt_fiber_of_value_[static_cast<std::size_t>(p[static_cast<std::size_t>(last_)])].push_back(
          cell_index(shape_, rest_, project(p, rest_)));
    for (auto& f : tgt_fiber_of_value_) std::sort(f.begin(), f.end());
    for (int v = 0; v < e_last; ++v)
      tgt_classes_[tgt_fiber_of_value_[static_cast<std::size_t>(v)]].push_back(v);

    src_rest_of_value_.resize(static_cast<std::size_t>(e_last));
    for (const auto& p : src_.points())
      src_rest_of_value_[static_cast<std::size_t>(p[static_cast<std::size_t>(last_)])].push_back(
          project(p, rest_));

    // subsets usable for slice checks per factor, with the in-cell slot of the factor
    slice_sets_.resize(static_cast<std::size_t>(s_));
    const std::uint32_t full = (1u << s_) - 1u;
    for (int i = 0; i < s_; ++i) {
      if (i == last_) continue;
      for (std::uint32_t m = 1; m < full; ++m) {
        if (!((m >> i) & 1u) || __builtin_popcount(m) < 2) continue;
        if ((m >> last_) & 1u) continue;
        SliceSet ss;
        ss.mask = m;
        ss.members = CoordSet(m, s_).members();
        ss.slot = 0;
        while (ss.members[ss.slot] != i) ++ss.slot;
        slice_sets_[static_cast<std::size_t>(i)].push_back(std::move(ss));
      }
    }

    g_ = PermTuple::identity(shape_);
    used_.resize(static_cast<std::size_t>(s_));
    for (int i = 0; i < s_; ++i)
      used_[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(shape_.factor(i)), 0);
    fact_.push_back(1);
    int emax = 0;
    for (int i = 0; i < s_; ++i) emax = std::max(emax, shape_.factor(i));
    for (int i = 1; i <= emax; ++i) fact_.push_back(fact_.back() * i);
  }

  // total number of solutions
  BigInt count(std::vector<PermTuple>* generators) {
    mode_ = Mode::kCount;
    total_ = 0;
    generators_ = generators;
    if (feasible_) {
      if (generators_ && src_.points() == tgt_.points()) seed_identity_generators();
      dfs(0);
    }
    return total_;
  }

  std::optional<PermTuple> find_one() {
    mode_ = Mode::kFind;
    witness_.reset();
    if (feasible_) dfs(0);
    return witness_;
  }

  // invokes fn on every solution; count capped by limit
  std::uint64_t enumerate(std::uint64_t limit, const std::function<void(const PermTuple&)>& fn) {
    mode_ = Mode::kEnumerate;
    enum_limit_ = limit;
    enum_count_ = 0;
    enum_fn_ = &fn;
    if (feasible_) dfs(0);
    return enum_count_;
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t prefix_solutions() const { return prefix_solutions_; }

 private:
  enum class Mode { kCount, kFind, kEnumerate };

  struct SliceSet {
    std::uint32_t mask;
    std::vector<int> members;
    std::size_t slot;
  };

  bool slice_ok(int factor, int value) {
    for (const auto& ss : slice_sets_[static_cast<std::size_t>(factor)]) {
      if ((ss.mask & ~(assigned_ | (1u << factor))) != 0) continue;
      CoordSet J(ss.mask, s_);
      const auto& sc = asrc_.counts[ss.mask];
      const auto& tc = atgt_.counts[ss.mask];
      bool ok = true;
      for_each_cell(shape_, J, [&](std::uint64_t idx, const Cell& c) {
        if (!ok || c[ss.slot] != value) return;
        std::uint64_t mapped = 0;
        for (std::size_t t = 0; t < ss.members.size(); ++t) {
          int f = ss.members[t];
          mapped = mapped * static_cast<std::uint64_t>(shape_.factor(f)) +
                   static_cast<std::uint64_t>(
                       g_.perms[static_cast<std::size_t>(f)][static_cast<std::size_t>(c[t])]);
        }
        if (sc[idx] != tc[mapped]) ok = false;
      });
      if (!ok) return false;
    }
    return true;
  }

  // classes of last-factor values by mapped fiber key; false when the
  // multiset of keys cannot match the target's
  bool leaf_classes(std::map<std::vector<std::uint64_t>, std::vector<int>>& src_classes) {
    const int e_last = shape_.factor(last_);
    auto rest_members = rest_.members();
    for (int a = 0; a < e_last; ++a) {
      std::vector<std::uint64_t> key;
      key.reserve(src_rest_of_value_[static_cast<std::size_t>(a)].size());
      for (const Cell& rc : src_rest_of_value_[static_cast<std::size_t>(a)]) {
        std::uint64_t mapped = 0;
        for (std::size_t t = 0; t < rest_members.size(); ++t) {
          int f = rest_members[t];
          mapped = mapped * static_cast<std::uint64_t>(shape_.factor(f)) +
                   static_cast<std::uint64_t>(
                       g_.perms[static_cast<std::size_t>(f)][static_cast<std::size_t>(rc[t])]);
        }
        key.push_back(mapped);
      }
      std::sort(key.begin(), key.end());
      src_classes[std::move(key)].push_back(a);
    }
    if (src_classes.size() != tgt_classes_.size()) return false;
    auto it1 = src_classes.begin();
    auto it2 = tgt_classes_.begin();
    for (; it1 != src_classes.end(); ++it1, ++it2)
      if (it1->first != it2->first || it1->second.size() != it2->second.size()) return false;
    return true;
  }

  void pair_leaf(const std::map<std::vector<std::uint64_t>, std::vector<int>>& src_classes) {
    // match sorted value lists class by class
    for (const auto& kv : src_classes) {
      const auto& bs = tgt_classes_.at(kv.first);
      for (std::size_t t = 0; t < kv.second.size(); ++t)
        g_.perms[static_cast<std::size_t>(last_)][static_cast<std::size_t>(kv.second[t])] = bs[t];
    }
  }

  void seed_identity_generators() {
    // transpositions inside each fiber class of the identity prefix
    for (const auto& kv : tgt_classes_) {
      for (std::size_t t = 0; t + 1 < kv.second.size(); ++t) {
        if (generators_->size() >= opt_.max_generators) return;
        PermTuple g = PermTuple::identity(shape_);
        std::swap(g.perms[static_cast<std::size_t>(last_)][static_cast<std::size_t>(kv.second[t])],
                  g.perms[static_cast<std::size_t>(last_)][static_cast<std::size_t>(kv.second[t + 1])]);
        if (apply(g, src_) == tgt_) generators_->push_back(std::move(g));
      }
    }
  }

  void emit_leaf_assignments(
      const std::vector<std::pair<const std::vector<int>*, const std::vector<int>*>>& classes,
      std::size_t at) {
    if (enum_count_ >= enum_limit_)
      throw ResourceError("element enumeration limit exceeded");
    if (at == classes.size()) {
      ++enum_count_;
      (*enum_fn_)(g_);
      return;
    }
    const auto& as = *classes[at].first;
    std::vector<int> bs = *classes[at].second;
    std::sort(bs.begin(), bs.end());
    do {
      for (std::size_t t = 0; t < as.size(); ++t)
        g_.perms[static_cast<std::size_t>(last_)][static_cast<std::size_t>(as[t])] = bs[t];
      emit_leaf_assignments(classes, at + 1);
    } while (std::next_permutation(bs.begin(), bs.end()));
  }

  bool dfs(int stage) {  // returns true to stop the whole search
    if (stage == s_ - 1) return leaf();
    const int i = order_[static_cast<std::size_t>(stage)];
    return assign_factor(stage, i, 0);
  }

  bool assign_factor(int stage, int i, int value) {
    const int e = shape_.factor(i);
    if (value == e) {
      assigned_ |= 1u << i;
      bool stop = dfs(stage + 1);
      assigned_ &= ~(1u << i);
      return stop;
    }
    for (int img : cand_[static_cast<std::size_t>(i)][static_cast<std::size_t>(value)]) {
      if (used_[static_cast<std::size_t>(i)][static_cast<std::size_t>(img)]) continue;
      if (++nodes_ > opt_.node_guard) throw ResourceError("stabilizer node budget exceeded");
      g_.perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(value)] = img;
      if (slice_ok(i, value)) {
        used_[static_cast<std::size_t>(i)][static_cast<std::size_t>(img)] = 1;
        bool stop = assign_factor(stage, i, value + 1);
        used_[static_cast<std::size_t>(i)][static_cast<std::size_t>(img)] = 0;
        if (stop) return true;
      }
    }
    return false;
  }

  bool leaf() {
    std::map<std::vector<std::uint64_t>, std::vector<int>> src_classes;
    if (!leaf_classes(src_classes)) return false;
    ++prefix_solutions_;
    switch (mode_) {
      case Mode::kCount: {
        BigInt contrib = 1;
        for (const auto& kv : src_classes) contrib *= fact_[kv.second.size()];
        total_ += contrib;
        if (generators_ && generators_->size() < opt_.max_generators) {
          pair_leaf(src_classes);
          if (apply(g_, src_) == tgt_) {
            if (!g_.is_identity()) generators_->push_back(g_);
          } else {
            throw InconsistencyError("stabilizer witness failed re-verification");
          }
        }
        return false;
      }
      case Mode::kFind: {
        pair_leaf(src_classes);
        if (apply(g_, src_) != tgt_)
          throw InconsistencyError("orbit witness failed re-verification");
        witness_ = g_;
        return true;
      }
      case Mode::kEnumerate: {
        std::vector<std::pair<const std::vector<int>*, const std::vector<int>*>> classes;
        classes.reserve(src_classes.size());
        for (const auto& kv : src_classes)
          classes.emplace_back(&kv.second, &tgt_classes_.at(kv.first));
        emit_leaf_assignments(classes, 0);
        return false;
      }
    }
    return false;
  }

  const Block& src_;
  const Block& tgt_;
  GridShape shape_;
  int s_;
  StabilizerOptions opt_;
  std::vector<int> order_;
  int last_ = 0;
  CoordSet rest_;
  ArrayFunction asrc_{GridShape({2, 2}), 0, {}, false};
  ArrayFunction atgt_{GridShape({2, 2}), 0, {}, false};
  bool feasible_ = false;
  std::vector<std::vector<std::vector<int>>> cand_;
  std::vector<std::vector<std::uint64_t>> tgt_fiber_of_value_;
  std::map<std::vector<std::uint64_t>, std::vector<int>> tgt_classes_;
  std::vector<std::vector<Cell>> src_rest_of_value_;
  std::vector<std::vector<SliceSet>> slice_sets_;

  PermTuple g_;
  std::vector<std::vector<char>> used_;
  std::uint32_t assigned_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t prefix_solutions_ = 0;
  std::vector<BigInt> fact_;

  Mode mode_ = Mode::kCount;
  BigInt total_ = 0;
  std::vector<PermTuple>* generators_ = nullptr;
  std::optional<PermTuple> witness_;
  std::uint64_t enum_limit_ = 0;
  std::uint64_t enum_count_ = 0;
  const std::function<void(const PermTuple&)>* enum_fn_ = nullptr;
};

std::vector<PermTuple> whole_group_generators(const GridShape& shape) {
  std::vector<PermTuple> gens;
  for (int i = 0; i < shape.s(); ++i) {
    const int e = shape.factor(i);
    PermTuple t = PermTuple::identity(shape);
    std::swap(t.perms[static_cast<std::size_t>(i)][0], t.perms[static_cast<std::size_t>(i)][1]);
    gens.push_back(std::move(t));
    if (e > 2) {
      PermTuple c = PermTuple::identity(shape);
      for (int x = 0; x < e; ++x)
        c.perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] = (x + 1) % e;
      gens.push_back(std::move(c));
    }
  }
  return gens;
}

}  // namespace

StabilizerResult stabilizer(const Block& b, const StabilizerOptions& opt) {
  StabilizerResult r;
  const BigInt v = b.shape().v();
  if (b.k() == 0 || BigInt(b.k()) == v) {
    r.order = b.shape().group_order();
    r.generators = whole_group_generators(b.shape());
    r.generators_complete = true;
    return r;
  }
  // stabilizing the complement is the same and is cheaper for large blocks
  if (v <= 4'000'000 && BigInt(2 * b.k()) > v) {
    std::vector<Point> rest;
    std::vector<char> in(b.shape().point_count(), 0);
    for (const auto& p : b.points()) in[point_index(b.shape(), p)] = 1;
    for (std::uint64_t i = 0; i < b.shape().point_count(); ++i)
      if (!in[i]) rest.push_back(point_at(b.shape(), i));
    Block comp(b.shape(), std::move(rest));
    MapSearch ms(comp, comp, opt);
    r.order = ms.count(&r.generators);
    r.nodes = ms.nodes();
    r.prefix_solutions = ms.prefix_solutions();
  } else {
    MapSearch ms(b, b, opt);
    r.order = ms.count(&r.generators);
    r.nodes = ms.nodes();
    r.prefix_solutions = ms.prefix_solutions();
  }
  for (const auto& g : r.generators)
    if (apply(g, b) != b) throw InconsistencyError("stabilizer generator failed re-verification");
  if (r.order <= opt.enumeration_guard) {
    // independent check: explicit element enumeration must reproduce the order
    MapSearch ms(b, b, opt);
    std::uint64_t n = ms.enumerate(static_cast<std::uint64_t>(r.order) + 1,
                                   [](const PermTuple&) {});
    if (BigInt(n) != r.order)
      throw InconsistencyError("stabilizer order disagrees with element enumeration");
    r.generators_complete = true;
  }
  return r;
}

std::vector<PermTuple> stabilizer_elements(const Block& b, std::uint64_t limit,
                                           const StabilizerOptions& opt) {
  std::vector<PermTuple> out;
  MapSearch ms(b, b, opt);
  ms.enumerate(limit, [&](const PermTuple& g) { out.push_back(g); });
  return out;
}

std::optional<PermTuple> same_orbit(const Block& b1, const Block& b2,
                                    const StabilizerOptions& opt) {
  if (b1.shape() != b2.shape()) throw ShapeError("blocks over different shapes");
  if (b1.k() != b2.k()) return std::nullopt;
  if (b1.k() == 0 || static_cast<BigInt>(b1.k()) == b1.shape().v())
    return PermTuple::identity(b1.shape());
  MapSearch ms(b1, b2, opt);
  return ms.find_one();
}

bool is_flag_transitive(const Block& b, const StabilizerOptions& opt) {
  if (b.k() <= 1) return true;
  StabilizerResult st = stabilizer(b, opt);
  if (st.order <= opt.enumeration_guard) {
    // exact: orbit of the first point under the full stabilizer
    std::set<std::uint64_t> images;
    MapSearch ms(b, b, opt);
    const Point& p0 = b.points().front();
    ms.enumerate(opt.enumeration_guard + 1, [&](const PermTuple& g) {
      images.insert(point_index(b.shape(), gd::apply(g, p0)));
    });
    return images.size() == b.points().size();
  }
  // fall back to the harvested generators
  std::set<std::uint64_t> reached;
  std::vector<Point> frontier{b.points().front()};
  reached.insert(point_index(b.shape(), frontier.front()));
  std::vector<PermTuple> gens = st.generators;
  for (const auto& g : st.generators) gens.push_back(g.inverse());
  while (!frontier.empty()) {
    Point p = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      Point q = gd::apply(g, p);
      if (reached.insert(point_index(b.shape(), q)).second) frontier.push_back(q);
    }
  }
  return reached.size() == b.points().size();
}

std::vector<Block> orbit_of(const Block& b, std::uint64_t cap) {
  auto gens = whole_group_generators(b.shape());
  std::set<std::vector<std::uint64_t>> seen;
  auto key_of = [&](const Block& blk) {
    std::vector<std::uint64_t> key;
    key.reserve(blk.points().size());
    for (const auto& p : blk.points()) key.push_back(point_index(blk.shape(), p));
    return key;
  };
  std::vector<Block> out{b};
  seen.insert(key_of(b));
  for (std::size_t at = 0; at < out.size(); ++at) {
    Block cur = out[at];
    for (const auto& g : gens) {
      Block img = apply(g, cur);
      if (seen.insert(key_of(img)).second) {
        if (out.size() + 1 > cap) throw ResourceError("block orbit cap exceeded");
        out.push_back(std::move(img));
      }
    }
  }
  return out;
}

FtPrefilter ft_prefilter(const GridShape& shape, std::int64_t k) {
  FtPrefilter r;
  const int s = shape.s();
  const std::uint32_t full = (1u << s) - 1u;
  const BigInt v = shape.v();
  r.y.assign(full + 1, 0);
  if (k < 2 || BigInt(k) > v) {
    r.reasons.push_back("block size out of range");
    return r;
  }
  r.y[0] = k;
  r.y[full] = 1;

  std::int64_t D = 0;
  for (int i = 0; i < s; ++i) D = std::gcd(D, static_cast<std::int64_t>(shape.factor(i)) - 1);
  r.D = D;
  if ((BigInt(k - 1) * D) % (v - 1) != 0)
    r.reasons.push_back("v-1 does not divide (k-1)D");

  for (std::uint32_t m = 1; m < full; ++m) {
    CoordSet J(m, s);
    BigInt cJ = cell_geometry(shape, J).c;
    BigInt num = BigInt(k - 1) * (cJ - 1);
    if (num % (v - 1) != 0) {
      r.reasons.push_back("uniform value at J=" + J.to_string() + " is not an integer");
      continue;
    }
    BigInt y = 1 + num / (v - 1);
    r.y[m] = static_cast<std::int64_t>(y);
    std::int64_t DJ = 0;
    for (int i = 0; i < s; ++i)
      if ((m >> i) & 1u) DJ = std::gcd(DJ, static_cast<std::int64_t>(shape.factor(i)) - 1);
    // y_J must divide (D_J / D) * c_J
    BigInt bound = BigInt(DJ / D) * cJ;
    if (bound % y != 0)
      r.reasons.push_back("uniform value at J=" + J.to_string() +
                          " fails the divisibility bound");
  }
  r.pass = r.reasons.empty();
  return r;
}

}  // namespace gd
