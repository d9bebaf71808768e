#include "griddesigns/io.hpp"

#include <fstream>

namespace gd {

Json big_to_json(const BigInt& x) {
  static const BigInt kMaxExact = BigInt(1) << 53;
  if (x >= -kMaxExact && x <= kMaxExact) return static_cast<std::int64_t>(x);
  return x.str();
}

Json design_to_json(const Block& b, Json meta) {
  Json j;
  j["shape"] = b.shape().factors();
  Json pts = Json::array();
  for (const auto& p : b.points()) pts.push_back(p);
  j["block"] = std::move(pts);
  if (!meta.empty()) j["meta"] = std::move(meta);
  return j;
}

Block design_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("block"))
    throw RangeError("design file needs \"shape\" and \"block\"");
  GridShape shape(j.at("shape").get<std::vector<int>>());
  std::vector<Point> pts;
  for (const auto& jp : j.at("block")) {
    Point p = jp.get<Point>();
    if (static_cast<int>(p.size()) != shape.s())
      throw ShapeError("point length does not match shape");
    for (int i = 0; i < shape.s(); ++i)
      if (p[static_cast<std::size_t>(i)] < 0 || p[static_cast<std::size_t>(i)] >= shape.factor(i))
        throw RangeError("point coordinate out of range");
    pts.push_back(std::move(p));
  }
  return Block(shape, std::move(pts));
}

Block load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RangeError("cannot open " + path);
  Json j;
  in >> j;
  return design_from_json(j);
}

void save_design(const Block& b, const std::string& path, Json meta) {
  std::ofstream out(path);
  if (!out) throw RangeError("cannot write " + path);
  out << design_to_json(b, std::move(meta)).dump(2) << '\n';
}

std::string subset_key(const CoordSet& J) {
  std::string s = J.to_string();
  return s.substr(1, s.size() - 2);
}

Json array_report(const ArrayFunction& a) {
  Json out = Json::array();
  const std::uint32_t full = (1u << a.shape.s()) - 1u;
  for (std::uint32_t m = 0; m <= full; ++m) {
    if (m == full && !a.has_full) continue;
    Json row;
    row["J"] = subset_key(CoordSet(m, a.shape.s()));
    row["counts"] = a.counts[m];
    out.push_back(std::move(row));
  }
  return out;
}

Json design_report_to_json(const DesignReport& rep) {
  Json j;
  j["is_2_design"] = rep.is_2_design;
  j["v"] = big_to_json(rep.v);
  j["k"] = rep.k;
  Json fails = Json::array();
  for (const auto& J : rep.failing_J) fails.push_back(subset_key(J));
  j["failing_J"] = std::move(fails);
  if (rep.n) {
    Json n = Json::object();
    for (std::uint32_t m = 1; m < rep.n->n.size(); ++m)
      n[subset_key(CoordSet(m, rep.n->shape.s()))] = rep.n->n[m];
    j["n"] = std::move(n);
  }
  if (rep.lambda) j["lambda"] = rep.lambda->str();
  if (rep.b) j["b"] = rep.b->str();
  if (rep.lambda1) j["lambda1"] = rep.lambda1->str();
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

Json stabilizer_report_to_json(const StabilizerResult& st, bool flag_transitive) {
  Json j;
  j["order"] = st.order.str();
  Json gens = Json::array();
  for (const auto& g : st.generators) gens.push_back(g.perms);
  j["generators"] = std::move(gens);
  j["flag_transitive"] = flag_transitive;
  return j;
}

Json lambda_report_to_json(const LambdaTriple& t, const BigInt& stab_order) {
  Json j;
  j["lambda"] = t.lambda.str();
  j["b"] = t.b.str();
  j["lambda1"] = t.lambda1.str();
  j["stab_order"] = stab_order.str();
  return j;
}

Json ft_prefilter_to_json(const FtPrefilter& f, const GridShape& shape) {
  Json j;
  j["pass"] = f.pass;
  j["D"] = f.D;
  Json y = Json::object();
  for (std::uint32_t m = 0; m < f.y.size(); ++m)
    if (f.y[m] != 0) y[subset_key(CoordSet(m, shape.s()))] = f.y[m];
  j["y"] = std::move(y);
  j["reasons"] = f.reasons;
  return j;
}

}  // namespace gd
