#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "griddesigns/arrays.hpp"
#include "griddesigns/criteria.hpp"
#include "griddesigns/grid.hpp"
#include "griddesigns/symmetry.hpp"

namespace gd {

using Json = nlohmann::json;

// big values become decimal strings, small ones plain numbers
Json big_to_json(const BigInt& x);

// {"shape":[...],"block":[[...],...],"meta":{...}}; points in codec order
Json design_to_json(const Block& b, Json meta = Json::object());
Block design_from_json(const Json& j);
Block load_design(const std::string& path);
void save_design(const Block& b, const std::string& path, Json meta = Json::object());

std::string subset_key(const CoordSet& J);  // "1,3"

Json array_report(const ArrayFunction& a);
Json design_report_to_json(const DesignReport& rep);
Json stabilizer_report_to_json(const StabilizerResult& st, bool flag_transitive);
Json lambda_report_to_json(const LambdaTriple& t, const BigInt& stab_order);
Json ft_prefilter_to_json(const FtPrefilter& f, const GridShape& shape);

}  // namespace gd
