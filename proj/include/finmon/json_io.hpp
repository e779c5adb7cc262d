#pragma once

#include <map>
#include <vector>

#include <json.hpp>

#include "finmon/chu.hpp"
#include "finmon/integration.hpp"
#include "finmon/laws.hpp"
#include "finmon/measure.hpp"

namespace finmon {

using json = nlohmann::ordered_json;

// Named collections loaded from one or more JSON files. Every
// cross-reference is resolved at load time; names are unique per kind.
struct Workspace {
    std::map<std::string, SpacePtr> spaces;
    std::map<std::string, Measure> measures;
    std::map<std::string, MetaMeasure> meta_measures;
    std::map<std::string, std::vector<Measure>> sequences;
    std::map<std::string, RawPair> raw_pairs;
    std::map<std::string, PairedSpace> paired_spaces;
    std::map<std::string, MapTable> maps;
    std::map<std::string, PairedMap> paired_maps;
    std::map<std::string, Curve> curves;
    std::map<std::string, VectorFn> vector_fns;
    std::map<std::string, std::vector<std::vector<double>>> grids;
    std::map<std::string, std::vector<std::string>> test_families; // expr texts
};

// Loads and fully validates; SchemaError carries file/field context.
Workspace load_workspace(const std::vector<std::string>& files);

// Scalar: exact real "p/q", exact complex ["p/q","r/s"]; float as JSON
// numbers (real) or [re, im].
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, Backend backend, const std::string& where);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, Backend backend, const std::string& where);
// Column vector as a flat JSON array.
json vector_to_json(const Matrix& column);

json space_to_json(const FiniteSpace& x);
json measure_to_json(const Measure& mu);
json raw_pair_to_json(const RawPair& r);
json paired_space_to_json(const PairedSpace& a);
json paired_map_to_json(const PairedMap& f);
json law_report_to_json(const LawReport& r);

Backend backend_from_json(const json& parent, const std::string& where,
                          Backend fallback = Backend::Exact);

// Typed lookups; throw SchemaError naming the missing entry.
const SpacePtr& ws_space(const Workspace& ws, const std::string& name);
const Measure& ws_measure(const Workspace& ws, const std::string& name);
const MetaMeasure& ws_meta(const Workspace& ws, const std::string& name);
const std::vector<Measure>& ws_sequence(const Workspace& ws, const std::string& name);
const RawPair& ws_raw_pair(const Workspace& ws, const std::string& name);
const PairedSpace& ws_paired_space(const Workspace& ws, const std::string& name);
const MapTable& ws_map(const Workspace& ws, const std::string& name);
const PairedMap& ws_paired_map(const Workspace& ws, const std::string& name);
const Curve& ws_curve(const Workspace& ws, const std::string& name);
const VectorFn& ws_vector_fn(const Workspace& ws, const std::string& name);
const std::vector<std::vector<double>>& ws_grid(const Workspace& ws, const std::string& name);
const std::vector<std::string>& ws_tests(const Workspace& ws, const std::string& name);

} // namespace finmon
