#pragma once
#include <filesystem>
#include <string>

#include "json.hpp"
#include "msg/algsys.hpp"
#include "msg/graph.hpp"
#include "msg/group.hpp"
#include "msg/map.hpp"
#include "msg/phases.hpp"
#include "msg/voltage.hpp"

namespace msg {

using Json = nlohmann::json;
inline constexpr int document_version = 1;

// "e<k>.<1|a|b|ab>"
std::string quadricell_name(int q);
int parse_quadricell(const std::string& name);

// Square table of labels, not yet checked against the group axioms.
struct GroupDocument {
    std::vector<std::string> labels;
    Table table;
    friend bool operator==(const GroupDocument&, const GroupDocument&) = default;
};

// A map together with one voltage label per quadricell.
struct MapVoltageDocument {
    CombinatorialMap map;
    MultiGroup groups;
    std::vector<int> cells;
};

Json to_json(const Multigraph& g);
Json to_json(const GroupDocument& g);
Json to_json(const FiniteGroup& g);
Json to_json(const MultiGroup& mg);
Json to_json(const MultiVoltage1& mv);
Json to_json(const MultiVoltage2& mv);
Json to_json(const CombinatorialMap& m);
Json to_json(const RotationSystem& rs);
Json to_json(const GraphPhase<double>& ph);
Json to_json(const PartialBinarySystem& sys);
Json to_json(const WeightedDigraph& d);
Json to_json(const MapVoltageDocument& doc);

// Each loader checks kind and version and throws SchemaError on any mismatch.
Multigraph graph_from_json(const Json& j);
GroupDocument group_from_json(const Json& j);
MultiGroup multigroup_from_json(const Json& j);
MultiVoltage1 voltage1_from_json(const Json& j);
MultiVoltage2 voltage2_from_json(const Json& j);
CombinatorialMap map_from_json(const Json& j);
RotationSystem rotation_from_json(const Json& j);
GraphPhase<double> phase_from_json(const Json& j);
PartialBinarySystem system_from_json(const Json& j);
WeightedDigraph digraph_from_json(const Json& j);
MapVoltageDocument map_voltage_from_json(const Json& j);

std::string document_kind(const Json& j);
Json read_document(const std::filesystem::path& path);
void write_document(const std::filesystem::path& path, const Json& j);

}  // namespace msg
