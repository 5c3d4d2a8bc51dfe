#include "msg/io.hpp"

#include <fstream>
#include <map>

#include "msg/error.hpp"

namespace msg {

namespace {

constexpr std::array<const char*, 4> kind_suffix{"1", "a", "b", "ab"};

template <class F>
auto guarded(const std::string& kind, F&& body) {
    try {
        return body();
    } catch (const SchemaError&) {
        throw;
    } catch (const Json::exception& e) {
        throw SchemaError(kind + " document: " + e.what());
    } catch (const InvalidInput& e) {
        throw SchemaError(kind + " document: " + e.what());
    }
}

void schema(bool ok, const std::string& what) {
    if (!ok) throw SchemaError(what);
}

Json header(const std::string& kind) { return Json{{"kind", kind}, {"version", document_version}}; }

void expect_kind(const Json& j, const std::string& kind) {
    schema(j.is_object(), kind + " document must be a JSON object");
    schema(j.contains("kind") && j.at("kind") == kind, "expected a document of kind " + kind);
    schema(j.contains("version") && j.at("version") == document_version,
           kind + " document needs version " + std::to_string(document_version));
}

const Json& field(const Json& j, const char* name) {
    schema(j.contains(name), std::string("missing field '") + name + "'");
    return j.at(name);
}

int label_index(const std::vector<std::string>& labels, const std::string& label) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    schema(it != labels.end(), "unknown element label '" + label + "'");
    return static_cast<int>(it - labels.begin());
}

Json group_payload(const std::vector<std::string>& labels, const Table& table) {
    Json rows = Json::array();
    for (const auto& row : table) {
        Json r = Json::array();
        for (int c : row) r.push_back(labels.at(c));
        rows.push_back(r);
    }
    return Json{{"elements", labels}, {"table", rows}};
}

GroupDocument group_payload_from(const Json& j) {
    GroupDocument doc{field(j, "elements").get<std::vector<std::string>>(), {}};
    for (const auto& row : field(j, "table")) {
        schema(row.is_array() && row.size() == doc.labels.size(), "group table must be square");
        auto& r = doc.table.emplace_back();
        for (const auto& cell : row) r.push_back(label_index(doc.labels, cell.get<std::string>()));
    }
    schema(doc.table.size() == doc.labels.size(), "group table must be square");
    return doc;
}

// Voltage labels as [constituent, element]; the constituent must contain the element.
Json voltage_entry(const MultiGroup& mg, int element, int preferred) {
    int group = preferred;
    if (group < 0 || !mg.contains(group, element))
        for (group = 0; group < mg.operation_count() && !mg.contains(group, element); ++group) {
        }
    return Json::array({group, mg.universe().at(element)});
}

int voltage_from(const MultiGroup& mg, const Json& entry) {
    schema(entry.is_array() && entry.size() == 2, "voltage entries are [constituent, element]");
    const int group = entry.at(0).get<int>();
    schema(group >= 0 && group < mg.operation_count(), "voltage names a missing constituent");
    const int element = label_index(mg.universe(), entry.at(1).get<std::string>());
    schema(mg.contains(group, element), "voltage element lies outside its constituent");
    return element;
}

}  // namespace

std::string quadricell_name(int q) {
    require(q >= 0, "negative quadricell");
    return "e" + std::to_string(quad_edge(q)) + "." + kind_suffix[quad_kind(q)];
}

int parse_quadricell(const std::string& name) {
    const auto dot = name.find('.');
    schema(name.size() >= 4 && name[0] == 'e' && dot != std::string::npos && dot > 1, "bad quadricell name '" + name + "'");
    int edge = -1;
    try {
        std::size_t used = 0;
        edge = std::stoi(name.substr(1, dot - 1), &used);
        schema(used == dot - 1 && edge >= 0, "bad quadricell name '" + name + "'");
    } catch (const std::logic_error&) {
        throw SchemaError("bad quadricell name '" + name + "'");
    }
    const std::string suffix = name.substr(dot + 1);
    for (int k = 0; k < 4; ++k)
        if (suffix == kind_suffix[k]) return quadricell(edge, k);
    throw SchemaError("bad quadricell name '" + name + "'");
}

// ---------------------------------------------------------------------------

Json to_json(const Multigraph& g) {
    Json j = header("graph");
    j["vertices"] = g.vertex_count();
    j["edges"] = Json::array();
    for (const auto& e : g.edges()) j["edges"].push_back({e.tail, e.head});
    return j;
}

Multigraph graph_from_json(const Json& j) {
    return guarded("graph", [&] {
        expect_kind(j, "graph");
        const int n = field(j, "vertices").get<int>();
        schema(n >= 0, "vertex count must be non-negative");
        Multigraph g(n);
        for (const auto& e : field(j, "edges")) {
            schema(e.is_array() && e.size() == 2, "edges are [tail, head] pairs");
            const int u = e.at(0).get<int>(), v = e.at(1).get<int>();
            schema(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
            g.add_edge(u, v);
        }
        return g;
    });
}

Json to_json(const GroupDocument& g) {
    Json j = header("group");
    j.update(group_payload(g.labels, g.table));
    return j;
}

Json to_json(const FiniteGroup& g) { return to_json(GroupDocument{g.labels(), g.table()}); }

GroupDocument group_from_json(const Json& j) {
    return guarded("group", [&] {
        expect_kind(j, "group");
        return group_payload_from(j);
    });
}

Json to_json(const MultiGroup& mg) {
    Json j = header("multigroup");
    j["universe"] = mg.universe();
    j["constituents"] = Json::array();
    for (int i = 0; i < mg.operation_count(); ++i) {
        const auto& g = mg.constituent(i).group;
        j["constituents"].push_back(group_payload(g.labels(), g.table()));
    }
    return j;
}

MultiGroup multigroup_from_json(const Json& j) {
    return guarded("multigroup", [&] {
        expect_kind(j, "multigroup");
        std::vector<FiniteGroup> groups;
        for (const auto& c : field(j, "constituents")) {
            auto doc = group_payload_from(c);
            groups.emplace_back(std::move(doc.labels), std::move(doc.table));
        }
        schema(!groups.empty(), "a multigroup needs at least one constituent");
        auto mg = MultiGroup::from_groups(groups);
        if (j.contains("universe"))
            schema(j.at("universe").get<std::vector<std::string>>() == mg.universe(),
                   "universe must list labels in order of first appearance");
        return mg;
    });
}

Json to_json(const MultiVoltage1& mv) {
    Json j = header("voltage1");
    j["graph"] = to_json(mv.base);
    j["multigroup"] = to_json(mv.groups);
    j["voltages"] = Json::array();
    for (int v : mv.psi) j["voltages"].push_back(voltage_entry(mv.groups, v, -1));
    return j;
}

MultiVoltage1 voltage1_from_json(const Json& j) {
    return guarded("voltage1", [&] {
        expect_kind(j, "voltage1");
        MultiVoltage1 mv{graph_from_json(field(j, "graph")), multigroup_from_json(field(j, "multigroup")), {}};
        for (const auto& entry : field(j, "voltages")) mv.psi.push_back(voltage_from(mv.groups, entry));
        validate(mv);
        return mv;
    });
}

Json to_json(const MultiVoltage2& mv) {
    Json j = header("voltage2");
    j["graph"] = to_json(mv.base);
    j["multigroup"] = to_json(mv.groups);
    j["vertex_groups"] = mv.vertex_class;
    j["voltages"] = Json::array();
    for (int e = 0; e < mv.base.edge_count(); ++e)
        j["voltages"].push_back(voltage_entry(mv.groups, mv.tau[e], mv.vertex_class.at(mv.base.edge(e).tail)));
    return j;
}

MultiVoltage2 voltage2_from_json(const Json& j) {
    return guarded("voltage2", [&] {
        expect_kind(j, "voltage2");
        MultiVoltage2 mv{graph_from_json(field(j, "graph")), multigroup_from_json(field(j, "multigroup")),
                         field(j, "vertex_groups").get<std::vector<int>>(), {}};
        for (const auto& entry : field(j, "voltages")) mv.tau.push_back(voltage_from(mv.groups, entry));
        validate(mv);
        return mv;
    });
}

Json to_json(const CombinatorialMap& m) {
    Json j = header("map");
    j["edges"] = m.edge_count();
    j["cycles"] = Json::array();
    for (const auto& c : m.cycles()) {
        Json names = Json::array();
        for (int q : c) names.push_back(quadricell_name(q));
        j["cycles"].push_back(names);
    }
    return j;
}

CombinatorialMap map_from_json(const Json& j) {
    return guarded("map", [&] {
        expect_kind(j, "map");
        const int edges = field(j, "edges").get<int>();
        schema(edges >= 0, "edge count must be non-negative");
        std::vector<Cycle> cs;
        std::vector<char> seen(static_cast<std::size_t>(4 * edges), 0);
        for (const auto& names : field(j, "cycles")) {
            auto& c = cs.emplace_back();
            for (const auto& name : names) {
                const int q = parse_quadricell(name.get<std::string>());
                schema(q < 4 * edges, "quadricell " + name.get<std::string>() + " beyond the edge count");
                schema(!seen[q], "quadricell " + name.get<std::string>() + " appears twice");
                seen[q] = 1;
                c.push_back(q);
            }
        }
        return CombinatorialMap::from_cycles(edges, cs);
    });
}

Json to_json(const RotationSystem& rs) {
    Json j = header("rotation");
    j["graph"] = to_json(rs.base);
    j["rotation"] = rs.rotation;
    j["lambda"] = rs.lambda;
    return j;
}

RotationSystem rotation_from_json(const Json& j) {
    return guarded("rotation", [&] {
        expect_kind(j, "rotation");
        RotationSystem rs{graph_from_json(field(j, "graph")), field(j, "rotation").get<std::vector<Cycle>>(),
                          field(j, "lambda").get<std::vector<int>>()};
        validate(rs);
        return rs;
    });
}

namespace {
constexpr std::array<std::pair<PhaseOp, const char*>, 3> op_names{
    {{PhaseOp::cross, "cross"}, {PhaseOp::componentwise, "componentwise"}, {PhaseOp::sum, "sum"}}};
}

Json to_json(const GraphPhase<double>& ph) {
    Json j = header("phase");
    j["graph"] = to_json(ph.graph);
    j["labels"] = ph.labels;
    j["omega"] = Json::array();
    for (const auto& w : ph.omega) j["omega"].push_back({w[0], w[1], w[2]});
    for (const auto& [op, name] : op_names)
        if (op == ph.op) j["op"] = name;
    return j;
}

GraphPhase<double> phase_from_json(const Json& j) {
    return guarded("phase", [&] {
        expect_kind(j, "phase");
        auto g = graph_from_json(field(j, "graph"));
        std::vector<Vec3<double>> omega;
        for (const auto& w : field(j, "omega")) {
            schema(w.is_array() && w.size() == 3, "each vertex vector has three coordinates");
            omega.emplace_back(w.at(0).get<double>(), w.at(1).get<double>(), w.at(2).get<double>());
        }
        const auto name = j.value("op", std::string("cross"));
        const auto it = std::find_if(op_names.begin(), op_names.end(), [&](const auto& p) { return name == p.second; });
        schema(it != op_names.end(), "unknown phase operation '" + name + "'");
        auto labels = j.contains("labels") ? j.at("labels").get<std::vector<std::string>>() : std::vector<std::string>{};
        return make_phase(std::move(g), std::move(omega), it->first, std::move(labels));
    });
}

Json to_json(const PartialBinarySystem& sys) {
    Json j = header("system");
    j["operation"] = sys.operation;
    j["elements"] = sys.elements;
    j["table"] = Json::array();
    for (const auto& row : sys.table) {
        Json r = Json::array();
        for (const auto& cell : row) r.push_back(cell ? Json(sys.elements.at(*cell)) : Json(nullptr));
        j["table"].push_back(r);
    }
    return j;
}

PartialBinarySystem system_from_json(const Json& j) {
    return guarded("system", [&] {
        expect_kind(j, "system");
        PartialBinarySystem sys{field(j, "elements").get<std::vector<std::string>>(), {},
                                j.value("operation", std::string("o"))};
        for (const auto& row : field(j, "table")) {
            schema(row.is_array() && row.size() == sys.elements.size(), "system table must be square");
            auto& r = sys.table.emplace_back();
            for (const auto& cell : row)
                r.push_back(cell.is_null() ? std::nullopt
                                           : std::optional<int>(label_index(sys.elements, cell.get<std::string>())));
        }
        validate(sys);
        return sys;
    });
}

Json to_json(const WeightedDigraph& d) {
    Json j = header("digraph");
    j["vertices"] = d.vertices;
    j["systems"] = Json::array();
    for (const auto& s : d.systems) {
        Json members = Json::array();
        for (int m : s.members) members.push_back(d.vertices.at(m));
        j["systems"].push_back({{"operation", s.operation}, {"members", members}});
    }
    j["arcs"] = Json::array();
    for (const auto& a : d.arcs)
        j["arcs"].push_back({{"from", d.vertices.at(a.from)},
                             {"to", d.vertices.at(a.to)},
                             {"operation", a.weight.operation},
                             {"element", d.vertices.at(a.weight.element)},
                             {"system", a.system}});
    return j;
}

WeightedDigraph digraph_from_json(const Json& j) {
    return guarded("digraph", [&] {
        expect_kind(j, "digraph");
        WeightedDigraph d;
        d.vertices = field(j, "vertices").get<std::vector<std::string>>();
        for (const auto& s : field(j, "systems")) {
            SystemSlot slot{field(s, "operation").get<std::string>(), {}};
            for (const auto& m : field(s, "members")) slot.members.push_back(label_index(d.vertices, m.get<std::string>()));
            d.systems.push_back(std::move(slot));
        }
        for (const auto& a : field(j, "arcs")) {
            const int system = a.value("system", 0);
            schema(system >= 0 && system < static_cast<int>(d.systems.size()), "arc names a missing system");
            d.arcs.push_back({label_index(d.vertices, field(a, "from").get<std::string>()),
                              label_index(d.vertices, field(a, "to").get<std::string>()),
                              {field(a, "operation").get<std::string>(),
                               label_index(d.vertices, field(a, "element").get<std::string>())},
                              system});
        }
        return d;
    });
}

Json to_json(const MapVoltageDocument& doc) {
    Json j = header("map_voltage");
    j["map"] = to_json(doc.map);
    j["multigroup"] = to_json(doc.groups);
    j["cells"] = Json::array();
    for (int c : doc.cells) j["cells"].push_back(doc.groups.universe().at(c));
    return j;
}

MapVoltageDocument map_voltage_from_json(const Json& j) {
    return guarded("map_voltage", [&] {
        expect_kind(j, "map_voltage");
        MapVoltageDocument doc{map_from_json(field(j, "map")), multigroup_from_json(field(j, "multigroup")), {}};
        for (const auto& c : field(j, "cells")) doc.cells.push_back(label_index(doc.groups.universe(), c.get<std::string>()));
        schema(static_cast<int>(doc.cells.size()) == doc.map.cell_count(), "one voltage per quadricell");
        return doc;
    });
}

// ---------------------------------------------------------------------------

std::string document_kind(const Json& j) {
    schema(j.is_object() && j.contains("kind") && j.at("kind").is_string(), "document needs a string 'kind'");
    return j.at("kind").get<std::string>();
}

Json read_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path.string());
    try {
        Json j = Json::parse(in);
        document_kind(j);
        return j;
    } catch (const Json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_document(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << j.dump() << '\n';
}

}  // namespace msg
