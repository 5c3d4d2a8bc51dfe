#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "msg/acceptance.hpp"
#include "msg/algsys.hpp"
#include "msg/error.hpp"
#include "msg/generators.hpp"
#include "msg/io.hpp"
#include "msg/map.hpp"
#include "msg/phases.hpp"
#include "msg/spatial.hpp"
#include "msg/voltage.hpp"

namespace {

using msg::Json;

enum ExitStatus : int { ok = 0, property_failure = 1, usage = 2, bad_input = 3, over_budget = 4 };

// What a leaf command produces: human text, a machine report, and whether its checks held.
struct Outcome {
    std::string text;
    Json data;
    bool holds = true;
};

struct Settings {
    bool json = false;
    std::uint64_t seed = msg::AcceptanceOptions{}.seed;
    long long budget = msg::default_embedding_budget;
};

// ---- argument parsing helpers ----

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<int> int_list(const std::string& s) {
    std::vector<int> out;
    for (auto& tok : split(std::regex_replace(s, std::regex("[\\s,]+"), ","), ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw msg::InvalidInput("not an integer: " + tok);
        }
    }
    return out;
}

std::string join(std::span<const int> v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

// K7, K3,3, B2, D0.4.0, C5, P4
msg::Multigraph family_graph(const std::string& name) {
    std::smatch m;
    auto num = [&](int k) { return std::stoi(m[k].str()); };
    if (std::regex_match(name, m, std::regex("K(\\d+),(\\d+)"))) return msg::complete_bipartite(num(1), num(2));
    if (std::regex_match(name, m, std::regex("K(\\d+)"))) return msg::complete_graph(num(1));
    if (std::regex_match(name, m, std::regex("B(\\d+)"))) return msg::bouquet(num(1));
    if (std::regex_match(name, m, std::regex("D(\\d+)\\.(\\d+)\\.(\\d+)"))) return msg::dipole(num(1), num(2), num(3));
    if (std::regex_match(name, m, std::regex("C(\\d+)"))) return msg::cycle_graph(num(1));
    if (std::regex_match(name, m, std::regex("P(\\d+)"))) return msg::path_graph(num(1));
    throw msg::InvalidInput("unknown family " + name);
}

struct GraphSource {
    std::string file;
    std::string family;
    msg::Multigraph load() const {
        if (!family.empty()) return family_graph(family);
        if (file.empty()) throw msg::InvalidInput("give --file or --family");
        return msg::graph_from_json(msg::read_document(file));
    }
};

Json load(const std::string& file) {
    if (file.empty()) throw msg::InvalidInput("give --file");
    return msg::read_document(file);
}

std::string cell_cycle(const msg::Cycle& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + msg::quadricell_name(c[i]);
    return s + ")";
}

Json cycles_json(const std::vector<msg::Cycle>& cs) {
    Json j = Json::array();
    for (const auto& c : cs) {
        Json row = Json::array();
        for (int q : c) row.push_back(msg::quadricell_name(q));
        j.push_back(row);
    }
    return j;
}

std::string edge_list(const msg::Multigraph& g) {
    std::string s;
    for (const auto& e : g.edges()) s += (s.empty() ? "" : " ") + std::to_string(e.tail) + "-" + std::to_string(e.head);
    return s;
}

Outcome graph_outcome(const msg::Multigraph& g) {
    return {"vertices=" + std::to_string(g.vertex_count()) + " edges: " + edge_list(g), msg::to_json(g), true};
}

// Element labels of a group or multigroup; comma-separated, ';' between operations.
std::vector<std::vector<int>> connection_sets(const msg::MultiGroup& mg, const std::string& spec) {
    auto parts = split(spec, ';');
    if (static_cast<int>(parts.size()) != mg.operation_count())
        throw msg::InvalidInput("need one ';'-separated connection set per operation");
    std::vector<std::vector<int>> s;
    for (const auto& p : parts) {
        std::vector<int> set;
        for (const auto& label : split(p, ',')) {
            auto idx = mg.index_of(label);
            if (!idx) throw msg::InvalidInput("unknown element " + label);
            set.push_back(*idx);
        }
        s.push_back(set);
    }
    return s;
}

msg::MultiGroup load_multigroup(const Json& doc) {
    if (msg::document_kind(doc) == "group") {
        auto g = msg::group_from_json(doc);
        return msg::MultiGroup::from_groups({msg::FiniteGroup(g.labels, g.table)});
    }
    return msg::multigroup_from_json(doc);
}

// ---- seq / graph ----

Outcome seq_check(const std::string& seq) {
    auto d = int_list(seq);
    const bool hh = msg::is_graphical_hh(d), eg = msg::is_graphical_eg(d);
    Outcome o;
    o.holds = hh == eg;
    o.data = {{"havel_hakimi", hh}, {"erdos_gallai", eg}, {"graphical", hh && eg}};
    o.text = std::string("graphical=") + (hh && eg ? "true" : "false") + " havel_hakimi=" + (hh ? "true" : "false") +
             " erdos_gallai=" + (eg ? "true" : "false");
    if (hh && eg)
        if (auto g = msg::realize_sequence(d)) {
            o.data["realization"] = msg::to_json(*g);
            o.text += "\nrealization: " + edge_list(*g);
        }
    return o;
}

Outcome graph_info(const msg::Multigraph& g) {
    Eigen::MatrixXi a = msg::adjacency_matrix(g);
    Json rows = Json::array();
    std::ostringstream os;
    os << "vertices=" << g.vertex_count() << " edges=" << g.edge_count() << " simple=" << std::boolalpha
       << g.is_simple() << " connected=" << g.is_connected() << " components=" << g.component_count()
       << " betti=" << g.betti() << "\nvalencies: " << join(g.valencies()) << "\nadjacency:\n";
    for (int i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < a.cols(); ++j) {
            row.push_back(a(i, j));
            os << (j ? " " : "") << a(i, j);
        }
        rows.push_back(row);
        os << "\n";
    }
    std::string text = os.str();
    text.pop_back();
    return {text,
            {{"vertices", g.vertex_count()},
             {"edges", g.edge_count()},
             {"simple", g.is_simple()},
             {"connected", g.is_connected()},
             {"components", g.component_count()},
             {"betti", g.betti()},
             {"valencies", g.valencies()},
             {"adjacency", rows}},
            true};
}

Outcome graph_ecc(const msg::Multigraph& g) {
    auto p = msg::eccentricity_profile(g);
    Json mult = Json::object();
    for (const auto& [l, vs] : p.multiplicity) mult[std::to_string(l)] = vs;
    return {"radius=" + std::to_string(p.radius) + " diameter=" + std::to_string(p.diameter) + " values=[" +
                join(p.values) + "]\neccentricity: " + join(p.eccentricity),
            {{"radius", p.radius},
             {"diameter", p.diameter},
             {"values", p.values},
             {"eccentricity", p.eccentricity},
             {"multiplicity", mult}},
            true};
}

Outcome graph_decompose(const GraphSource& src, int odd) {
    if (odd > 0) {
        auto circuits = msg::decompose_complete_odd(odd);
        std::string text;
        for (const auto& c : circuits) text += (text.empty() ? "" : "\n") + join(c, " ");
        return {text, {{"circuits", circuits}}, true};
    }
    auto g = src.load();
    Json parts = Json::array();
    std::string text;
    for (const auto& p : msg::decompose_bouquets_dipoles(g)) {
        const bool b = p.kind == msg::EdgePart::Kind::bouquet;
        parts.push_back({{"kind", b ? "bouquet" : "dipole"}, {"vertices", p.vertices}, {"edges", p.edges}});
        text += (text.empty() ? "" : "\n") + std::string(b ? "bouquet" : "dipole") + " at " + join(p.vertices) +
                " edges " + join(p.edges);
    }
    return {text, {{"parts", parts}}, true};
}

// ---- groups and Cayley graphs ----

Outcome group_verify(const std::string& file) {
    auto doc = msg::group_from_json(load(file));
    auto check = msg::verify_group(doc.table);
    Outcome o;
    o.holds = check.ok;
    o.data = {{"group", check.ok}};
    if (check.ok) {
        msg::FiniteGroup g(doc.labels, doc.table);
        o.data["order"] = g.order();
        o.data["abelian"] = g.is_abelian();
        o.text = "group=true order=" + std::to_string(g.order()) + " abelian=" + (g.is_abelian() ? "true" : "false");
    } else {
        std::vector<std::string> witness;
        for (int x : check.witness) witness.push_back(doc.labels.at(static_cast<std::size_t>(x)));
        o.data["axiom"] = check.axiom;
        o.data["witness"] = witness;
        std::string w;
        for (const auto& s : witness) w += (w.empty() ? "" : ",") + s;
        o.text = "group=false axiom=" + check.axiom + " witness=" + w;
    }
    return o;
}

Outcome cayley_build(const std::string& file, const std::string& s) {
    auto mg = load_multigroup(load(file));
    return graph_outcome(msg::cayley_graph_multigroup(mg, connection_sets(mg, s)).graph);
}

Outcome cayley_connected(const std::string& file, const std::string& s) {
    auto mg = load_multigroup(load(file));
    auto sets = connection_sets(mg, s);
    const bool criterion = msg::is_multigroup_cayley_connected(mg, sets);
    const bool direct = msg::cayley_graph_multigroup(mg, sets).graph.is_connected();
    return {std::string("connected=") + (criterion ? "true" : "false") + " direct=" + (direct ? "true" : "false"),
            {{"connected", criterion}, {"direct", direct}},
            criterion == direct};
}

Outcome cayley_factorize(const std::string& file, const std::string& s) {
    auto doc = msg::group_from_json(load(file));
    msg::FiniteGroup g(doc.labels, doc.table);
    auto mg = msg::MultiGroup::from_groups({g});
    auto set = connection_sets(mg, s)[0];
    auto cay = msg::cayley_graph(g, set);
    Outcome o;
    o.data = Json::array();
    for (const auto& f : msg::factorize_cayley(g, set)) {
        const bool verified = f.is_matching ? msg::is_perfect_matching(cay, f.edges) : msg::is_two_factor(cay, f.edges);
        o.holds &= verified;
        std::vector<std::string> gens;
        std::string gtext;
        for (int x : f.generators) {
            gens.push_back(g.labels()[x]);
            gtext += (gtext.empty() ? "" : ",") + g.labels()[x];
        }
        std::string edges;
        for (int e : f.edges)
            edges += (edges.empty() ? "" : " ") + g.labels()[cay.edge(e).tail] + "-" + g.labels()[cay.edge(e).head];
        o.data.push_back({{"factor", f.is_matching ? 1 : 2}, {"generators", gens}, {"edges", f.edges},
                          {"verified", verified}});
        o.text += (o.text.empty() ? "" : "\n") + std::string(f.is_matching ? "1-factor" : "2-factor") + " {" + gtext +
                  "}: " + edges;
    }
    return o;
}

// ---- voltages and lifts ----

Outcome lift_graph(const std::string& file, bool type2) {
    auto doc = load(file);
    auto lift = type2 ? msg::lift_type2(msg::voltage2_from_json(doc)) : msg::lift_type1(msg::voltage1_from_json(doc));
    return graph_outcome(lift.graph);
}

Outcome lift_walks(const std::string& file, const std::string& walk_spec, int length, const std::string& start,
                   const Settings& st) {
    auto mv = msg::voltage1_from_json(load(file));
    auto lift = msg::lift_type1(mv);
    std::vector<int> walk;
    if (walk_spec.empty()) {
        msg::gen::Rng rng(st.seed);
        walk = msg::gen::walk(rng, mv.base, length);
    } else {
        walk = int_list(walk_spec);
    }
    int fiber = 0;
    if (!start.empty()) {
        auto idx = mv.groups.index_of(start);
        if (!idx) throw msg::InvalidInput("unknown start element " + start);
        fiber = *idx;
    }
    const long long built = static_cast<long long>(msg::lift_walk(mv, lift, walk, fiber).size());
    const long long counted = msg::count_walk_liftings(mv, walk, fiber);
    long long expected = 1;
    for (std::size_t k = 0; k < walk.size(); ++k) expected *= mv.groups.operation_count();
    Outcome o;
    o.holds = built == counted && (!mv.groups.all_constituents_equal() || built == expected);
    o.data = {{"walk", walk}, {"liftings", built}, {"counted", counted}, {"expected", expected}};
    o.text = "walk=" + join(walk) + " liftings=" + std::to_string(built) + " counted=" + std::to_string(counted) +
             " n^k=" + std::to_string(expected);
    return o;
}

Outcome lift_circuit(const std::string& file, const std::string& circuit_spec) {
    auto mv = msg::voltage1_from_json(load(file));
    auto lift = msg::lift_type1(mv);
    auto circuit = int_list(circuit_spec);
    Outcome o;
    o.data = Json::array();
    for (const auto& h : msg::circuit_homogeneous_liftings(mv, circuit)) {
        auto orbits = msg::circuit_lift_orbits(mv, lift, circuit, h.operation);
        const bool agree = orbits == std::vector<int>(static_cast<std::size_t>(h.count), h.order);
        o.holds &= agree;
        o.data.push_back({{"operation", h.operation},
                          {"product", mv.groups.universe()[h.product]},
                          {"order", h.order},
                          {"count", h.count},
                          {"length", h.length},
                          {"orbits", orbits}});
        o.text += (o.text.empty() ? "" : "\n") + ("operation " + std::to_string(h.operation) + ": product=" +
                                                  mv.groups.universe()[h.product] + " order=" + std::to_string(h.order) +
                                                  " liftings=" + std::to_string(h.count) + " length=" +
                                                  std::to_string(h.length) + " orbits=[" + join(orbits) + "]");
    }
    return o;
}

// Closes the listed vertex permutations under composition.
std::vector<msg::Perm> generated_group(const std::vector<msg::Perm>& gens, int n) {
    std::set<msg::Perm> seen{msg::identity_perm(n)};
    std::vector<msg::Perm> out{msg::identity_perm(n)};
    for (std::size_t k = 0; k < out.size(); ++k)
        for (const auto& g : gens) {
            auto p = msg::compose(g, out[k]);
            if (seen.insert(p).second) out.push_back(p);
        }
    return out;
}

Outcome quotient(const GraphSource& src, const std::string& generators) {
    auto g = src.load();
    std::vector<msg::Perm> gens;
    for (const auto& part : split(generators, ';')) {
        auto p = int_list(part);
        if (static_cast<int>(p.size()) != g.vertex_count() || !msg::is_permutation(p))
            throw msg::InvalidInput("generator is not a permutation of the vertices");
        gens.push_back(p);
    }
    auto q = msg::quotient_graph(g, generated_group(gens, g.vertex_count()));
    auto o = graph_outcome(q.graph);
    o.text += "\nvertex orbits: " + join(q.vertex_orbit);
    return o;
}

// ---- maps ----

Outcome map_validate(const std::string& file) {
    auto m = msg::map_from_json(load(file));
    auto c = msg::validate_map(m);
    Outcome o;
    o.holds = c.ok;
    o.data = {{"valid", c.ok}};
    o.text = std::string("valid=") + (c.ok ? "true" : "false");
    if (!c.ok) {
        o.data["axiom"] = c.axiom;
        o.data["witness"] = msg::quadricell_name(c.witness);
        o.text += " axiom=" + c.axiom + " witness=" + msg::quadricell_name(c.witness);
    }
    return o;
}

msg::CombinatorialMap valid_map(const std::string& file) {
    auto m = msg::map_from_json(load(file));
    auto c = msg::validate_map(m);
    if (!c.ok) throw msg::InvalidInput("map fails axiom " + c.axiom + " at " + msg::quadricell_name(c.witness));
    return m;
}

Outcome map_orbits(const std::string& file) {
    auto m = valid_map(file);
    auto o = msg::orbits(m);
    std::string text = "vertices:";
    for (const auto& c : o.vertices) text += " " + cell_cycle(c);
    text += "\nedges: " + std::to_string(o.edges) + "\nfaces:";
    for (const auto& c : o.faces) text += " " + cell_cycle(c);
    return {text, {{"vertices", cycles_json(o.vertices)}, {"edges", o.edges}, {"faces", cycles_json(o.faces)}}, true};
}

Outcome map_chi(const std::string& file) {
    auto m = valid_map(file);
    const int chi = msg::euler_characteristic(m);
    const bool orientable = msg::is_orientable(m);
    return {"chi=" + std::to_string(chi) + " orientable=" + (orientable ? "true" : "false"),
            {{"chi", chi}, {"orientable", orientable}},
            true};
}

Outcome map_orientable(const std::string& file) {
    auto g = msg::genus(valid_map(file));
    const std::string what = g.orientable ? "genus" : "crosscaps";
    return {std::string("orientable=") + (g.orientable ? "true " : "false ") + what + "=" + std::to_string(g.genus),
            {{"orientable", g.orientable}, {what, g.genus}},
            true};
}

Outcome map_document(const msg::CombinatorialMap& m) {
    std::string text;
    for (const auto& c : m.cycles()) text += (text.empty() ? "" : " ") + cell_cycle(c);
    return {text, msg::to_json(m), true};
}

Outcome map_lift(const std::string& file) {
    auto doc = msg::map_voltage_from_json(load(file));
    auto mv = msg::map_voltage_from_cells(doc.map, doc.groups, doc.cells);
    auto lifted = msg::lift_map(mv);
    auto formula = msg::lift_chi_formula(mv);
    Outcome o;
    o.holds = formula.denominator() == 1 && formula.numerator() == lifted.euler_characteristic();
    Json sheets = Json::array();
    for (const auto& s : lifted.sheets) sheets.push_back(msg::to_json(s));
    std::vector<bool> generates;
    for (int i = 0; i < mv.groups.operation_count(); ++i) generates.push_back(msg::face_voltages_generate(mv, i));
    std::string formula_text = std::to_string(formula.numerator()) +
                               (formula.denominator() == 1 ? "" : "/" + std::to_string(formula.denominator()));
    o.data = {{"vertices", lifted.vertices}, {"edges", lifted.edges},        {"faces", lifted.faces},
              {"chi", lifted.euler_characteristic()}, {"formula", formula_text}, {"face_voltages_generate", generates},
              {"sheets", sheets}};
    o.text = "vertices=" + std::to_string(lifted.vertices) + " edges=" + std::to_string(lifted.edges) +
             " faces=" + std::to_string(lifted.faces) + " chi=" + std::to_string(lifted.euler_characteristic()) +
             " formula=" + formula_text;
    return o;
}

// ---- genus ----

Outcome genus_formula(int complete, const std::string& bipartite) {
    int g = 0, q = 0;
    if (complete > 0) {
        g = msg::genus_complete(msg::GenusKind::orientable, complete);
        q = msg::genus_complete(msg::GenusKind::nonorientable, complete);
    } else if (!bipartite.empty()) {
        auto mn = int_list(bipartite);
        if (mn.size() != 2) throw msg::InvalidInput("--bipartite takes m,n");
        g = msg::genus_complete_bipartite(msg::GenusKind::orientable, mn[0], mn[1]);
        q = msg::genus_complete_bipartite(msg::GenusKind::nonorientable, mn[0], mn[1]);
    } else {
        throw msg::InvalidInput("give --complete n or --bipartite m,n");
    }
    return {"gamma=" + std::to_string(g) + " gamma_tilde=" + std::to_string(q), {{"gamma", g}, {"gamma_tilde", q}},
            true};
}

Json distribution(const std::map<int, long long>& d) {
    Json j = Json::object();
    for (auto [k, v] : d) j[std::to_string(k)] = v;
    return j;
}

std::string distribution_text(const std::map<int, long long>& d) {
    std::string s;
    for (auto [k, v] : d) s += (s.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(v);
    return s;
}

Outcome genus_range(const msg::Multigraph& g, const Settings& st) {
    auto c = msg::enumerate_embeddings(g, st.budget);
    Json j = Json::object();
    std::string text;
    if (!c.orientable.empty()) {
        j["orientable"] = {c.orientable.begin()->first, c.orientable.rbegin()->first};
        text = "orientable=[" + std::to_string(c.orientable.begin()->first) + "," +
               std::to_string(c.orientable.rbegin()->first) + "]";
    }
    if (!c.nonorientable.empty()) {
        j["nonorientable"] = {c.nonorientable.begin()->first, c.nonorientable.rbegin()->first};
        text += " nonorientable=[" + std::to_string(c.nonorientable.begin()->first) + "," +
                std::to_string(c.nonorientable.rbegin()->first) + "]";
    }
    return {text, j, true};
}

// ---- enumeration ----

Outcome enumerate_embeddings(const msg::Multigraph& g, const Settings& st) {
    auto c = msg::enumerate_embeddings(g, st.budget);
    return {"orientable=" + std::to_string(c.orientable_total) + " nonorientable=" +
                std::to_string(c.nonorientable_total) + " total=" + std::to_string(c.total()) +
                "\ngenus: " + distribution_text(c.orientable) + "\ncrosscaps: " + distribution_text(c.nonorientable),
            {{"orientable", c.orientable_total},
             {"nonorientable", c.nonorientable_total},
             {"total", c.total()},
             {"genus", distribution(c.orientable)},
             {"crosscaps", distribution(c.nonorientable)}},
            true};
}

Outcome count_outcome(long long formula, bool exhaustive, const std::function<long long()>& oracle) {
    Outcome o{std::to_string(formula), {{"count", formula}}, true};
    if (exhaustive) {
        const long long e = oracle();
        o.holds = e == formula;
        o.data["exhaustive"] = e;
        o.text += " exhaustive=" + std::to_string(e);
    }
    return o;
}

// ---- space ----

Outcome space_count(const msg::Multigraph& g, int dim, bool exhaustive, const Settings& st) {
    return count_outcome(msg::count_space_embeddings(g, dim), exhaustive, [&] {
        return static_cast<long long>(msg::enumerate_space_permutations(g, st.budget).size());
    });
}

Outcome space_rectilinear(const msg::Multigraph& g) {
    auto pts = msg::rectilinear_coordinates(g);
    const bool ok = msg::is_rectilinear_embedding(g, pts);
    Json coords = Json::array();
    std::string text;
    for (const auto& p : pts) {
        Json row = Json::array();
        std::string t;
        for (int k = 0; k < 3; ++k) {
            row.push_back(p(k).str());
            t += (k ? "," : "") + p(k).str();
        }
        coords.push_back(row);
        text += "(" + t + ") ";
    }
    return {text + "\nembedding=" + (ok ? "true" : "false"), {{"coordinates", coords}, {"embedding", ok}}, ok};
}

Outcome space_feasible(int n, const std::string& genera_spec, bool nonorientable, bool bipartite) {
    auto genera = int_list(genera_spec);
    const auto kind = bipartite ? msg::MultiKind::complete_bipartite : msg::MultiKind::complete;
    auto b = msg::multi_embedding_bounds(kind, genera, !nonorientable);
    const bool feasible = msg::multi_embedding_feasible(kind, n, genera, !nonorientable);
    return {std::string("feasible=") + (feasible ? "true" : "false") + " bounds=[" + std::to_string(b.lower) + "," +
                std::to_string(b.upper) + "]",
            {{"feasible", feasible}, {"lower", b.lower}, {"upper", b.upper}},
            true};
}

// ---- algebraic systems ----

msg::WeightedDigraph load_model(const std::vector<std::string>& files) {
    if (files.empty()) throw msg::InvalidInput("give --file");
    if (files.size() == 1) {
        auto doc = msg::read_document(files[0]);
        if (msg::document_kind(doc) == "digraph") return msg::digraph_from_json(doc);
    }
    std::vector<msg::PartialBinarySystem> systems;
    for (const auto& f : files) systems.push_back(msg::system_from_json(msg::read_document(f)));
    return msg::multispace_graph(systems);
}

std::string arc_text(const msg::WeightedDigraph& d, int a) {
    const auto& arc = d.arcs[static_cast<std::size_t>(a)];
    return d.vertices[arc.from] + "->" + d.vertices[arc.to] + "[" + arc.weight.operation + d.vertices[arc.weight.element] +
           "]";
}

Outcome algsys_build(const std::vector<std::string>& files) {
    auto d = load_model(files);
    std::string text;
    for (int a = 0; a < static_cast<int>(d.arcs.size()); ++a) text += (text.empty() ? "" : "\n") + arc_text(d, a);
    return {text, msg::to_json(d), true};
}

Outcome algsys_analyze(const std::vector<std::string>& files) {
    auto d = load_model(files);
    auto r = msg::analyze_properties(d);
    auto names = [&](const std::vector<int>& vs) {
        std::vector<std::string> out;
        for (int v : vs) out.push_back(d.vertices[v]);
        return out;
    };
    auto pairs = [&](const std::vector<std::pair<int, int>>& ps) {
        Json j = Json::array();
        for (auto [a, b] : ps) j.push_back({d.vertices[a], d.vertices[b]});
        return j;
    };
    auto list = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
        return "{" + s + "}";
    };
    Json j = {{"connected", r.connected},          {"left_units", names(r.left_units)},
              {"right_units", names(r.right_units)}, {"units", names(r.units)},
              {"inverse_pairs", pairs(r.inverse_pairs)}, {"all_invertible", r.all_invertible},
              {"commuting_pairs", pairs(r.commuting_pairs)}, {"cancellation", r.cancellation}};
    std::ostringstream os;
    os << std::boolalpha << "connected=" << r.connected << " units=" << list(names(r.units))
       << " left_units=" << list(names(r.left_units)) << " right_units=" << list(names(r.right_units))
       << "\nall_invertible=" << r.all_invertible << " inverse_pairs=" << r.inverse_pairs.size()
       << " commuting_pairs=" << r.commuting_pairs.size() << " cancellation=" << r.cancellation;
    if (r.parallel_witness) {
        j["parallel_witness"] = {arc_text(d, r.parallel_witness->first), arc_text(d, r.parallel_witness->second)};
        os << " parallel=" << arc_text(d, r.parallel_witness->first) << "," << arc_text(d, r.parallel_witness->second);
    }
    return {os.str(), j, true};
}

Outcome algsys_euler(const std::vector<std::string>& files) {
    auto d = load_model(files);
    auto r = msg::euler_analysis(d);
    Outcome o;
    o.data = {{"euler", r.euler}};
    o.text = std::string("euler=") + (r.euler ? "true" : "false");
    if (r.unbalanced_vertex) {
        o.data["unbalanced_vertex"] = d.vertices[*r.unbalanced_vertex];
        o.text += " unbalanced=" + d.vertices[*r.unbalanced_vertex];
    }
    if (r.stranded_vertex) {
        o.data["stranded_vertex"] = d.vertices[*r.stranded_vertex];
        o.text += " stranded=" + d.vertices[*r.stranded_vertex];
    }
    if (r.euler) {
        o.holds = msg::is_one_way_matching(d, r.one_way);
        Json matches = Json::array();
        for (const auto& m : r.one_way)
            matches.push_back({{"vertex", d.vertices[m.vertex]}, {"in", arc_text(d, m.in_arc)}, {"out", arc_text(d, m.out_arc)}});
        o.data["one_way"] = matches;
        o.data["circuit"] = r.circuit;
        std::string c;
        for (int a : r.circuit) c += (c.empty() ? "" : " ") + arc_text(d, a);
        o.text += "\ncircuit: " + c;
    }
    return o;
}

Outcome algsys_reconstruct(const std::vector<std::string>& files) {
    auto systems = msg::reconstruct_multispace(load_model(files));
    Outcome o;
    for (const auto& sys : systems) {
        std::string block = "operation " + sys.operation + " on";
        for (const auto& e : sys.elements) block += " " + e;
        for (std::size_t a = 0; a < sys.elements.size(); ++a) {
            block += "\n";
            for (std::size_t b = 0; b < sys.elements.size(); ++b) {
                const auto& cell = sys.table[a][b];
                block += (b ? " " : "") + (cell ? sys.elements[static_cast<std::size_t>(*cell)] : std::string("-"));
            }
        }
        o.text += (o.text.empty() ? "" : "\n") + block;
    }
    o.data = systems.size() == 1 ? msg::to_json(systems[0]) : Json::array();
    if (systems.size() != 1)
        for (const auto& sys : systems) o.data.push_back(msg::to_json(sys));
    return o;
}

// ---- phases ----

msg::GraphPhase<double> load_phase(const std::string& file) { return msg::phase_from_json(load(file)); }

std::string vec_text(const Eigen::Vector3d& v) {
    std::ostringstream os;
    os << "(" << v.x() << "," << v.y() << "," << v.z() << ")";
    return os.str();
}

Json vec_json(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

Outcome phase_matrices(const std::string& file) {
    auto ph = load_phase(file);
    auto m = msg::phase_matrices(ph);
    const int n = m.v.size;
    Json v = Json::array(), lambda = Json::array();
    std::string tv = "V:", tl = "Lambda:";
    for (int i = 0; i < n; ++i) {
        Json rv = Json::array(), rl = Json::array();
        tv += "\n";
        tl += "\n";
        for (int j = 0; j < n; ++j) {
            rv.push_back(vec_json(m.v(i, j).approx()));
            rl.push_back(vec_json(m.lambda(i, j)));
            tv += (j ? " " : "") + vec_text(m.v(i, j).approx());
            tl += (j ? " " : "") + vec_text(m.lambda(i, j));
        }
        v.push_back(rv);
        lambda.push_back(rl);
    }
    return {tv + "\n" + tl, {{"V", v}, {"Lambda", lambda}}, true};
}

Outcome phase_verify(const std::string& file, double tolerance) {
    const double dev = msg::verify_star_identity(load_phase(file));
    std::ostringstream os;
    os << "deviation=" << dev << " holds=" << std::boolalpha << (dev <= tolerance);
    return {os.str(), {{"deviation", dev}, {"holds", dev <= tolerance}}, dev <= tolerance};
}

Outcome phase_capacity(const std::string& file) {
    auto c = msg::capacity(load_phase(file));
    return {"capacity=" + vec_text(c), {{"capacity", vec_json(c)}}, true};
}

Outcome phase_entropy(const std::string& file, bool squared) {
    const double e = msg::entropy(load_phase(file), squared ? msg::EntropyNorm::squared_norm : msg::EntropyNorm::norm);
    std::ostringstream os;
    os << "entropy=" << e;
    return {os.str(), {{"entropy", e}}, true};
}

// The phase's ω is the base point; a seeded random direction moves every vertex.
Outcome phase_diffcheck(const std::string& file, double t, double step, const Settings& st) {
    auto ph = load_phase(file);
    msg::gen::Rng rng(st.seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    msg::AffinePhaseFamily fam{ph.graph, ph.omega, {}};
    for (std::size_t k = 0; k < ph.omega.size(); ++k) fam.direction.emplace_back(d(rng), d(rng), d(rng));
    auto coarse = msg::differential_check(fam, t, step), fine = msg::differential_check(fam, t, step / 2);
    const bool flat = coarse.entropy_deviation < 1e-9;
    const double ratio = flat ? 4.0 : coarse.entropy_deviation / fine.entropy_deviation;
    const bool holds = coarse.capacity_deviation < 1e-8 && (flat || (ratio > 3.5 && ratio < 4.5));
    std::ostringstream os;
    os << "capacity_deviation=" << coarse.capacity_deviation << " entropy_deviation=" << coarse.entropy_deviation
       << " halving_ratio=" << ratio << " order2=" << std::boolalpha << holds;
    return {os.str(),
            {{"capacity_deviation", coarse.capacity_deviation},
             {"entropy_deviation", coarse.entropy_deviation},
             {"halving_ratio", ratio},
             {"entropy_analytic", coarse.entropy_analytic},
             {"entropy_numeric", coarse.entropy_numeric},
             {"order2", holds}},
            holds};
}

// ---- verify ----

Outcome verify_all(const std::string& only, const Settings& st) {
    msg::AcceptanceOptions opts{st.seed, only.empty() ? std::vector<int>{} : int_list(only)};
    Outcome o;
    o.data = Json::array();
    for (const auto& r : msg::run_acceptance(opts)) {
        o.holds &= r.pass;
        o.text += (o.text.empty() ? "" : "\n") + msg::format_result(r);
        o.data.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"millis", r.millis}});
    }
    return o;
}

long long env_budget() {
    if (const char* b = std::getenv("MSG_BUDGET")) {
        try {
            return std::stoll(b);
        } catch (const std::exception&) {
            throw msg::InvalidInput(std::string("MSG_BUDGET is not an integer: ") + b);
        }
    }
    return msg::default_embedding_budget;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph, map, voltage and algebraic-system toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings st;
    long long budget = -1;
    app.add_flag("--json", st.json, "Emit machine-readable output");
    app.add_option("--seed", st.seed, "Seed for randomized checks");
    app.add_option("--budget", budget, "Cap on enumeration sizes (overrides MSG_BUDGET)");

    std::function<Outcome()> action;
    GraphSource src;
    std::string file, s_spec, seq, walk_spec, start, only, generators, genera, bipartite;
    std::vector<std::string> files;
    int odd = 0, vertex = 0, edge = 0, length = 3, complete = 0, dim = 3, n = 3;
    bool exhaustive = false, nonorientable = false, squared = false, bip = false;
    double tolerance = 1e-9, t_param = 0.0, step = 1e-3;

    auto graph_input = [&](CLI::App* c) {
        c->add_option("--file", src.file, "Graph document");
        c->add_option("--family", src.family, "Named graph: K7, K3,3, B2, D0.4.0, C5, P4");
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
        auto* c = parent->add_subcommand(name, help);
        return c;
    };
    auto group = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->require_subcommand(1);
        return c;
    };

    auto* seqc = group("seq", "Degree sequences");
    auto* c = leaf(seqc, "check", "Havel-Hakimi and Erdos-Gallai tests with a realization");
    c->add_option("--seq", seq, "Comma-separated degrees")->required();
    c->callback([&] { action = [&] { return seq_check(seq); }; });

    auto* graphc = group("graph", "Graph operations");
    c = leaf(graphc, "info", "Counts, valencies and adjacency matrix");
    graph_input(c);
    c->callback([&] { action = [&] { return graph_info(src.load()); }; });
    c = leaf(graphc, "ecc", "Eccentricity profile");
    graph_input(c);
    c->callback([&] { action = [&] { return graph_ecc(src.load()); }; });
    c = leaf(graphc, "closure", "Hamiltonian closure");
    graph_input(c);
    c->callback([&] { action = [&] { return graph_outcome(msg::closure(src.load())); }; });
    c = leaf(graphc, "decompose", "Bouquet/dipole parts, or --odd n circuits of K_{2n+1}");
    graph_input(c);
    c->add_option("--odd", odd, "Decompose K_{2n+1} into n hamiltonian circuits");
    c->callback([&] { action = [&] { return graph_decompose(src, odd); }; });
    c = leaf(graphc, "split", "Splitting operator at a vertex");
    graph_input(c);
    c->add_option("--vertex", vertex, "Vertex to split")->required();
    c->callback([&] { action = [&] { return graph_outcome(msg::splitting_operator(src.load(), vertex)); }; });

    auto* groupc = group("group", "Finite groups");
    c = leaf(groupc, "verify", "Check the group axioms of a table");
    c->add_option("--file", file, "Group document")->required();
    c->callback([&] { action = [&] { return group_verify(file); }; });

    auto* cayc = group("cayley", "Cayley graphs of groups and multigroups");
    for (const char* name : {"build", "connected", "factorize"}) {
        c = leaf(cayc, name, name == std::string("build")       ? "Cayley graph as a graph document"
                             : name == std::string("connected") ? "Overlap criterion against direct connectivity"
                                                                : "1- and 2-factors from the connection set");
        c->add_option("--file", file, "Group or multigroup document")->required();
        c->add_option("--s", s_spec, "Connection set labels, ';' between operations")->required();
    }
    cayc->get_subcommand("build")->callback([&] { action = [&] { return cayley_build(file, s_spec); }; });
    cayc->get_subcommand("connected")->callback([&] { action = [&] { return cayley_connected(file, s_spec); }; });
    cayc->get_subcommand("factorize")->callback([&] { action = [&] { return cayley_factorize(file, s_spec); }; });

    auto* liftc = group("lift", "Multi-voltage lifts");
    c = leaf(liftc, "type1", "Lift a type-1 multi-voltage graph");
    c->add_option("--file", file, "voltage1 document")->required();
    c->callback([&] { action = [&] { return lift_graph(file, false); }; });
    c = leaf(liftc, "type2", "Lift a type-2 multi-voltage graph");
    c->add_option("--file", file, "voltage2 document")->required();
    c->callback([&] { action = [&] { return lift_graph(file, true); }; });
    c = leaf(liftc, "walks", "Count liftings of a walk");
    c->add_option("--file", file, "voltage1 document")->required();
    c->add_option("--walk", walk_spec, "Semi-arc ids 2e+end; random when omitted");
    c->add_option("--length", length, "Length of the random walk");
    c->add_option("--start", start, "Start fibre element label");
    c->callback([&] { action = [&] { return lift_walks(file, walk_spec, length, start, st); }; });
    c = leaf(liftc, "circuit", "Homogeneous liftings of a closed walk");
    c->add_option("--file", file, "voltage1 document")->required();
    c->add_option("--circuit", walk_spec, "Semi-arc ids of a closed walk")->required();
    c->callback([&] { action = [&] { return lift_circuit(file, walk_spec); }; });

    c = app.add_subcommand("quotient", "Quotient of a graph by the group its permutations generate");
    graph_input(c);
    c->add_option("--generators", generators, "Vertex images, ';' between permutations")->required();
    c->callback([&] { action = [&] { return quotient(src, generators); }; });

    auto* mapc = group("map", "Combinatorial maps");
    auto map_leaf = [&](const std::string& name, const std::string& help, std::function<Outcome()> run) {
        auto* m = leaf(mapc, name, help);
        m->add_option("--file", file, "Map document")->required();
        m->callback([&action, run] { action = run; });
        return m;
    };
    map_leaf("validate", "Check the map axioms", [&] { return map_validate(file); });
    map_leaf("orbits", "Vertices, edges and faces", [&] { return map_orbits(file); });
    map_leaf("chi", "Euler characteristic and orientability", [&] { return map_chi(file); });
    map_leaf("orientable", "Orientability with genus or crosscap number", [&] { return map_orientable(file); });
    map_leaf("twist", "Twist one edge", [&] { return map_document(msg::edge_twist(valid_map(file), edge)); })
        ->add_option("--edge", edge, "Edge index")
        ->required();
    c = leaf(mapc, "from-rotation", "Map of a rotation system");
    c->add_option("--file", file, "Rotation document")->required();
    c->callback([&] {
        action = [&] { return map_document(msg::map_from_rotation(msg::rotation_from_json(load(file)))); };
    });
    c = leaf(mapc, "lift", "Lift a map by a multi-voltage and check the Euler characteristic formula");
    c->add_option("--file", file, "map_voltage document")->required();
    c->callback([&] { action = [&] { return map_lift(file); }; });

    auto* genc = group("genus", "Genus values");
    c = leaf(genc, "formula", "Closed formulas for K_n and K(m,n)");
    c->add_option("--complete", complete, "n for K_n");
    c->add_option("--bipartite", bipartite, "m,n for K(m,n)");
    c->callback([&] { action = [&] { return genus_formula(complete, bipartite); }; });
    c = leaf(genc, "range", "Genus and crosscap ranges by enumeration");
    graph_input(c);
    c->callback([&] { action = [&] { return genus_range(src.load(), st); }; });
    c = leaf(genc, "max-xuong", "Maximum genus from spanning trees");
    graph_input(c);
    c->callback([&] {
        action = [&] {
            const int g = msg::xuong_max_genus(src.load(), st.budget);
            return Outcome{std::to_string(g), {{"max_genus", g}}, true};
        };
    });
    c = leaf(genc, "max-nebesky", "Maximum genus from the parenthesization criterion");
    graph_input(c);
    c->callback([&] {
        action = [&] {
            const int g = msg::nebesky_max_genus(src.load());
            return Outcome{std::to_string(g), {{"max_genus", g}}, true};
        };
    });

    auto* enc = group("enumerate", "Embedding and rooted counts");
    c = leaf(enc, "embeddings", "Census of all embeddings");
    graph_input(c);
    c->callback([&] { action = [&] { return enumerate_embeddings(src.load(), st); }; });
    c = leaf(enc, "rooted-maps", "Rooted maps on the graph");
    graph_input(c);
    c->add_flag("--exhaustive", exhaustive, "Also count by enumeration");
    c->callback([&] {
        action = [&] {
            auto g = src.load();
            return count_outcome(msg::rooted_map_count(g), exhaustive,
                                 [&] { return msg::rooted_map_count_exhaustive(g, st.budget); });
        };
    });
    c = leaf(enc, "rooted-manifold", "Rooted manifold graphs over the graph");
    graph_input(c);
    c->add_option("--n", n, "Dimension index n >= 3");
    c->add_flag("--exhaustive", exhaustive, "Also count by enumeration");
    c->callback([&] {
        action = [&] {
            auto g = src.load();
            return count_outcome(msg::rooted_manifold_count(g, n), exhaustive,
                                 [&] { return msg::rooted_manifold_count_exhaustive(g, n, st.budget); });
        };
    });

    auto* spc = group("space", "Embeddings in space");
    c = leaf(spc, "count", "Space embeddings via space permutations");
    graph_input(c);
    c->add_option("--dim", dim, "Dimension");
    c->add_flag("--exhaustive", exhaustive, "Also enumerate the permutations");
    c->callback([&] { action = [&] { return space_count(src.load(), dim, exhaustive, st); }; });
    c = leaf(spc, "rectilinear", "Moment-curve coordinates with an exact crossing check");
    graph_input(c);
    c->callback([&] { action = [&] { return space_rectilinear(src.load()); }; });
    c = leaf(spc, "blocks", "Planar block number");
    graph_input(c);
    c->callback([&] {
        action = [&] {
            const int b = msg::planar_block_number(src.load());
            return Outcome{std::to_string(b), {{"planar_block_number", b}}, true};
        };
    });
    c = leaf(spc, "feasible", "Multi-embedding of K_n on several surfaces");
    c->add_option("--n", n, "Order of K_n (or K(n,n))")->required();
    c->add_option("--genera", genera, "Surface genera, comma-separated")->required();
    c->add_flag("--nonorientable", nonorientable, "Surfaces are non-orientable");
    c->add_flag("--bipartite", bip, "Use K(n,n)");
    c->callback([&] { action = [&] { return space_feasible(n, genera, nonorientable, bip); }; });

    auto* alc = group("algsys", "Graph models of algebraic systems");
    auto alg_leaf = [&](const std::string& name, const std::string& help, std::function<Outcome()> run) {
        auto* a = leaf(alc, name, help);
        a->add_option("--file", files, "System documents, or one digraph document")->required();
        a->callback([&action, run] { action = run; });
    };
    alg_leaf("build", "Weighted digraph of one or more systems", [&] { return algsys_build(files); });
    alg_leaf("analyze", "Connectivity, units, inverses, commutativity, cancellation", [&] { return algsys_analyze(files); });
    alg_leaf("euler", "Euler circuit and one-way matching", [&] { return algsys_euler(files); });
    alg_leaf("reconstruct", "Operation tables read back from the digraph", [&] { return algsys_reconstruct(files); });

    auto* phc = group("phase", "Graph phases");
    auto phase_leaf = [&](const std::string& name, const std::string& help, std::function<Outcome()> run) {
        auto* p = leaf(phc, name, help);
        p->add_option("--file", file, "Phase document")->required();
        p->callback([&action, run] { action = run; });
        return p;
    };
    phase_leaf("matrices", "V and Lambda", [&] { return phase_matrices(file); });
    phase_leaf("verify", "Star identity V * V^t = Lambda", [&] { return phase_verify(file, tolerance); })
        ->add_option("--tolerance", tolerance, "Relative tolerance");
    phase_leaf("capacity", "Sum of vertex vectors", [&] { return phase_capacity(file); });
    phase_leaf("entropy", "Sum of log norms", [&] { return phase_entropy(file, squared); })
        ->add_flag("--squared", squared, "Use squared norms");
    auto* dc = phase_leaf("diffcheck", "Finite differences against analytic derivatives",
                          [&] { return phase_diffcheck(file, t_param, step, st); });
    dc->add_option("--t", t_param, "Family parameter");
    dc->add_option("--step", step, "Central difference step");

    auto* vc = group("verify", "Acceptance suite");
    c = leaf(vc, "all", "Run every acceptance criterion");
    c->add_option("--only", only, "Comma-separated criterion ids");
    c->callback([&] { action = [&] { return verify_all(only, st); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        st.budget = budget > 0 ? budget : env_budget();
        Outcome out = action();
        if (st.json)
            std::cout << out.data.dump() << '\n';
        else
            std::cout << out.text << '\n';
        return out.holds ? ok : property_failure;
    } catch (const msg::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return over_budget;
    } catch (const msg::Error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return bad_input;
    }
}
