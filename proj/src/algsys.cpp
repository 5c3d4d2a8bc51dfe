#include "msg/algsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "msg/error.hpp"

namespace msg {

void validate(const PartialBinarySystem& sys) {
    const auto n = sys.elements.size();
    require(sys.table.size() == n, "operation table needs one row per element");
    for (const auto& row : sys.table) {
        require(row.size() == n, "operation table rows must have one cell per element");
        for (const auto& cell : row) require(!cell || (*cell >= 0 && *cell < static_cast<int>(n)), "product outside the element list");
    }
    auto labels = sys.elements;
    std::sort(labels.begin(), labels.end());
    require(std::adjacent_find(labels.begin(), labels.end()) == labels.end(), "element labels must be distinct");
}

int defined_cell_count(const PartialBinarySystem& sys) {
    int count = 0;
    for (const auto& row : sys.table) count += static_cast<int>(std::count_if(row.begin(), row.end(), [](const auto& c) { return c.has_value(); }));
    return count;
}

bool is_complete(const PartialBinarySystem& sys) {
    return defined_cell_count(sys) == static_cast<int>(sys.elements.size() * sys.elements.size());
}

PartialBinarySystem system_from_group(const FiniteGroup& g, std::string operation) {
    PartialBinarySystem sys{g.labels(), {}, std::move(operation)};
    for (int a = 0; a < g.order(); ++a) {
        auto& row = sys.table.emplace_back();
        for (int b = 0; b < g.order(); ++b) row.emplace_back(g.op(a, b));
    }
    return sys;
}

PartialBinarySystem letter_cyclic_system() {
    return {{"e", "a", "b"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, "·"};
}

PartialBinarySystem four_symbol_partial_system() {
    constexpr std::nullopt_t undefined = std::nullopt;
    // rows and columns: 1, 2, a, b
    return {{"1", "2", "a", "b"},
            {{undefined, 2, 3, undefined},
             {3, undefined, undefined, 2},
             {undefined, undefined, undefined, 0},
             {undefined, undefined, 1, undefined}},
            "o"};
}

// ---------------------------------------------------------------------------

WeightedDigraph graph_model(const PartialBinarySystem& sys) {
    return multispace_graph({sys});
}

WeightedDigraph multispace_graph(const std::vector<PartialBinarySystem>& systems) {
    WeightedDigraph d;
    std::map<std::string, int> index;
    for (std::size_t s = 0; s < systems.size(); ++s) {
        const auto& sys = systems[s];
        validate(sys);
        SystemSlot slot{sys.operation, {}};
        for (const auto& label : sys.elements) {
            auto [it, fresh] = index.emplace(label, static_cast<int>(d.vertices.size()));
            if (fresh) d.vertices.push_back(label);
            slot.members.push_back(it->second);
        }
        for (std::size_t a = 0; a < sys.table.size(); ++a)
            for (std::size_t b = 0; b < sys.table[a].size(); ++b)
                if (const auto c = sys.table[a][b])
                    d.arcs.push_back({slot.members[a], slot.members[*c], {sys.operation, slot.members[b]}, static_cast<int>(s)});
        d.systems.push_back(std::move(slot));
    }
    return d;
}

PartialBinarySystem reconstruct_system(const WeightedDigraph& d, int system) {
    require(system >= 0 && system < static_cast<int>(d.systems.size()), "no such constituent system");
    const auto& slot = d.systems[system];
    const int n = static_cast<int>(slot.members.size());
    std::map<int, int> local;
    for (int i = 0; i < n; ++i) local.emplace(slot.members[i], i);
    PartialBinarySystem sys{{}, std::vector<std::vector<std::optional<int>>>(n, std::vector<std::optional<int>>(n)),
                            slot.operation};
    for (int m : slot.members) sys.elements.push_back(d.vertices.at(m));
    std::map<std::pair<int, int>, int> source_arc;
    for (std::size_t i = 0; i < d.arcs.size(); ++i) {
        const auto& arc = d.arcs[i];
        if (arc.system != system) continue;
        require(arc.weight.operation == slot.operation, "arc " + std::to_string(i) + " carries a foreign operation");
        const auto a = local.find(arc.from), b = local.find(arc.weight.element), c = local.find(arc.to);
        require(a != local.end() && b != local.end() && c != local.end(),
                "arc " + std::to_string(i) + " leaves its system's elements");
        auto& cell = sys.table[a->second][b->second];
        const auto key = std::pair{a->second, b->second};
        if (cell && *cell != c->second)
            throw InvalidInput("arcs " + std::to_string(source_arc[key]) + " and " + std::to_string(i) +
                               " give two values for " + d.vertices[arc.from] + slot.operation +
                               d.vertices[arc.weight.element]);
        cell = c->second;
        source_arc.emplace(key, static_cast<int>(i));
    }
    return sys;
}

std::vector<PartialBinarySystem> reconstruct_multispace(const WeightedDigraph& d) {
    std::vector<PartialBinarySystem> out;
    for (int s = 0; s < static_cast<int>(d.systems.size()); ++s) out.push_back(reconstruct_system(d, s));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> weak_component_labels(const WeightedDigraph& d) {
    DisjointSets ds(static_cast<int>(d.vertices.size()));
    for (const auto& arc : d.arcs) ds.unite(arc.from, arc.to);
    std::vector<int> lab(d.vertices.size());
    for (std::size_t v = 0; v < lab.size(); ++v) lab[v] = ds.find(static_cast<int>(v));
    return lab;
}

}  // namespace

std::vector<int> out_degrees(const WeightedDigraph& d) {
    std::vector<int> deg(d.vertices.size(), 0);
    for (const auto& arc : d.arcs) ++deg[arc.from];
    return deg;
}

std::vector<int> in_degrees(const WeightedDigraph& d) {
    std::vector<int> deg(d.vertices.size(), 0);
    for (const auto& arc : d.arcs) ++deg[arc.to];
    return deg;
}

PropertyReport analyze_properties(const WeightedDigraph& d) {
    const int nv = static_cast<int>(d.vertices.size());
    for (const auto& arc : d.arcs)
        require(arc.from >= 0 && arc.from < nv && arc.to >= 0 && arc.to < nv && arc.weight.element >= 0 &&
                    arc.weight.element < nv,
                "arc endpoint or weight outside the vertex list");
    PropertyReport r;

    const auto lab = weak_component_labels(d);
    if (nv > 0) {
        r.connected = std::all_of(lab.begin(), lab.end(), [&](int l) { return l == lab[0]; });
        if (!r.connected)
            for (int v = 0; v < nv; ++v)
                if (lab[v] == lab[0]) r.partition_side.push_back(v);
    }

    std::vector<int> out_count(nv, 0), out_fixed(nv, 0), weight_count(nv, 0), weight_loops(nv, 0);
    for (const auto& arc : d.arcs) {
        ++out_count[arc.from];
        if (arc.to == arc.weight.element) ++out_fixed[arc.from];
        ++weight_count[arc.weight.element];
        if (arc.from == arc.to) ++weight_loops[arc.weight.element];
    }
    for (int u = 0; u < nv; ++u) {
        const bool left = out_count[u] > 0 && out_fixed[u] == out_count[u];
        const bool right = weight_count[u] > 0 && weight_loops[u] == weight_count[u];
        if (left) r.left_units.push_back(u);
        if (right) r.right_units.push_back(u);
        if (left && right) r.units.push_back(u);
    }

    // Weight of the arc a → head, if any: map (a, head) → weights.
    std::map<std::pair<int, int>, std::vector<int>> weights_between;
    for (const auto& arc : d.arcs) weights_between[{arc.from, arc.to}].push_back(arc.weight.element);
    auto has_arc = [&](int from, int to, int weight) {
        const auto it = weights_between.find({from, to});
        return it != weights_between.end() && std::find(it->second.begin(), it->second.end(), weight) != it->second.end();
    };

    if (!r.units.empty()) {
        const int unit = r.units.front();
        std::vector<char> invertible(nv, 0);
        for (int a = 0; a < nv; ++a) {
            const auto it = weights_between.find({a, unit});
            if (it == weights_between.end()) continue;
            for (int b : it->second)
                if (has_arc(b, unit, a)) {
                    invertible[a] = 1;
                    if (a <= b) r.inverse_pairs.emplace_back(a, b);
                }
        }
        std::sort(r.inverse_pairs.begin(), r.inverse_pairs.end());
        r.inverse_pairs.erase(std::unique(r.inverse_pairs.begin(), r.inverse_pairs.end()), r.inverse_pairs.end());
        r.all_invertible = std::all_of(invertible.begin(), invertible.end(), [](char c) { return c != 0; });
    }

    // a∘b = b∘a = x shows up as arcs (a,x) weighted b and (b,x) weighted a.
    for (const auto& arc : d.arcs) {
        const int a = arc.from, b = arc.weight.element;
        if (a < b && has_arc(b, arc.to, a)) r.commuting_pairs.emplace_back(a, b);
    }
    std::sort(r.commuting_pairs.begin(), r.commuting_pairs.end());
    r.commuting_pairs.erase(std::unique(r.commuting_pairs.begin(), r.commuting_pairs.end()), r.commuting_pairs.end());

    std::map<std::tuple<int, int, int>, int> first_arc;
    for (std::size_t i = 0; i < d.arcs.size(); ++i) {
        const auto& arc = d.arcs[i];
        const auto [it, fresh] = first_arc.emplace(std::tuple{arc.system, arc.from, arc.to}, static_cast<int>(i));
        if (!fresh) {
            r.cancellation = false;
            r.parallel_witness = std::pair{it->second, static_cast<int>(i)};
            break;
        }
    }
    return r;
}

bool is_complete_multiple_2_graph(const WeightedDigraph& d) {
    const auto nv = d.vertices.size();
    std::vector<std::vector<int>> count(nv, std::vector<int>(nv, 0));
    for (const auto& arc : d.arcs) ++count[arc.from][arc.to];
    for (const auto& row : count)
        for (int c : row)
            if (c != 1) return false;
    return true;
}

std::vector<std::pair<int, int>> equal_weight_opposite_pairs(const WeightedDigraph& d) {
    std::map<std::tuple<int, int, Weight>, int> arcs;
    for (const auto& arc : d.arcs) arcs.emplace(std::tuple{arc.from, arc.to, arc.weight}, 1);
    std::vector<std::pair<int, int>> out;
    for (const auto& arc : d.arcs)
        if (arc.from < arc.to && arcs.contains({arc.to, arc.from, arc.weight})) out.emplace_back(arc.from, arc.to);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------

EulerReport euler_analysis(const WeightedDigraph& d) {
    EulerReport r;
    const int nv = static_cast<int>(d.vertices.size());
    const auto out = out_degrees(d), in = in_degrees(d);
    for (int v = 0; v < nv; ++v)
        if (out[v] != in[v]) {
            r.unbalanced_vertex = v;
            return r;
        }
    if (d.arcs.empty()) {
        r.euler = true;
        return r;
    }
    // Isolated vertices are ignored; the rest must form one component.
    const auto lab = weak_component_labels(d);
    const int main = lab[d.arcs.front().from];
    for (int v = 0; v < nv; ++v)
        if (out[v] > 0 && lab[v] != main) {
            r.stranded_vertex = v;
            return r;
        }
    r.euler = true;

    std::vector<std::vector<int>> leaving(nv), entering(nv);
    for (std::size_t i = 0; i < d.arcs.size(); ++i) {
        leaving[d.arcs[i].from].push_back(static_cast<int>(i));
        entering[d.arcs[i].to].push_back(static_cast<int>(i));
    }
    for (int v = 0; v < nv; ++v)
        for (std::size_t k = 0; k < entering[v].size(); ++k) r.one_way.push_back({v, entering[v][k], leaving[v][k]});

    // Hierholzer over arc indices.
    std::vector<std::size_t> next(nv, 0);
    std::vector<int> vertex_stack{d.arcs.front().from}, arc_stack;
    while (!vertex_stack.empty()) {
        const int v = vertex_stack.back();
        if (next[v] < leaving[v].size()) {
            const int a = leaving[v][next[v]++];
            vertex_stack.push_back(d.arcs[a].to);
            arc_stack.push_back(a);
        } else {
            vertex_stack.pop_back();
            if (!arc_stack.empty()) {
                r.circuit.push_back(arc_stack.back());
                arc_stack.pop_back();
            }
        }
    }
    std::reverse(r.circuit.begin(), r.circuit.end());
    return r;
}

bool is_one_way_matching(const WeightedDigraph& d, const std::vector<OneWayMatch>& matches) {
    const auto m = d.arcs.size();
    std::vector<int> used_in(m, 0), used_out(m, 0);
    for (const auto& match : matches) {
        if (match.in_arc < 0 || match.out_arc < 0 || static_cast<std::size_t>(match.in_arc) >= m ||
            static_cast<std::size_t>(match.out_arc) >= m)
            return false;
        if (d.arcs[match.in_arc].to != match.vertex || d.arcs[match.out_arc].from != match.vertex) return false;
        ++used_in[match.in_arc];
        ++used_out[match.out_arc];
    }
    return std::all_of(used_in.begin(), used_in.end(), [](int c) { return c == 1; }) &&
           std::all_of(used_out.begin(), used_out.end(), [](int c) { return c == 1; });
}

}  // namespace msg
