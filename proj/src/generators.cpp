#include "msg/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "msg/error.hpp"

namespace msg::gen {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

Multigraph connected_graph(Rng& rng, int vertices, int extra_edges, bool multigraph) {
    require(vertices >= 1, "need a vertex");
    Multigraph g(vertices);
    for (int v = 1; v < vertices; ++v) g.add_edge(uniform(rng, 0, v - 1), v);
    const int max_simple = vertices * (vertices - 1) / 2;
    for (int k = 0; k < extra_edges; ++k) {
        if (!multigraph && g.edge_count() >= max_simple) break;
        for (;;) {
            int u = uniform(rng, 0, vertices - 1), v = uniform(rng, 0, vertices - 1);
            if (!multigraph && (u == v || g.has_edge(u, v))) continue;
            if (u > v) std::swap(u, v);
            g.add_edge(u, v);
            break;
        }
    }
    return g;
}

std::vector<int> walk(Rng& rng, const Multigraph& g, int length) {
    require(g.edge_count() > 0, "walk needs an edge");
    const auto inc = g.incident_semi_arcs();
    std::vector<int> out;
    int s = uniform(rng, 0, 2 * g.edge_count() - 1);
    for (int k = 0; k < length; ++k) {
        out.push_back(s);
        const auto& next = inc[g.semi_arc_vertex(s ^ 1)];
        s = next[uniform(rng, 0, static_cast<int>(next.size()) - 1)];
    }
    return out;
}

std::pair<Multigraph, std::vector<int>> graph_with_circuit(Rng& rng, int m, int chords) {
    Multigraph g = cycle_graph(m);
    std::vector<int> circuit;
    for (int e = 0; e < m; ++e) circuit.push_back(semi_arc(e, 0));
    for (int k = 0; k < chords; ++k) g.add_edge(uniform(rng, 0, m - 1), uniform(rng, 0, m - 1));
    return {std::move(g), std::move(circuit)};
}

std::vector<FiniteGroup> group_catalogue(int max_order) {
    auto out = abelian_groups_up_to(max_order);
    for (int n = 3; 2 * n <= max_order; ++n) out.push_back(dihedral_group(n));
    return out;
}

namespace {

std::vector<std::string> shuffled_labels(Rng& rng, const FiniteGroup& g, bool keep_identity) {
    auto labels = g.labels();
    std::shuffle(labels.begin() + (keep_identity ? 1 : 0), labels.end(), rng);
    return labels;
}

}  // namespace

MultiGroup equal_multigroup(Rng& rng, const FiniteGroup& g, int operations, bool keep_identity) {
    std::vector<FiniteGroup> parts{g};
    for (int i = 1; i < operations; ++i) parts.push_back(relabelled(g, shuffled_labels(rng, g, keep_identity)));
    return MultiGroup::from_groups(parts);
}

MultiGroup overlapping_multigroup(Rng& rng, int max_universe, int max_parts, bool shared_identity) {
    const auto catalogue = group_catalogue(max_universe);
    const int pool_size = shared_identity ? max_universe - 1 : max_universe;
    std::vector<std::string> pool;
    for (int k = 0; k < pool_size; ++k) pool.push_back("u" + std::to_string(k));
    std::vector<FiniteGroup> parts;
    const int count = uniform(rng, 1, max_parts);
    for (int i = 0; i < count; ++i) {
        const auto& g = catalogue[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(catalogue.size()) - 1))];
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::string> labels;
        if (shared_identity) labels.push_back("e");
        labels.insert(labels.end(), pool.begin(), pool.begin() + (g.order() - static_cast<int>(labels.size())));
        parts.push_back(relabelled(g, labels));
    }
    return MultiGroup::from_groups(parts);
}

std::vector<std::vector<int>> connection_sets(Rng& rng, const MultiGroup& mg) {
    const int u = mg.universe_size();
    // classes of the relation x ~ inverse_i(x); a class is usable when no member is an identity it lives with
    DisjointSets ds(u);
    std::vector<char> banned(static_cast<std::size_t>(u), 0);
    for (int i = 0; i < mg.operation_count(); ++i) {
        banned[mg.identity(i)] = 1;
        for (int x : mg.constituent(i).members) ds.unite(x, mg.inverse(i, x));
    }
    std::vector<char> class_banned(static_cast<std::size_t>(u), 0);
    for (int x = 0; x < u; ++x)
        if (banned[x]) class_banned[ds.find(x)] = 1;
    std::vector<char> chosen(static_cast<std::size_t>(u), 0);
    for (int x = 0; x < u; ++x)
        if (ds.find(x) == x && !class_banned[x]) chosen[x] = coin(rng);
    auto trace = [&] {
        std::vector<std::vector<int>> s(static_cast<std::size_t>(mg.operation_count()));
        for (int i = 0; i < mg.operation_count(); ++i)
            for (int x : mg.constituent(i).members)
                if (chosen[ds.find(x)]) s[i].push_back(x);
        return s;
    };
    // grow until every S_i generates Γ_i; classes only get added, so this ends
    for (bool grown = true; grown;) {
        grown = false;
        const auto s = trace();
        for (int i = 0; i < mg.operation_count() && !grown; ++i) {
            const auto& part = mg.constituent(i);
            std::vector<int> local;
            for (int x : s[i]) local.push_back(mg.local(i, x));
            auto sub = part.group.generated(local);
            if (static_cast<int>(sub.size()) == part.group.order()) continue;
            std::vector<int> outside;
            for (int k = 0; k < part.group.order(); ++k)
                if (std::find(sub.begin(), sub.end(), k) == sub.end() && !class_banned[ds.find(part.members[k])])
                    outside.push_back(part.members[k]);
            if (outside.empty()) throw InvalidInput("no admissible generating set");
            chosen[ds.find(outside[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(outside.size()) - 1))])] = 1;
            grown = true;
        }
    }
    return trace();
}

RotationSystem rotation_system(Rng& rng, const Multigraph& g, bool allow_twists) {
    RotationSystem rs{g, g.incident_semi_arcs(), std::vector<int>(static_cast<std::size_t>(g.edge_count()), 0)};
    for (auto& c : rs.rotation)
        if (c.size() > 1) std::shuffle(c.begin() + 1, c.end(), rng);
    if (allow_twists)
        for (auto& l : rs.lambda) l = coin(rng);
    return normalized(std::move(rs));
}

MultiVoltage1 voltage1(Rng& rng, Multigraph base, MultiGroup groups) {
    MultiVoltage1 mv{std::move(base), std::move(groups), {}};
    for (int e = 0; e < mv.base.edge_count(); ++e) mv.psi.push_back(uniform(rng, 0, mv.groups.universe_size() - 1));
    return mv;
}

MultiVoltage2 voltage2(Rng& rng, Multigraph base, MultiGroup groups) {
    MultiVoltage2 mv{std::move(base), std::move(groups), {}, {}};
    const int ops = mv.groups.operation_count();
    for (int v = 0; v < mv.base.vertex_count(); ++v) mv.vertex_class.push_back(uniform(rng, 0, ops - 1));
    for (const auto& ed : mv.base.edges()) {
        auto shared = mv.groups.overlap(mv.vertex_class[ed.tail], mv.vertex_class[ed.head]);
        require(!shared.empty(), "end groups do not meet");
        mv.tau.push_back(shared[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(shared.size()) - 1))]);
    }
    return mv;
}

MapVoltage map_voltage(Rng& rng, CombinatorialMap base, MultiGroup groups) {
    MapVoltage mv{std::move(base), std::move(groups), {}};
    for (int e = 0; e < mv.base.edge_count(); ++e)
        mv.edge_voltage.push_back(uniform(rng, 0, mv.groups.universe_size() - 1));
    return mv;
}

namespace {

Eigen::Vector3d random_point(Rng& rng) {
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    return {d(rng), d(rng), d(rng)};
}

}  // namespace

GraphPhase<double> phase(Rng& rng, int vertices, PhaseOp op) {
    Multigraph g = connected_graph(rng, vertices, uniform(rng, 0, vertices), false);
    std::vector<Eigen::Vector3d> omega;
    for (int v = 0; v < vertices; ++v) omega.push_back(random_point(rng));
    return make_phase(std::move(g), std::move(omega), op);
}

AffinePhaseFamily affine_family(Rng& rng, int vertices) {
    AffinePhaseFamily f{connected_graph(rng, vertices, uniform(rng, 0, vertices), false), {}, {}};
    for (int v = 0; v < vertices; ++v) {
        f.base.push_back(random_point(rng));
        f.direction.push_back(random_point(rng));
    }
    return f;
}

}  // namespace msg::gen
