#include "msg/voltage.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "msg/error.hpp"

namespace msg {

Multigraph LiftedGraph::sublift(int operation) const {
    Multigraph out(graph.vertex_count());
    for (int e = 0; e < graph.edge_count(); ++e)
        if (edge_origin[e].operation == operation) out.add_edge(graph.edge(e).tail, graph.edge(e).head);
    return out;
}

void validate(const MultiVoltage1& mv) {
    require(static_cast<int>(mv.psi.size()) == mv.base.edge_count(), "one voltage per edge");
    for (int b : mv.psi) require(b >= 0 && b < mv.groups.universe_size(), "voltage outside universe");
}

void validate(const MultiVoltage2& mv) {
    const auto& mg = mv.groups;
    require(static_cast<int>(mv.vertex_class.size()) == mv.base.vertex_count(), "one class per vertex");
    require(static_cast<int>(mv.tau.size()) == mv.base.edge_count(), "one voltage per edge");
    for (int c : mv.vertex_class) require(c >= 0 && c < mg.operation_count(), "vertex class out of range");
    for (int e = 0; e < mv.base.edge_count(); ++e) {
        int i = mv.vertex_class[mv.base.edge(e).tail], j = mv.vertex_class[mv.base.edge(e).head];
        int b = mv.tau[e];
        require(b >= 0 && b < mg.universe_size(), "voltage outside universe");
        require(mg.contains(i, b) && mg.contains(j, b), "voltage must lie in the intersection of the end groups");
    }
}

namespace {

LiftedGraph empty_lift(const Multigraph& base, int universe) {
    LiftedGraph l;
    l.universe = universe;
    l.index.assign(static_cast<std::size_t>(base.vertex_count() * universe), -1);
    return l;
}

int add_lift_vertex(LiftedGraph& l, int v, int a) {
    int id = l.graph.add_vertex();
    l.vertex_label.emplace_back(v, a);
    l.index[static_cast<std::size_t>(v * l.universe + a)] = id;
    return id;
}

}  // namespace

LiftedGraph lift_type1(const MultiVoltage1& mv) {
    validate(mv);
    const auto& mg = mv.groups;
    const int u = mg.universe_size();
    LiftedGraph l = empty_lift(mv.base, u);
    for (int v = 0; v < mv.base.vertex_count(); ++v)
        for (int a = 0; a < u; ++a) add_lift_vertex(l, v, a);
    for (int e = 0; e < mv.base.edge_count(); ++e) {
        const Edge& ed = mv.base.edge(e);
        const int b = mv.psi[e];
        for (int a = 0; a < u; ++a)
            for (int i = 0; i < mg.operation_count(); ++i) {
                auto c = mg.op(i, a, b);
                if (!c) continue;
                l.graph.add_edge(l.vertex(ed.tail, a), l.vertex(ed.head, *c));
                l.edge_origin.push_back({e, a, i});
            }
    }
    return l;
}

LiftedGraph lift_type2(const MultiVoltage2& mv) {
    validate(mv);
    const auto& mg = mv.groups;
    LiftedGraph l = empty_lift(mv.base, mg.universe_size());
    for (int v = 0; v < mv.base.vertex_count(); ++v)
        for (int a : mg.constituent(mv.vertex_class[v]).members) add_lift_vertex(l, v, a);
    for (int e = 0; e < mv.base.edge_count(); ++e) {
        const Edge& ed = mv.base.edge(e);
        const int i = mv.vertex_class[ed.tail], j = mv.vertex_class[ed.head];
        const int b = mv.tau[e];
        for (int a : mg.constituent(i).members) {
            if (!mg.contains(j, a)) continue;
            int c = *mg.op(j, a, b);
            l.graph.add_edge(l.vertex(ed.tail, a), l.vertex(ed.head, c));
            l.edge_origin.push_back({e, a, j});
        }
    }
    return l;
}

bool is_walk(const Multigraph& g, std::span<const int> walk) {
    for (std::size_t k = 0; k < walk.size(); ++k) {
        if (walk[k] < 0 || walk[k] >= 2 * g.edge_count()) return false;
        if (k > 0 && g.semi_arc_vertex(walk[k - 1] ^ 1) != g.semi_arc_vertex(walk[k])) return false;
    }
    return true;
}

namespace {

// Fiber reached by one step under operation i, with the tail-side fiber of the lifted edge.
struct Step {
    int next;
    int tail_fiber;
};

std::optional<Step> step(const MultiVoltage1& mv, int s, int cur, int i) {
    const auto& mg = mv.groups;
    const int b = mv.psi[semi_arc_edge(s)];
    if (!mg.contains(i, cur) || !mg.contains(i, b)) return std::nullopt;
    if (semi_arc_end(s) == 0) return Step{*mg.op(i, cur, b), cur};
    int prev = *mg.op(i, cur, mg.inverse(i, b));
    return Step{prev, prev};
}

std::map<std::tuple<int, int, int>, int> origin_index(const LiftedGraph& l) {
    std::map<std::tuple<int, int, int>, int> idx;
    for (int e = 0; e < static_cast<int>(l.edge_origin.size()); ++e) {
        const auto& o = l.edge_origin[e];
        idx[{o.base_edge, o.fiber, o.operation}] = e;
    }
    return idx;
}

}  // namespace

std::vector<LiftedWalk> lift_walk(const MultiVoltage1& mv, const LiftedGraph& lift, std::span<const int> walk,
                                  int start_fiber) {
    require(is_walk(mv.base, walk), "not a walk in the base graph");
    require(start_fiber >= 0 && start_fiber < mv.groups.universe_size(), "start fiber outside universe");
    const auto idx = origin_index(lift);
    std::vector<LiftedWalk> out;
    LiftedWalk cur;
    const int start_v = walk.empty() ? 0 : mv.base.semi_arc_vertex(walk.front());
    cur.vertices.push_back(lift.vertex(start_v, start_fiber));
    std::vector<int> fiber{start_fiber};
    auto go = [&](auto&& self, std::size_t k) -> void {
        if (k == walk.size()) {
            out.push_back(cur);
            return;
        }
        const int s = walk[k];
        for (int i = 0; i < mv.groups.operation_count(); ++i) {
            auto st = step(mv, s, fiber.back(), i);
            if (!st) continue;
            cur.operations.push_back(i);
            cur.edges.push_back(idx.at({semi_arc_edge(s), st->tail_fiber, i}));
            cur.vertices.push_back(lift.vertex(mv.base.semi_arc_vertex(s ^ 1), st->next));
            fiber.push_back(st->next);
            self(self, k + 1);
            fiber.pop_back();
            cur.vertices.pop_back();
            cur.edges.pop_back();
            cur.operations.pop_back();
        }
    };
    go(go, 0);
    return out;
}

long long count_walk_liftings(const MultiVoltage1& mv, std::span<const int> walk, int start_fiber) {
    require(is_walk(mv.base, walk), "not a walk in the base graph");
    std::map<int, long long> ways{{start_fiber, 1}};
    for (int s : walk) {
        std::map<int, long long> next;
        for (auto [a, w] : ways)
            for (int i = 0; i < mv.groups.operation_count(); ++i)
                if (auto st = step(mv, s, a, i)) next[st->next] += w;
        ways = std::move(next);
    }
    long long total = 0;
    for (auto [a, w] : ways) total += w;
    return total;
}

std::vector<HomogeneousLifting> circuit_homogeneous_liftings(const MultiVoltage1& mv, std::span<const int> circuit) {
    const auto& mg = mv.groups;
    require(mg.all_constituents_equal(), "homogeneous liftings need equal constituents");
    require(!circuit.empty() && is_walk(mv.base, circuit), "not a walk in the base graph");
    require(mv.base.semi_arc_vertex(circuit.back() ^ 1) == mv.base.semi_arc_vertex(circuit.front()),
            "walk is not closed");
    const int m = static_cast<int>(circuit.size());
    std::vector<HomogeneousLifting> out;
    for (int i = 0; i < mg.operation_count(); ++i) {
        int prod = mg.identity(i);
        for (int s : circuit) {
            int b = mv.psi[semi_arc_edge(s)];
            if (semi_arc_end(s) == 1) b = mg.inverse(i, b);
            prod = *mg.op(i, prod, b);
        }
        int d = mg.element_order(i, prod);
        out.push_back({i, prod, d, mg.universe_size() / d, d * m});
    }
    return out;
}

std::vector<int> circuit_lift_orbits(const MultiVoltage1& mv, const LiftedGraph& lift, std::span<const int> circuit,
                                     int operation) {
    const int u = mv.groups.universe_size();
    const int v0 = mv.base.semi_arc_vertex(circuit.front());
    // lifted edges by (base edge, operation)
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (int e = 0; e < lift.graph.edge_count(); ++e)
        by_edge[{lift.edge_origin[e].base_edge, lift.edge_origin[e].operation}].push_back(e);
    Perm after(static_cast<std::size_t>(u), -1);
    for (int a = 0; a < u; ++a) {
        int x = lift.vertex(v0, a);
        for (int s : circuit) {
            bool forward = semi_arc_end(s) == 0;
            int nx = -1;
            for (int e : by_edge[{semi_arc_edge(s), operation}]) {
                const Edge& ed = lift.graph.edge(e);
                if (forward && ed.tail == x) nx = ed.head;
                if (!forward && ed.head == x) nx = ed.tail;
                if (nx >= 0) break;
            }
            require(nx >= 0, "lifted circuit breaks off");
            x = nx;
        }
        after[a] = lift.vertex_label[x].second;
    }
    require(is_permutation(after), "circuit lifting is not a permutation of the fiber");
    std::vector<int> lens;
    for (const auto& c : cycles(after)) lens.push_back(static_cast<int>(c.size()));
    std::sort(lens.begin(), lens.end());
    return lens;
}

Perm left_subaction(const MultiVoltage1& mv, const LiftedGraph& lift, int operation, int element) {
    const auto& mg = mv.groups;
    require(operation >= 0 && operation < mg.operation_count(), "operation out of range");
    require(element >= 0 && element < mg.universe_size() && mg.contains(operation, element),
            "element outside the operation's group");
    Perm p = identity_perm(lift.graph.vertex_count());
    for (int x = 0; x < lift.graph.vertex_count(); ++x) {
        auto [v, a] = lift.vertex_label[x];
        if (auto b = mg.op(operation, element, a)) p[x] = lift.vertex(v, *b);
    }
    return p;
}

namespace {

void check_closed_group(const std::vector<Perm>& action, int n) {
    require(!action.empty(), "empty action");
    std::set<Perm> all(action.begin(), action.end());
    require(all.size() == action.size(), "repeated permutation in action");
    for (const auto& p : action) require(static_cast<int>(p.size()) == n && is_permutation(p), "malformed permutation");
    require(all.count(identity_perm(n)) == 1, "action lacks the identity");
    for (const auto& a : action)
        for (const auto& b : action) require(all.count(compose(a, b)) == 1, "action not closed under composition");
}

}  // namespace

QuotientGraph quotient_graph(const Multigraph& g, const std::vector<Perm>& action) {
    check_closed_group(action, g.vertex_count());
    for (const auto& p : action) require(is_vertex_automorphism(g, p), "a listed permutation is not an automorphism");
    QuotientGraph q;
    q.vertex_orbit = orbit_labels(g.vertex_count(), action);
    // Parallel classes give each edge a slot to be mapped through. Oriented classes are used when
    // every permutation carries them onto classes of equal size, which keeps the edge action of a
    // lift (a doubled edge from an involutory voltage is one orbit, not two).
    auto key = [](bool oriented, int u, int v) {
        return oriented || u <= v ? std::make_pair(u, v) : std::make_pair(v, u);
    };
    auto slots = [&](bool oriented) {
        std::map<std::pair<int, int>, std::vector<int>> parallel;
        std::vector<int> slot(static_cast<std::size_t>(g.edge_count()));
        for (int e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            auto& list = parallel[key(oriented, ed.tail, ed.head)];
            slot[e] = static_cast<int>(list.size());
            list.push_back(e);
        }
        return std::make_pair(std::move(parallel), std::move(slot));
    };
    bool oriented = true;
    {
        auto [parallel, slot] = slots(true);
        for (const auto& p : action)
            for (const auto& [k, list] : parallel) {
                auto it = parallel.find({p[k.first], p[k.second]});
                if (it == parallel.end() || it->second.size() != list.size()) oriented = false;
            }
    }
    auto [parallel, slot] = slots(oriented);
    DisjointSets ds(g.edge_count());
    for (const auto& p : action)
        for (int e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            ds.unite(e, parallel.at(key(oriented, p[ed.tail], p[ed.head]))[slot[e]]);
        }
    int nv = 0;
    for (int o : q.vertex_orbit) nv = std::max(nv, o + 1);
    q.graph = Multigraph(nv);
    q.edge_orbit.assign(static_cast<std::size_t>(g.edge_count()), -1);
    std::map<int, int> orbit_id;
    for (int e = 0; e < g.edge_count(); ++e) {
        int r = ds.find(e);
        auto it = orbit_id.find(r);
        if (it == orbit_id.end()) {
            it = orbit_id.emplace(r, q.graph.edge_count()).first;
            q.graph.add_edge(q.vertex_orbit[g.edge(e).tail], q.vertex_orbit[g.edge(e).head]);
        }
        q.edge_orbit[e] = it->second;
    }
    return q;
}

FiniteGroup action_group(const LabelledAction& act) {
    require(act.labels.size() == act.perms.size(), "one label per permutation");
    const int n = static_cast<int>(act.perms.size());
    std::map<Perm, int> id;
    for (int k = 0; k < n; ++k) id[act.perms[k]] = k;
    require(static_cast<int>(id.size()) == n, "repeated permutation in action");
    Table t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto it = id.find(compose(act.perms[a], act.perms[b]));
            require(it != id.end(), "action not closed under composition");
            t[a][b] = it->second;
        }
    return {act.labels, std::move(t)};
}

LabelledAction unlabelled_action(const std::vector<Perm>& perms) {
    LabelledAction a;
    a.perms = perms;
    for (std::size_t k = 0; k < perms.size(); ++k) a.labels.push_back("g" + std::to_string(k));
    return a;
}

namespace {

void check_fixed_free(const LabelledAction& act, const std::vector<int>& domain) {
    for (const auto& p : act.perms) {
        if (p == identity_perm(static_cast<int>(p.size()))) continue;
        for (int x : domain)
            if (p[x] == x) throw InvalidInput("action not fixed-free: vertex " + std::to_string(x));
    }
}

struct Labelling {
    std::vector<int> orbit;  // per original vertex
    std::vector<int> rep;    // per orbit
    std::vector<int> label;  // universe element per original vertex
};

// Orbits of `act` restricted to `domain`, each representative labelled as the identity.
void label_orbits(const LabelledAction& act, const MultiGroup& mg, const std::vector<int>& domain, Labelling& lab,
                  int& next_orbit) {
    for (int x : domain) {
        if (lab.orbit[x] >= 0) continue;
        const int o = next_orbit++;
        lab.rep.push_back(x);
        for (std::size_t k = 0; k < act.perms.size(); ++k) {
            int y = act.perms[k][x];
            int elem = *mg.index_of(act.labels[k]);
            if (lab.orbit[y] >= 0 && lab.orbit[y] != o) throw InvalidInput("action mixes orbits");
            if (lab.orbit[y] == o && lab.label[y] != elem) throw InvalidInput("action not fixed-free on an orbit");
            lab.orbit[y] = o;
            lab.label[y] = elem;
        }
    }
}

}  // namespace

VoltageReconstruction1 reconstruct_voltage_from_action(const Multigraph& g,
                                                       const std::vector<std::vector<int>>& edge_classes,
                                                       const std::vector<LabelledAction>& actions) {
    const int n = g.vertex_count();
    require(!actions.empty() && actions.size() == edge_classes.size(), "one edge class per action");
    std::vector<FiniteGroup> groups;
    for (const auto& a : actions) groups.push_back(action_group(a));
    MultiGroup mg = MultiGroup::from_groups(groups);
    require(mg.all_constituents_equal(), "type-1 reconstruction needs equal constituents");
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (const auto& a : actions) check_fixed_free(a, all);

    Labelling lab{std::vector<int>(static_cast<std::size_t>(n), -1), {}, std::vector<int>(static_cast<std::size_t>(n), -1)};
    int orbits = 0;
    label_orbits(actions[0], mg, all, lab, orbits);
    // other operations must label every fiber the same way
    for (std::size_t i = 1; i < actions.size(); ++i)
        for (std::size_t k = 0; k < actions[i].perms.size(); ++k) {
            int elem = *mg.index_of(actions[i].labels[k]);
            for (int o = 0; o < orbits; ++o) {
                int y = actions[i].perms[k][lab.rep[o]];
                if (lab.orbit[y] != o || lab.label[y] != elem)
                    throw InvalidInput("fiber labellings of the operations disagree");
            }
        }

    const int u = mg.universe_size();
    std::map<std::tuple<int, int, int>, int> count;
    for (int e : edge_classes[0]) {
        const Edge& ed = g.edge(e);
        int gx = lab.label[ed.tail], gy = lab.label[ed.head];
        int t = *mg.op(0, mg.inverse(0, gx), gy);
        auto fwd = std::make_tuple(lab.orbit[ed.tail], lab.orbit[ed.head], t);
        auto rev = std::make_tuple(lab.orbit[ed.head], lab.orbit[ed.tail], mg.inverse(0, t));
        ++count[std::min(fwd, rev)];
    }
    // Class 0 fixes each voltage only up to reversal. Under the other operations an edge and its
    // reversal lift differently, so each copy takes the orientation whose lifts are still unused.
    std::vector<std::vector<int>> at(static_cast<std::size_t>(orbits), std::vector<int>(static_cast<std::size_t>(u), -1));
    for (int x = 0; x < n; ++x) at[lab.orbit[x]][lab.label[x]] = x;
    std::vector<std::map<std::pair<int, int>, int>> unused(actions.size());
    for (std::size_t i = 1; i < actions.size(); ++i)
        for (int e : edge_classes[i]) {
            const Edge& ed = g.edge(e);
            ++unused[i][std::minmax(ed.tail, ed.head)];
        }
    auto take = [&](int o1, int o2, int t) {
        std::vector<std::pair<std::size_t, std::pair<int, int>>> taken;
        bool ok = true;
        for (std::size_t i = 1; i < actions.size() && ok; ++i)
            for (int a = 0; a < u && ok; ++a) {
                auto key = std::minmax(at[o1][a], at[o2][*mg.op(static_cast<int>(i), a, t)]);
                auto it = unused[i].find(key);
                if (it == unused[i].end() || it->second == 0) {
                    ok = false;
                    break;
                }
                --it->second;
                taken.emplace_back(i, key);
            }
        if (!ok)
            for (const auto& [i, key] : taken) ++unused[i][key];
        return ok;
    };
    MultiVoltage1 mv{Multigraph(orbits), mg, {}};
    for (const auto& [key, c] : count) {
        require(c % u == 0, "edge class is not a union of full lifted fibres");
        auto [o1, o2, t] = key;
        for (int k = 0; k < c / u; ++k) {
            if (!take(o1, o2, t)) {
                require(take(o2, o1, mg.inverse(0, t)), "edge classes of the operations do not fit one voltage");
                std::tie(o1, o2, t) = std::make_tuple(o2, o1, mg.inverse(0, t));
            }
            mv.base.add_edge(o1, o2);
            mv.psi.push_back(t);
            std::tie(o1, o2, t) = key;
        }
    }
    LiftedGraph lift = lift_type1(mv);
    Perm iso(static_cast<std::size_t>(lift.graph.vertex_count()), -1);
    for (int x = 0; x < n; ++x) iso[lift.vertex(lab.orbit[x], lab.label[x])] = x;
    require(is_permutation(iso), "fibre labelling does not cover the lift");
    return {std::move(mv), std::move(lift), std::move(iso)};
}

VoltageReconstruction2 reconstruct_type2_from_action(const Multigraph& g, const std::vector<int>& vertex_class,
                                                     const std::vector<LabelledAction>& actions) {
    const int n = g.vertex_count();
    require(static_cast<int>(vertex_class.size()) == n, "one class per vertex");
    std::vector<FiniteGroup> groups;
    for (const auto& a : actions) groups.push_back(action_group(a));
    MultiGroup mg = MultiGroup::from_groups(groups);
    Labelling lab{std::vector<int>(static_cast<std::size_t>(n), -1), {}, std::vector<int>(static_cast<std::size_t>(n), -1)};
    std::vector<int> orbit_class;
    int orbits = 0;
    for (int c = 0; c < static_cast<int>(actions.size()); ++c) {
        std::vector<int> dom;
        for (int x = 0; x < n; ++x)
            if (vertex_class[x] == c) dom.push_back(x);
        check_fixed_free(actions[c], dom);
        int before = orbits;
        label_orbits(actions[c], mg, dom, lab, orbits);
        orbit_class.resize(static_cast<std::size_t>(orbits), c);
        for (int o = before; o < orbits; ++o) orbit_class[o] = c;
    }
    for (int x = 0; x < n; ++x) require(lab.orbit[x] >= 0, "vertex without a class");

    std::map<std::tuple<int, int, int>, int> count;
    for (const auto& ed : g.edges()) {
        int j = vertex_class[ed.head];
        int gx = lab.label[ed.tail], gy = lab.label[ed.head];
        require(mg.contains(j, gx), "tail label outside the head group");
        int t = *mg.op(j, mg.inverse(j, gx), gy);
        ++count[{lab.orbit[ed.tail], lab.orbit[ed.head], t}];
    }
    MultiVoltage2 mv{Multigraph(orbits), mg, orbit_class, {}};
    for (const auto& [key, c] : count) {
        int i = orbit_class[std::get<0>(key)], j = orbit_class[std::get<1>(key)];
        int shared = static_cast<int>(mg.overlap(i, j).size());
        require(shared > 0 && c % shared == 0, "edges do not form full lifted fibres");
        for (int k = 0; k < c / shared; ++k) {
            mv.base.add_edge(std::get<0>(key), std::get<1>(key));
            mv.tau.push_back(std::get<2>(key));
        }
    }
    LiftedGraph lift = lift_type2(mv);
    Perm iso(static_cast<std::size_t>(lift.graph.vertex_count()), -1);
    require(lift.graph.vertex_count() == n, "lifted vertex count differs");
    for (int x = 0; x < n; ++x) iso[lift.vertex(lab.orbit[x], lab.label[x])] = x;
    require(is_permutation(iso), "fibre labelling does not cover the lift");
    return {std::move(mv), std::move(lift), std::move(iso)};
}

bool lift_matches(const LiftedGraph& lift, const Perm& iso, const Multigraph& target) {
    if (static_cast<int>(iso.size()) != target.vertex_count() || !is_permutation(iso)) return false;
    return same_edge_multiset(relabel(lift.graph, iso), target);
}

Multigraph underlying_simple(const Multigraph& g) {
    std::set<std::pair<int, int>> seen;
    Multigraph out(g.vertex_count());
    for (const auto& e : g.edges())
        if (seen.insert(std::minmax(e.tail, e.head)).second) out.add_edge(e.tail, e.head);
    return out;
}

BouquetCayley cayley_as_bouquet_lift(const MultiGroup& mg, const std::vector<std::vector<int>>& s) {
    MultiCayley cay = cayley_graph_multigroup(mg, s);  // validates S_i
    std::set<int> all;
    for (const auto& si : s) all.insert(si.begin(), si.end());
    for (int i = 0; i < mg.operation_count(); ++i) {
        std::set<int> expect;
        for (int x : all)
            if (mg.contains(i, x)) expect.insert(x);
        require(expect == std::set<int>(s[i].begin(), s[i].end()),
                "each S_i must be the part of the union lying in Γ_i");
    }
    MultiVoltage1 mv{bouquet(static_cast<int>(all.size())), mg, std::vector<int>(all.begin(), all.end())};
    LiftedGraph lift = lift_type1(mv);
    Perm iso(static_cast<std::size_t>(lift.graph.vertex_count()));
    for (int x = 0; x < lift.graph.vertex_count(); ++x) iso[x] = lift.vertex_label[x].second;
    bool same = same_edge_multiset(relabel(underlying_simple(lift.graph), iso), cay.graph);
    return {std::move(mv), std::move(lift), std::move(iso), same};
}

}  // namespace msg
