#include "msg/map.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>

#include "msg/error.hpp"

namespace msg {

Perm alpha_perm(int edge_count) {
    Perm p(static_cast<std::size_t>(4 * edge_count));
    for (int x = 0; x < 4 * edge_count; ++x) p[x] = alpha_of(x);
    return p;
}

Perm beta_perm(int edge_count) {
    Perm p(static_cast<std::size_t>(4 * edge_count));
    for (int x = 0; x < 4 * edge_count; ++x) p[x] = beta_of(x);
    return p;
}

CombinatorialMap::CombinatorialMap(int edge_count, Perm p) : edge_count_(edge_count), p_(std::move(p)) {
    require(edge_count >= 0, "negative edge count");
    require(p_.size() == static_cast<std::size_t>(4 * edge_count) && is_permutation(p_),
            "P must permute the 4*edge_count quadricells");
}

CombinatorialMap CombinatorialMap::from_cycles(int edge_count, const std::vector<Cycle>& cs) {
    require(edge_count >= 0, "negative edge count");
    return CombinatorialMap(edge_count, msg::from_cycles(4 * edge_count, cs));
}

namespace {

std::vector<int> cycle_ids(const Perm& p, int* count = nullptr) {
    std::vector<int> id(p.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (id[s] >= 0) continue;
        for (int x = static_cast<int>(s); id[x] < 0; x = p[x]) id[x] = next;
        ++next;
    }
    if (count) *count = next;
    return id;
}

int count_cycles(const Perm& p) {
    int n = 0;
    cycle_ids(p, &n);
    return n;
}

// Orbits of `perm` grouped with their images under the involution `conj`.
struct PairedOrbits {
    std::vector<int> id;      // pair index per cell
    std::vector<Cycle> reps;  // representative orbit per pair
};

PairedOrbits pair_orbits(const Perm& perm, int (*conj)(int)) {
    int orbit_total = 0;
    const auto orb = cycle_ids(perm, &orbit_total);
    DisjointSets ds(orbit_total);
    for (std::size_t x = 0; x < perm.size(); ++x) ds.unite(orb[x], orb[conj(static_cast<int>(x))]);
    std::vector<int> least(static_cast<std::size_t>(orbit_total), INT_MAX);
    std::vector<int> members(static_cast<std::size_t>(orbit_total), 0);
    std::vector<char> counted(static_cast<std::size_t>(orbit_total), 0);
    for (std::size_t x = 0; x < perm.size(); ++x) {
        int r = ds.find(orb[x]);
        least[r] = std::min(least[r], static_cast<int>(x));
        if (!counted[orb[x]]) {
            counted[orb[x]] = 1;
            ++members[r];
        }
    }
    PairedOrbits out;
    std::vector<int> roots;
    for (int o = 0; o < orbit_total; ++o) {
        if (ds.find(o) != o) continue;
        if (members[o] != 2) throw Error("conjugate orbit pairing broke: a class has " + std::to_string(members[o]) + " orbits");
        roots.push_back(o);
    }
    std::sort(roots.begin(), roots.end(), [&](int a, int b) { return least[a] < least[b]; });
    std::vector<int> index(static_cast<std::size_t>(orbit_total), -1);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        index[roots[i]] = static_cast<int>(i);
        Cycle c;
        for (int x = least[roots[i]];;) {
            c.push_back(x);
            x = perm[x];
            if (x == least[roots[i]]) break;
        }
        out.reps.push_back(std::move(c));
    }
    out.id.resize(perm.size());
    for (std::size_t x = 0; x < perm.size(); ++x) out.id[x] = index[ds.find(orb[x])];
    return out;
}

void require_valid(const CombinatorialMap& m) {
    const auto check = validate_map(m);
    if (!check.ok)
        throw InvalidInput("map violates axiom (" + check.axiom + ") at quadricell " + std::to_string(check.witness));
}

}  // namespace

MapCheck validate_map(const CombinatorialMap& m) {
    const int n = m.cell_count();
    if (n == 0) return {false, "iii", -1};
    const Perm& p = m.P();
    const Perm pinv = inverse(p);
    for (int x = 0; x < n; ++x)
        if (alpha_of(p[x]) != pinv[alpha_of(x)]) return {false, "ii", x};
    const auto orb = cycle_ids(p);
    for (int x = 0; x < n; ++x)
        if (orb[x] == orb[alpha_of(x)]) return {false, "i", x};
    const std::vector<Perm> gens{alpha_perm(m.edge_count()), beta_perm(m.edge_count()), p};
    const auto lab = orbit_labels(n, gens);
    for (int x = 0; x < n; ++x)
        if (lab[x] != lab[0]) return {false, "iii", x};
    return {};
}

Perm face_perm(const CombinatorialMap& m) {
    Perm f(m.P().size());
    for (int x = 0; x < m.cell_count(); ++x) f[x] = m.P()[alpha_of(beta_of(x))];
    return f;
}

MapOrbits orbits(const CombinatorialMap& m) {
    require_valid(m);
    MapOrbits out;
    out.vertices = pair_orbits(m.P(), alpha_of).reps;
    out.edges = m.edge_count();
    out.faces = pair_orbits(face_perm(m), beta_of).reps;
    return out;
}

std::vector<int> cell_vertices(const CombinatorialMap& m) {
    require_valid(m);
    return pair_orbits(m.P(), alpha_of).id;
}

int euler_characteristic(const CombinatorialMap& m) {
    const auto o = orbits(m);
    return static_cast<int>(o.vertices.size()) - o.edges + static_cast<int>(o.faces.size());
}

bool is_orientable(const CombinatorialMap& m) {
    require_valid(m);
    Perm ab(m.P().size());
    for (int x = 0; x < m.cell_count(); ++x) ab[x] = alpha_of(beta_of(x));
    const std::vector<Perm> gens{ab, m.P()};
    return orbit_count(m.cell_count(), gens) == 2;
}

Genus genus(const CombinatorialMap& m) {
    const int chi = euler_characteristic(m);
    if (is_orientable(m)) {
        if (chi % 2 != 0) throw Error("orientable map with odd Euler characteristic");
        return {true, (2 - chi) / 2};
    }
    return {false, 2 - chi};
}

CombinatorialMap edge_twist(const CombinatorialMap& m, int edge) {
    require(edge >= 0 && edge < m.edge_count(), "edge_twist: no such edge");
    auto swap_cells = [edge](int x) {
        if (x == quadricell(edge, q_beta)) return quadricell(edge, q_alphabeta);
        if (x == quadricell(edge, q_alphabeta)) return quadricell(edge, q_beta);
        return x;
    };
    Perm p(m.P().size());
    for (int x = 0; x < m.cell_count(); ++x) p[swap_cells(x)] = swap_cells(m.P()[x]);
    return CombinatorialMap(m.edge_count(), std::move(p));
}

CombinatorialMap dual_map(const CombinatorialMap& m) {
    // Renaming that exchanges the α and β slots of every edge.
    auto rename = [](int x) {
        const int k = quad_kind(x);
        const int swapped = (k == q_alpha) ? q_beta : (k == q_beta) ? q_alpha : k;
        return quadricell(quad_edge(x), swapped);
    };
    const Perm f = face_perm(m);
    Perm p(f.size());
    for (int x = 0; x < m.cell_count(); ++x) p[rename(x)] = rename(f[x]);
    return CombinatorialMap(m.edge_count(), std::move(p));
}

// ---------------------------------------------------------------------------
// Rotation systems

void validate(const RotationSystem& rs) {
    const auto& g = rs.base;
    require(g.edge_count() >= 1, "rotation system needs at least one edge");
    require(g.is_connected(), "rotation system needs a connected graph");
    require(static_cast<int>(rs.rotation.size()) == g.vertex_count(), "one rotation cycle per vertex");
    require(static_cast<int>(rs.lambda.size()) == g.edge_count(), "one twist bit per edge");
    for (int b : rs.lambda) require(b == 0 || b == 1, "twist bits are 0 or 1");
    const auto inc = g.incident_semi_arcs();
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto sorted = rs.rotation[v];
        std::sort(sorted.begin(), sorted.end());
        require(sorted == inc[v], "rotation at vertex " + std::to_string(v) + " must cover its semi-arcs exactly");
    }
}

namespace {

bool is_tail_somewhere(const Multigraph& g, int v) {
    for (const auto& e : g.edges())
        if (e.tail == v) return true;
    return false;
}

int rotation_cell(const RotationSystem& rs, int s) {
    const int e = semi_arc_edge(s);
    if (semi_arc_end(s) == 0) return quadricell(e, q_one);
    return quadricell(e, rs.lambda[e] ? q_beta : q_alphabeta);
}

}  // namespace

RotationSystem normalized(RotationSystem rs) {
    validate(rs);
    const auto& g = rs.base;
    const auto inc = g.incident_semi_arcs();
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (is_tail_somewhere(g, v)) continue;
        const int least_edge = semi_arc_edge(inc[v].front());
        if (rs.lambda[least_edge] == 0) continue;
        std::reverse(rs.rotation[v].begin(), rs.rotation[v].end());
        for (int s : inc[v]) rs.lambda[semi_arc_edge(s)] ^= 1;
    }
    for (auto& c : rs.rotation) c = canonical_cycle(std::move(c));
    return rs;
}

CombinatorialMap map_from_rotation(const RotationSystem& rs) {
    validate(rs);
    std::vector<Cycle> cs;
    for (const auto& rot : rs.rotation) {
        Cycle pos, conj;
        for (int s : rot) pos.push_back(rotation_cell(rs, s));
        for (auto it = pos.rbegin(); it != pos.rend(); ++it) conj.push_back(alpha_of(*it));
        cs.push_back(std::move(pos));
        cs.push_back(std::move(conj));
    }
    return CombinatorialMap::from_cycles(rs.base.edge_count(), cs);
}

namespace {

// `pair_vertex[p]` is the base vertex of conjugate pair p.
RotationSystem read_rotation(const CombinatorialMap& m, const Multigraph& base, const std::vector<int>& cell_pair,
                             const std::vector<int>& pair_vertex) {
    const int ne = m.edge_count();
    const auto orb = cycle_ids(m.P());
    auto vertex_of = [&](int cell) { return pair_vertex[cell_pair[cell]]; };

    std::vector<int> positive(static_cast<std::size_t>(base.vertex_count()), -1);
    for (int e = 0; e < ne; ++e) {
        const int v = base.edge(e).tail;
        if (positive[v] < 0) positive[v] = orb[quadricell(e, q_one)];
    }
    // Relabelling e by α keeps the map and moves (e,1) into the positive orbit at its tail.
    std::vector<int> flip(static_cast<std::size_t>(ne), 0);
    for (int e = 0; e < ne; ++e) flip[e] = orb[quadricell(e, q_one)] == positive[base.edge(e).tail] ? 0 : 1;
    for (int e = 0; e < ne; ++e) {
        const int v = base.edge(e).head;
        if (positive[v] < 0) positive[v] = orb[quadricell(e, q_alphabeta ^ flip[e])];
    }

    RotationSystem rs;
    rs.base = base;
    rs.lambda.assign(static_cast<std::size_t>(ne), 0);
    rs.rotation.assign(static_cast<std::size_t>(base.vertex_count()), {});
    for (int e = 0; e < ne; ++e) {
        const int head = base.edge(e).head;
        const int untwisted = quadricell(e, q_alphabeta ^ flip[e]);
        rs.lambda[e] = orb[untwisted] == positive[head] ? 0 : 1;
    }
    for (int v = 0; v < base.vertex_count(); ++v) {
        require(positive[v] >= 0, "vertex without semi-arcs");
        int start = -1;
        for (int x = 0; x < m.cell_count() && start < 0; ++x)
            if (orb[x] == positive[v]) start = x;
        Cycle rot;
        for (int x = start;;) {
            const int e = quad_edge(x);
            const int k = quad_kind(x) ^ flip[e];
            if (k == q_alpha) throw Error("positive orbit holds an α cell after relabelling");
            if (vertex_of(x) != v) throw Error("orbit crosses vertices");
            rot.push_back(semi_arc(e, k == q_one ? 0 : 1));
            x = m.P()[x];
            if (x == start) break;
        }
        rs.rotation[v] = canonical_cycle(std::move(rot));
    }
    validate(rs);
    return rs;
}

}  // namespace

RotationSystem rotation_from_map(const CombinatorialMap& m) {
    require_valid(m);
    const auto paired = pair_orbits(m.P(), alpha_of);
    const int nv = static_cast<int>(paired.reps.size());
    std::vector<Edge> edges;
    for (int e = 0; e < m.edge_count(); ++e)
        edges.push_back({paired.id[quadricell(e, q_one)], paired.id[quadricell(e, q_beta)]});
    std::vector<int> pair_vertex(static_cast<std::size_t>(nv));
    std::iota(pair_vertex.begin(), pair_vertex.end(), 0);
    return read_rotation(m, Multigraph(nv, std::move(edges)), paired.id, pair_vertex);
}

RotationSystem rotation_from_map(const CombinatorialMap& m, const Multigraph& base) {
    require_valid(m);
    require(base.edge_count() == m.edge_count(), "base graph edge count differs from the map");
    const auto paired = pair_orbits(m.P(), alpha_of);
    const int np = static_cast<int>(paired.reps.size());
    require(np == base.vertex_count(), "base graph vertex count differs from the map");
    std::vector<int> pair_vertex(static_cast<std::size_t>(np), -1);
    auto bind = [&](int cell, int v) {
        int& slot = pair_vertex[paired.id[cell]];
        require(slot < 0 || slot == v, "map vertices do not match the base graph incidences");
        slot = v;
    };
    for (int e = 0; e < m.edge_count(); ++e) {
        bind(quadricell(e, q_one), base.edge(e).tail);
        bind(quadricell(e, q_beta), base.edge(e).head);
    }
    std::vector<char> hit(static_cast<std::size_t>(np), 0);
    for (int v : pair_vertex) {
        require(v >= 0 && !hit[v], "map vertices do not match the base graph incidences");
        hit[v] = 1;
    }
    return read_rotation(m, base, paired.id, pair_vertex);
}

RotationSystem rotation_from_faces(int vertex_count, const std::vector<std::vector<int>>& faces) {
    std::map<std::pair<int, int>, int> edge_of;
    std::vector<Edge> edges;
    std::map<std::pair<int, int>, std::pair<int, int>> next_dart;
    for (const auto& f : faces) {
        require(f.size() >= 2, "face too short");
        for (std::size_t i = 0; i < f.size(); ++i) {
            const int u = f[i], v = f[(i + 1) % f.size()], w = f[(i + 2) % f.size()];
            require(u >= 0 && u < vertex_count && v >= 0 && v < vertex_count, "face vertex out of range");
            require(next_dart.emplace(std::pair{u, v}, std::pair{v, w}).second, "directed edge used twice");
            const auto key = std::minmax(u, v);
            if (!edge_of.contains({key.first, key.second})) {
                edge_of[{key.first, key.second}] = static_cast<int>(edges.size());
                edges.push_back({key.first, key.second});
            }
        }
    }
    auto dart_semi_arc = [&](int u, int v) {
        const auto key = std::minmax(u, v);
        const int e = edge_of.at({key.first, key.second});
        return semi_arc(e, edges[e].tail == u ? 0 : 1);
    };
    RotationSystem rs;
    rs.base = Multigraph(vertex_count, edges);
    rs.lambda.assign(edges.size(), 0);
    rs.rotation.assign(static_cast<std::size_t>(vertex_count), {});
    // Around v, the dart v→u is followed by the dart leaving v on the face through u→v.
    std::map<int, int> succ;
    for (const auto& [dart, nxt] : next_dart) succ[dart_semi_arc(dart.second, dart.first)] = dart_semi_arc(nxt.first, nxt.second);
    const auto inc = rs.base.incident_semi_arcs();
    for (int v = 0; v < vertex_count; ++v) {
        require(!inc[v].empty(), "isolated vertex in face list");
        Cycle rot;
        for (int s = inc[v].front();;) {
            rot.push_back(s);
            s = succ.at(s);
            if (s == inc[v].front()) break;
        }
        rs.rotation[v] = canonical_cycle(std::move(rot));
    }
    validate(rs);
    return rs;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

long long factorial_capped(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) {
        if (f > LLONG_MAX / i) return LLONG_MAX;
        f *= i;
    }
    return f;
}

long long mul_capped(long long a, long long b) {
    if (a != 0 && b > LLONG_MAX / a) return LLONG_MAX;
    return a * b;
}

std::vector<char> bfs_tree_edges(const Multigraph& g) {
    std::vector<char> in_tree(static_cast<std::size_t>(g.edge_count()), 0);
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    const auto inc = g.incident_semi_arcs();
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        for (int s : inc[queue[h]]) {
            const int e = semi_arc_edge(s);
            const int other = g.semi_arc_vertex(s ^ 1);
            if (seen[other]) continue;
            seen[other] = 1;
            in_tree[e] = 1;
            queue.push_back(other);
        }
    }
    return in_tree;
}

}  // namespace

long long embedding_count(const Multigraph& g) {
    long long total = 1;
    for (int r : g.valencies()) total = mul_capped(total, factorial_capped(std::max(r - 1, 0)));
    for (int i = 0; i < g.betti(); ++i) total = mul_capped(total, 2);
    return total;
}

void for_each_embedding(const Multigraph& g, long long budget, const std::function<void(const Perm&)>& visit) {
    require(g.edge_count() >= 1 && g.is_connected(), "embeddings need a connected graph with an edge");
    const long long total = embedding_count(g);
    if (total > budget)
        throw BudgetExceeded(std::to_string(total) + " rotation systems exceed the budget of " + std::to_string(budget));
    const auto in_tree = bfs_tree_edges(g);
    std::vector<int> cotree;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!in_tree[e]) cotree.push_back(e);
    const auto inc = g.incident_semi_arcs();
    const int nv = g.vertex_count();
    std::vector<std::vector<int>> rest(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) rest[v].assign(inc[v].begin() + 1, inc[v].end());

    std::vector<int> lambda(static_cast<std::size_t>(g.edge_count()), 0);
    Perm p(static_cast<std::size_t>(4 * g.edge_count()));
    auto cell = [&](int s) {
        const int e = semi_arc_edge(s);
        if (semi_arc_end(s) == 0) return quadricell(e, q_one);
        return quadricell(e, lambda[e] ? q_beta : q_alphabeta);
    };
    auto emit = [&] {
        for (int v = 0; v < nv; ++v) {
            const std::size_t k = inc[v].size();
            auto at = [&](std::size_t i) { return i == 0 ? inc[v].front() : rest[v][i - 1]; };
            for (std::size_t i = 0; i < k; ++i) {
                const int a = cell(at(i)), b = cell(at((i + 1) % k));
                p[a] = b;
                p[alpha_of(b)] = alpha_of(a);
            }
        }
        visit(p);
    };
    const long long masks = 1LL << cotree.size();
    for (long long mask = 0; mask < masks; ++mask) {
        for (std::size_t j = 0; j < cotree.size(); ++j) lambda[cotree[j]] = static_cast<int>((mask >> j) & 1);
        for (auto& r : rest) std::sort(r.begin(), r.end());
        while (true) {
            emit();
            int v = 0;
            while (v < nv && !std::next_permutation(rest[v].begin(), rest[v].end())) ++v;
            if (v == nv) break;
        }
    }
}

EmbeddingCensus enumerate_embeddings(const Multigraph& g, long long budget) {
    EmbeddingCensus census;
    const int nv = g.vertex_count(), ne = g.edge_count();
    Perm face(static_cast<std::size_t>(4 * ne));
    for_each_embedding(g, budget, [&](const Perm& p) {
        for (int x = 0; x < 4 * ne; ++x) face[x] = p[alpha_of(beta_of(x))];
        const int chi = nv - ne + count_cycles(face) / 2;
        // ⟨αβ, P⟩ has two orbits exactly when the surface is orientable.
        DisjointSets ds(4 * ne);
        int comps = 4 * ne;
        for (int x = 0; x < 4 * ne; ++x) {
            comps -= ds.unite(x, p[x]);
            comps -= ds.unite(x, alpha_of(beta_of(x)));
        }
        if (comps == 2) {
            ++census.orientable[(2 - chi) / 2];
            ++census.orientable_total;
        } else {
            ++census.nonorientable[2 - chi];
            ++census.nonorientable_total;
        }
    });
    return census;
}

namespace {

// Pure rotation systems of a connected simple graph, stopping at the first sphere.
bool has_sphere_rotation(const Multigraph& g, long long budget) {
    const int nv = g.vertex_count(), ne = g.edge_count();
    long long total = 1;
    for (int r : g.valencies()) total = mul_capped(total, factorial_capped(std::max(r - 1, 0)));
    if (total > budget)
        throw BudgetExceeded(std::to_string(total) + " rotation systems exceed the budget of " + std::to_string(budget));
    const auto inc = g.incident_semi_arcs();
    std::vector<std::vector<int>> rest(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) rest[v].assign(inc[v].begin() + 1, inc[v].end());
    Perm p(static_cast<std::size_t>(4 * ne)), face(p.size());
    auto cell = [](int s) { return semi_arc_end(s) == 0 ? quadricell(semi_arc_edge(s), q_one)
                                                        : quadricell(semi_arc_edge(s), q_alphabeta); };
    while (true) {
        for (int v = 0; v < nv; ++v) {
            const std::size_t k = inc[v].size();
            auto at = [&](std::size_t i) { return i == 0 ? inc[v].front() : rest[v][i - 1]; };
            for (std::size_t i = 0; i < k; ++i) {
                const int a = cell(at(i)), b = cell(at((i + 1) % k));
                p[a] = b;
                p[alpha_of(b)] = alpha_of(a);
            }
        }
        for (int x = 0; x < 4 * ne; ++x) face[x] = p[alpha_of(beta_of(x))];
        if (nv - ne + count_cycles(face) / 2 == 2) return true;
        int v = 0;
        while (v < nv && !std::next_permutation(rest[v].begin(), rest[v].end())) ++v;
        if (v == nv) return false;
    }
}

}  // namespace

namespace {

bool has_triangle(const Multigraph& simple) {
    const int nv = simple.vertex_count();
    std::vector<std::vector<char>> adj(nv, std::vector<char>(nv, 0));
    for (const auto& e : simple.edges()) adj[e.tail][e.head] = adj[e.head][e.tail] = 1;
    for (const auto& e : simple.edges())
        for (int w = 0; w < nv; ++w)
            if (adj[e.tail][w] && adj[e.head][w]) return true;
    return false;
}

}  // namespace

bool is_planar(const Multigraph& g, long long budget) {
    for (const auto& comp : components(g)) {
        // Loops and parallel edges never affect planarity.
        const Multigraph sub = induced_subgraph(g, comp);
        std::set<std::pair<int, int>> pairs;
        for (const auto& e : sub.edges())
            if (!e.is_loop()) pairs.insert(std::minmax(e.tail, e.head));
        Multigraph simple(sub.vertex_count());
        for (const auto& [u, v] : pairs) simple.add_edge(u, v);
        const int nv = simple.vertex_count(), ne = simple.edge_count();
        if (nv <= 4) continue;
        if (ne > 3 * nv - 6) return false;
        if (ne > 2 * nv - 4 && !has_triangle(simple)) return false;
        if (!has_sphere_rotation(simple, budget)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Genus formulas

namespace {
int ceil_div(int a, int b) { return (a + b - 1) / b; }
}  // namespace

int genus_complete(GenusKind kind, int n) {
    require(n >= 3, "complete graph formulas need n >= 3");
    switch (kind) {
        case GenusKind::orientable: return ceil_div((n - 3) * (n - 4), 12);
        case GenusKind::nonorientable: return n == 7 ? 3 : ceil_div((n - 3) * (n - 4), 6);
        case GenusKind::max_orientable: return (n - 1) * (n - 2) / 4;
        case GenusKind::max_nonorientable: return n * (n - 1) / 2 - n + 1;
    }
    throw InvalidInput("unknown genus kind");
}

int genus_complete_bipartite(GenusKind kind, int m, int n) {
    require(m >= 1 && n >= 1, "bipartite sides must be non-empty");
    switch (kind) {
        case GenusKind::orientable:
            require(m >= 3 && n >= 3, "bipartite genus formula needs m,n >= 3");
            return ceil_div((m - 2) * (n - 2), 4);
        case GenusKind::nonorientable:
            require(m >= 3 && n >= 3, "bipartite genus formula needs m,n >= 3");
            return ceil_div((m - 2) * (n - 2), 2);
        case GenusKind::max_orientable: return (m - 1) * (n - 1) / 2;
        case GenusKind::max_nonorientable: return m * n - m - n + 1;
    }
    throw InvalidInput("unknown genus kind");
}

int xuong_max_genus(const Multigraph& g, long long budget) {
    require(g.is_connected(), "maximum genus needs a connected graph");
    const int nv = g.vertex_count(), ne = g.edge_count();
    std::vector<int> candidates;
    for (int e = 0; e < ne; ++e)
        if (!g.edge(e).is_loop()) candidates.push_back(e);
    std::vector<char> chosen(static_cast<std::size_t>(ne), 0);
    int best = INT_MAX;
    long long trees = 0;

    auto cotree_odd = [&] {
        DisjointSets ds(nv);
        for (int e = 0; e < ne; ++e)
            if (!chosen[e]) ds.unite(g.edge(e).tail, g.edge(e).head);
        std::vector<int> count(static_cast<std::size_t>(nv), 0);
        for (int e = 0; e < ne; ++e)
            if (!chosen[e]) ++count[ds.find(g.edge(e).tail)];
        return static_cast<int>(std::count_if(count.begin(), count.end(), [](int c) { return c % 2 == 1; }));
    };
    std::function<void(std::size_t, int, DisjointSets)> go = [&](std::size_t idx, int taken, DisjointSets ds) {
        if (taken == nv - 1) {
            if (++trees > budget) throw BudgetExceeded("spanning-tree enumeration exceeded its budget");
            best = std::min(best, cotree_odd());
            return;
        }
        if (idx == candidates.size() || taken + static_cast<int>(candidates.size() - idx) < nv - 1) return;
        const int e = candidates[idx];
        DisjointSets with = ds;
        if (with.unite(g.edge(e).tail, g.edge(e).head)) {
            chosen[e] = 1;
            go(idx + 1, taken + 1, with);
            chosen[e] = 0;
        }
        go(idx + 1, taken, std::move(ds));
    };
    go(0, 0, DisjointSets(nv));
    return (g.betti() - best) / 2;
}

int nebesky_max_genus(const Multigraph& g, int max_edges) {
    require(g.is_connected(), "maximum genus needs a connected graph");
    const int nv = g.vertex_count(), ne = g.edge_count();
    if (ne > max_edges) throw BudgetExceeded("edge-subset enumeration limited to " + std::to_string(max_edges) + " edges");
    int best = INT_MIN;
    for (long long mask = 0; mask < (1LL << ne); ++mask) {
        DisjointSets ds(nv);
        for (int e = 0; e < ne; ++e)
            if (!((mask >> e) & 1)) ds.unite(g.edge(e).tail, g.edge(e).head);
        std::vector<int> verts(static_cast<std::size_t>(nv), 0), edges(static_cast<std::size_t>(nv), 0);
        for (int v = 0; v < nv; ++v) ++verts[ds.find(v)];
        for (int e = 0; e < ne; ++e)
            if (!((mask >> e) & 1)) ++edges[ds.find(g.edge(e).tail)];
        int comps = 0, same_parity = 0;
        for (int v = 0; v < nv; ++v) {
            if (verts[v] == 0) continue;
            ++comps;
            if ((edges[v] - verts[v]) % 2 == 0) ++same_parity;
        }
        best = std::max(best, comps + same_parity - __builtin_popcountll(static_cast<unsigned long long>(mask)));
    }
    const int twice = ne - nv + 2 - best;
    if (twice % 2 != 0) throw Error("odd value in the subset formula");
    return twice / 2;
}

long long rooted_map_count(const Multigraph& g, const SearchLimits& lim) {
    require(g.edge_count() >= 1 && g.is_connected(), "rooted maps need a connected graph with an edge");
    const long long aut = semi_arc_automorphism_order(g, lim);
    long long num = mul_capped(embedding_count(g), 2LL * g.edge_count());
    if (num == LLONG_MAX) throw BudgetExceeded("rooted map count overflows");
    if (num % aut != 0) throw Error("rooted map formula is not integral");
    return num / aut;
}

long long rooted_map_count_exhaustive(const Multigraph& g, long long budget) {
    std::set<std::vector<int>> codes;
    const int ne = g.edge_count();
    std::vector<Perm> gens{alpha_perm(ne), beta_perm(ne), Perm{}};
    for_each_embedding(g, budget, [&](const Perm& p) {
        gens[2] = p;
        for (int root = 0; root < 4 * ne; ++root) codes.insert(rooted_code(gens, root));
    });
    return static_cast<long long>(codes.size());
}

// ---------------------------------------------------------------------------
// Voltage maps

MapVoltage map_voltage_from_cells(CombinatorialMap base, MultiGroup groups, const std::vector<int>& psi) {
    require(static_cast<int>(psi.size()) == base.cell_count(), "one voltage per quadricell");
    MapVoltage mv{std::move(base), std::move(groups), {}};
    for (int e = 0; e < mv.base.edge_count(); ++e) {
        const int v = psi[quadricell(e, q_one)];
        require(v >= 0 && v < mv.groups.universe_size(), "voltage outside the multi-group");
        require(psi[quadricell(e, q_alpha)] == v, "voltage must satisfy psi(alpha x) = psi(x)");
        for (int i = 0; i < mv.groups.operation_count(); ++i) {
            require(mv.groups.contains(i, v), "voltage outside a constituent");
            const int inv = mv.groups.inverse(i, v);
            require(psi[quadricell(e, q_beta)] == inv && psi[quadricell(e, q_alphabeta)] == inv,
                    "voltage must satisfy psi(beta x) = psi(alpha beta x) = psi(x)^-1 under every operation");
        }
        mv.edge_voltage.push_back(v);
    }
    validate(mv);
    return mv;
}

void validate(const MapVoltage& mv) {
    require_valid(mv.base);
    require(mv.groups.operation_count() >= 1, "voltage map needs an operation");
    require(mv.groups.all_constituents_equal(), "map lifting needs constituents equal as sets");
    require(mv.groups.constituent(0).group.order() == mv.groups.universe_size(), "constituents must cover the universe");
    require(static_cast<int>(mv.edge_voltage.size()) == mv.base.edge_count(), "one voltage per edge");
    for (int v : mv.edge_voltage) require(v >= 0 && v < mv.groups.universe_size(), "voltage outside the multi-group");
}

int cell_voltage(const MapVoltage& mv, int operation, int cell) {
    const int v = mv.edge_voltage[quad_edge(cell)];
    return quad_kind(cell) < q_beta ? v : mv.groups.inverse(operation, v);
}

std::vector<int> face_voltages(const MapVoltage& mv, int operation) {
    validate(mv);
    std::vector<int> out;
    for (const auto& f : orbits(mv.base).faces) {
        int prod = mv.groups.identity(operation);
        for (int x : f) prod = *mv.groups.op(operation, prod, cell_voltage(mv, operation, x));
        out.push_back(prod);
    }
    return out;
}

bool face_voltages_generate(const MapVoltage& mv, int operation) {
    const auto volts = face_voltages(mv, operation);
    const auto face_id = pair_orbits(face_perm(mv.base), beta_of).id;
    const auto vertex_id = cell_vertices(mv.base);
    const int nv = 1 + *std::max_element(vertex_id.begin(), vertex_id.end());
    std::vector<std::set<int>> around(static_cast<std::size_t>(nv));
    for (int x = 0; x < mv.base.cell_count(); ++x) around[vertex_id[x]].insert(face_id[x]);
    const auto& grp = mv.groups.constituent(operation).group;
    for (const auto& faces : around) {
        std::vector<int> gens;
        for (int f : faces) gens.push_back(mv.groups.local(operation, volts[f]));
        if (static_cast<int>(grp.generated(gens).size()) != grp.order()) return false;
    }
    return true;
}

LiftedMap lift_map(const MapVoltage& mv) {
    validate(mv);
    const int U = mv.groups.universe_size();
    const int ne = mv.base.edge_count();
    const int cells = mv.base.cell_count();
    LiftedMap out;
    out.edges = ne * U;
    for (int i = 0; i < mv.groups.operation_count(); ++i) {
        // Lifted name of x_h.
        auto name = [&](int x, int h) {
            const int e = quad_edge(x), k = quad_kind(x);
            const int g = k < q_beta ? h : *mv.groups.op(i, h, mv.groups.inverse(i, mv.edge_voltage[e]));
            return 4 * (e * U + g) + k;
        };
        Perm p(static_cast<std::size_t>(cells * U));
        for (int x = 0; x < cells; ++x)
            for (int h = 0; h < U; ++h) p[name(x, h)] = name(mv.base.P()[x], h);
        CombinatorialMap sheet(ne * U, std::move(p));
        if (i == 0) out.vertices = count_cycles(sheet.P()) / 2;
        out.faces += count_cycles(face_perm(sheet)) / 2;
        out.checks.push_back(validate_map(sheet));
        out.sheets.push_back(std::move(sheet));
    }
    return out;
}

boost::rational<long long> lift_chi_formula(const MapVoltage& mv) {
    const int n = mv.groups.operation_count();
    boost::rational<long long> sum = euler_characteristic(mv.base);
    for (int i = 0; i < n; ++i)
        for (int f : face_voltages(mv, i))
            sum += boost::rational<long long>(1, mv.groups.element_order(i, f)) - boost::rational<long long>(1, n);
    return sum * static_cast<long long>(mv.groups.universe_size());
}

// ---------------------------------------------------------------------------
// Named maps

namespace {

std::vector<std::vector<int>> octahedron_faces() {
    std::vector<std::vector<int>> faces;
    for (int sx : {1, -1})
        for (int sy : {1, -1})
            for (int sz : {1, -1}) {
                const int x = sx > 0 ? 0 : 1, y = sy > 0 ? 2 : 3, z = sz > 0 ? 4 : 5;
                if (sx * sy * sz > 0)
                    faces.push_back({x, y, z});
                else
                    faces.push_back({x, z, y});
            }
    return faces;
}

std::vector<std::vector<int>> icosahedron_faces() {
    std::vector<std::vector<int>> faces;
    auto up = [](int k) { return 1 + (k % 5); };
    auto low = [](int k) { return 6 + (k % 5); };
    for (int k = 0; k < 5; ++k) {
        faces.push_back({0, up(k), up(k + 1)});
        faces.push_back({up(k), low(k), up(k + 1)});
        faces.push_back({up(k + 1), low(k), low(k + 1)});
        faces.push_back({11, low(k + 1), low(k)});
    }
    return faces;
}

}  // namespace

std::vector<PlatonicSolid> platonic_solids() {
    const auto tetra = map_from_rotation(rotation_from_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}));
    const auto octa = map_from_rotation(rotation_from_faces(6, octahedron_faces()));
    const auto icosa = map_from_rotation(rotation_from_faces(12, icosahedron_faces()));
    return {
        {"tetrahedron", 3, 3, tetra},
        {"octahedron", 3, 4, octa},
        {"icosahedron", 3, 5, icosa},
        {"cube", 4, 3, dual_map(octa)},
        {"dodecahedron", 5, 3, dual_map(icosa)},
    };
}

CombinatorialMap klein_dipole_map() {
    const int x = 0, y = 1, z = 2, w = 3;
    auto q = [](int e, int k) { return quadricell(e, k); };
    return CombinatorialMap::from_cycles(
        4, {{q(x, q_one), q(y, q_one), q(z, q_one), q(w, q_one)},
            {q(x, q_alpha), q(w, q_alpha), q(z, q_alpha), q(y, q_alpha)},
            {q(x, q_alphabeta), q(y, q_alphabeta), q(z, q_beta), q(w, q_beta)},
            {q(x, q_beta), q(w, q_alphabeta), q(z, q_alphabeta), q(y, q_beta)}});
}

RotationSystem klein_dipole_rotation() {
    RotationSystem rs;
    rs.base = dipole(0, 4, 0);
    rs.rotation = {{0, 2, 4, 6}, {1, 3, 5, 7}};
    rs.lambda = {0, 0, 1, 1};
    validate(rs);
    return rs;
}

}  // namespace msg
