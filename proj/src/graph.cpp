#include "msg/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "msg/error.hpp"

namespace msg {

Multigraph::Multigraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    require(vertex_count >= 0, "negative vertex count");
    for (const auto& e : edges_)
        require(e.tail >= 0 && e.tail < vertex_count_ && e.head >= 0 && e.head < vertex_count_,
                "edge endpoint out of range");
}

int Multigraph::add_edge(int u, int v) {
    require(u >= 0 && u < vertex_count_ && v >= 0 && v < vertex_count_, "edge endpoint out of range");
    edges_.push_back({u, v});
    return edge_count() - 1;
}

int Multigraph::semi_arc_vertex(int s) const {
    const Edge& e = edge(semi_arc_edge(s));
    return semi_arc_end(s) == 0 ? e.tail : e.head;
}

int Multigraph::valency(int v) const {
    int d = 0;
    for (const auto& e : edges_) d += (e.tail == v) + (e.head == v);
    return d;
}

std::vector<int> Multigraph::valencies() const {
    std::vector<int> d(static_cast<std::size_t>(vertex_count_), 0);
    for (const auto& e : edges_) {
        ++d[e.tail];
        ++d[e.head];
    }
    return d;
}

std::vector<std::vector<int>> Multigraph::incident_semi_arcs() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(vertex_count_));
    for (int s = 0; s < 2 * edge_count(); ++s) out[semi_arc_vertex(s)].push_back(s);
    return out;
}

std::vector<std::vector<int>> Multigraph::neighbours() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(vertex_count_));
    for (const auto& e : edges_) {
        out[e.tail].push_back(e.head);
        out[e.head].push_back(e.tail);
    }
    return out;
}

bool Multigraph::is_simple() const {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges_) {
        if (e.is_loop()) return false;
        if (!seen.insert(std::minmax(e.tail, e.head)).second) return false;
    }
    return true;
}

int Multigraph::component_count() const {
    DisjointSets ds(vertex_count_);
    int c = vertex_count_;
    for (const auto& e : edges_) c -= ds.unite(e.tail, e.head);
    return c;
}

bool Multigraph::is_connected() const { return component_count() <= 1; }

int Multigraph::betti() const { return edge_count() - vertex_count_ + component_count(); }

bool Multigraph::has_edge(int u, int v) const {
    return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
        return (e.tail == u && e.head == v) || (e.tail == v && e.head == u);
    });
}

Multigraph empty_graph(int n) { return Multigraph(n); }

Multigraph complete_graph(int n) {
    Multigraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Multigraph cycle_graph(int n) {
    require(n >= 1, "cycle needs at least one vertex");
    Multigraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

Multigraph path_graph(int n) {
    Multigraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Multigraph complete_bipartite(int m, int n) {
    Multigraph g(m + n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) g.add_edge(i, m + j);
    return g;
}

Multigraph bouquet(int loops) {
    Multigraph g(1);
    for (int i = 0; i < loops; ++i) g.add_edge(0, 0);
    return g;
}

Multigraph dipole(int s, int l, int t) {
    Multigraph g(2);
    for (int i = 0; i < s; ++i) g.add_edge(0, 0);
    for (int i = 0; i < l; ++i) g.add_edge(0, 1);
    for (int i = 0; i < t; ++i) g.add_edge(1, 1);
    return g;
}

Eigen::MatrixXi adjacency_matrix(const Multigraph& g) {
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(g.vertex_count(), g.vertex_count());
    for (const auto& e : g.edges()) {
        if (e.is_loop()) {
            a(e.tail, e.tail) += 1;
        } else {
            a(e.tail, e.head) += 1;
            a(e.head, e.tail) += 1;
        }
    }
    return a;
}

bool same_edge_multiset(const Multigraph& a, const Multigraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    auto key = [](const Multigraph& g) {
        std::vector<std::pair<int, int>> k;
        for (const auto& e : g.edges()) k.push_back(std::minmax(e.tail, e.head));
        std::sort(k.begin(), k.end());
        return k;
    };
    return key(a) == key(b);
}

std::optional<std::vector<int>> find_isomorphism(const Multigraph& a, const Multigraph& b) {
    const int n = a.vertex_count();
    if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return std::nullopt;
    auto da = a.valencies(), db = b.valencies();
    {
        auto sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    const Eigen::MatrixXi ma = adjacency_matrix(a), mb = adjacency_matrix(b);
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::function<bool(int)> go = [&](int v) -> bool {
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (used[w] || da[v] != db[w] || ma(v, v) != mb(w, w)) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) ok = ma(v, u) == mb(w, map[u]);
            if (!ok) continue;
            map[v] = w;
            used[w] = 1;
            if (go(v + 1)) return true;
            used[w] = 0;
        }
        map[v] = -1;
        return false;
    };
    if (go(0)) return map;
    return std::nullopt;
}

// ---- degree sequences ----

bool is_graphical_hh(std::span<const int> seq) {
    require(!seq.empty(), "empty degree sequence");
    std::vector<int> d(seq.begin(), seq.end());
    for (int x : d) require(x >= 0, "negative degree");
    while (true) {
        std::sort(d.begin(), d.end(), std::greater<>());
        while (!d.empty() && d.back() == 0) d.pop_back();
        if (d.empty()) return true;
        int k = d.front();
        d.erase(d.begin());
        if (k > static_cast<int>(d.size())) return false;
        for (int i = 0; i < k; ++i)
            if (--d[i] < 0) return false;
    }
}

bool is_graphical_eg(std::span<const int> seq) {
    require(!seq.empty(), "empty degree sequence");
    std::vector<long long> d(seq.begin(), seq.end());
    for (auto x : d) require(x >= 0, "negative degree");
    std::sort(d.begin(), d.end(), std::greater<>());
    const long long p = static_cast<long long>(d.size());
    long long total = std::accumulate(d.begin(), d.end(), 0LL);
    if (total % 2 != 0) return false;
    if (d.front() > p - 1) return false;
    long long prefix = 0;
    for (long long n = 1; n <= p - 1; ++n) {
        prefix += d[n - 1];
        long long rhs = n * (n - 1);
        for (long long i = n; i < p; ++i) rhs += std::min(n, d[i]);
        if (prefix > rhs) return false;
    }
    return true;
}

std::optional<Multigraph> realize_sequence(std::span<const int> seq) {
    const int p = static_cast<int>(seq.size());
    std::vector<std::pair<int, int>> rest;  // (remaining degree, vertex)
    for (int i = 0; i < p; ++i) rest.emplace_back(seq[i], i);
    Multigraph g(p);
    while (true) {
        std::sort(rest.begin(), rest.end(), std::greater<>());
        if (rest.empty() || rest.front().first == 0) break;
        auto [k, v] = rest.front();
        rest.erase(rest.begin());
        if (k > static_cast<int>(rest.size())) return std::nullopt;
        for (int i = 0; i < k; ++i) {
            if (--rest[i].first < 0) return std::nullopt;
            g.add_edge(v, rest[i].second);
        }
    }
    return g;
}

// ---- eccentricity ----

std::vector<int> bfs_distances(const Multigraph& g, int source) {
    auto nb = g.neighbours();
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : nb[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

EccentricityProfile eccentricity_profile(const Multigraph& g) {
    require(g.vertex_count() > 0, "eccentricity of the empty graph");
    require(g.is_connected(), "eccentricity undefined on a disconnected graph");
    EccentricityProfile prof;
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto d = bfs_distances(g, v);
        int e = *std::max_element(d.begin(), d.end());
        prof.eccentricity.push_back(e);
        prof.multiplicity[e].push_back(v);
    }
    for (const auto& [l, vs] : prof.multiplicity) prof.values.push_back(l);
    prof.radius = prof.values.front();
    prof.diameter = prof.values.back();
    return prof;
}

bool validate_ecc_value_sequence(std::span<const int> seq) {
    require(!seq.empty(), "empty eccentricity sequence");
    for (std::size_t i = 0; i < seq.size(); ++i) {
        require(seq[i] > 0, "eccentricities are positive");
        if (i > 0) require(seq[i] > seq[i - 1], "sequence must be strictly increasing");
    }
    if (seq.back() > 2 * seq.front()) return false;
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i] - seq[i - 1] != 1) return false;
    return true;
}

Multigraph construct_ecc_witness(int r, int s) {
    require(r >= 1 && s >= 1, "r and s must be positive");
    require(s <= r, "construction needs s <= r");
    Multigraph g = cycle_graph(2 * r);
    // pendant path u_1..u_{s-1} hung from vertex 0 of the cycle
    int prev = 0;
    for (int i = 1; i < s; ++i) {
        int u = g.add_vertex();
        g.add_edge(prev, u);
        prev = u;
    }
    return g;
}

// ---- hamiltonicity ----

std::optional<std::vector<int>> brute_force_hamiltonian(const Multigraph& g, const SearchLimits& lim) {
    const int n = g.vertex_count();
    if (n > lim.hamiltonian_vertices)
        throw BudgetExceeded("hamiltonian search limited to " + std::to_string(lim.hamiltonian_vertices) +
                             " vertices");
    if (n == 0) return std::nullopt;
    const Eigen::MatrixXi a = adjacency_matrix(g);
    if (n == 1) {
        if (a(0, 0) > 0) return std::vector<int>{0};
        return std::nullopt;
    }
    if (n == 2) {
        if (a(0, 1) >= 2) return std::vector<int>{0, 1};
        return std::nullopt;
    }
    std::vector<int> path{0};
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    used[0] = 1;
    std::function<bool()> go = [&]() -> bool {
        int v = path.back();
        if (static_cast<int>(path.size()) == n) return a(v, 0) > 0;
        for (int w = 1; w < n; ++w) {
            if (used[w] || a(v, w) == 0) continue;
            used[w] = 1;
            path.push_back(w);
            if (go()) return true;
            path.pop_back();
            used[w] = 0;
        }
        return false;
    };
    if (go()) return path;
    return std::nullopt;
}

bool is_circuit(const Multigraph& g, std::span<const int> edges) {
    if (edges.empty()) return false;
    std::set<int> distinct(edges.begin(), edges.end());
    if (distinct.size() != edges.size()) return false;
    std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
    DisjointSets ds(g.vertex_count());
    for (int e : edges) {
        if (e < 0 || e >= g.edge_count()) return false;
        const Edge& ed = g.edge(e);
        ++deg[ed.tail];
        ++deg[ed.head];
        ds.unite(ed.tail, ed.head);
    }
    int root = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (deg[v] == 0) continue;
        if (deg[v] != 2) return false;
        if (root < 0) root = ds.find(v);
        if (ds.find(v) != root) return false;
    }
    return true;
}

bool spans_all_vertices(const Multigraph& g, std::span<const int> edges) {
    std::vector<char> hit(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int e : edges) {
        hit[g.edge(e).tail] = 1;
        hit[g.edge(e).head] = 1;
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool is_hamiltonian_circuit_via_cuts(const Multigraph& g, std::span<const int> circuit_edges,
                                     const SearchLimits& lim) {
    const int n = g.vertex_count();
    for (int v : g.valencies()) require(v > 0, "graph has an isolated vertex");
    require(is_circuit(g, circuit_edges), "edge set is not a circuit");
    if (n > lim.cut_vertices)
        throw BudgetExceeded("edge-cut enumeration too large; use spans_all_vertices");
    std::vector<char> in_c(static_cast<std::size_t>(g.edge_count()), 0);
    for (int e : circuit_edges) in_c[e] = 1;
    // vertex 0 always on side V_1, so each cut is visited once
    for (long long mask = 0; mask < (1LL << (n - 1)); ++mask) {
        auto side = [&](int v) { return v == 0 ? 0 : static_cast<int>((mask >> (v - 1)) & 1); };
        bool proper = mask != 0;
        if (!proper) continue;
        int crossing = 0;
        for (int e = 0; e < g.edge_count(); ++e)
            if (in_c[e] && side(g.edge(e).tail) != side(g.edge(e).head)) ++crossing;
        if (crossing % 2 != 0 || crossing < 2) return false;
    }
    return true;
}

Multigraph closure(const Multigraph& g) {
    require(g.is_simple(), "closure needs a simple graph");
    const int n = g.vertex_count();
    Multigraph c = g;
    auto deg = c.valencies();
    Eigen::MatrixXi a = adjacency_matrix(c);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (a(i, j) == 0 && deg[i] + deg[j] >= n) {
                    c.add_edge(i, j);
                    a(i, j) = a(j, i) = 1;
                    ++deg[i];
                    ++deg[j];
                    changed = true;
                }
    }
    return c;
}

std::vector<std::vector<int>> decompose_complete_odd(int n) {
    require(n >= 1, "n must be positive");
    const int m = 2 * n;
    auto wrap = [m](int k) { return ((k - 1) % m + m) % m + 1; };
    std::vector<std::vector<int>> out;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> h{0, i};
        for (int t = 1; t < n; ++t) {
            h.push_back(wrap(i + t));
            h.push_back(wrap(i - t));
        }
        h.push_back(wrap(i + n));
        out.push_back(std::move(h));
    }
    return out;
}

int splitting_vertex_count(const Multigraph& g, int u) {
    return g.vertex_count() - 1 + 4 + 3 * g.valency(u);
}

Multigraph splitting_operator(const Multigraph& g, int u) {
    require(u >= 0 && u < g.vertex_count(), "vertex out of range");
    const int d = g.valency(u);
    require(d >= 1, "splitting needs a vertex of positive valency");
    // renumber the rest of G, dropping u
    std::vector<int> id(static_cast<std::size_t>(g.vertex_count()), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != u) id[v] = next++;
    Multigraph out(next);
    // diamond chain Θ_1 ⊙ … ⊙ Θ_{d+1}: u_i doubles as x_{i+1}
    std::vector<int> hinge;  // u_1..u_{d+1}
    int x = out.add_vertex();
    for (int i = 0; i <= d; ++i) {
        int y = out.add_vertex(), z = out.add_vertex(), w = out.add_vertex();
        out.add_edge(x, y);
        out.add_edge(x, z);
        out.add_edge(y, z);
        out.add_edge(y, w);
        out.add_edge(z, w);
        hinge.push_back(w);
        x = w;
    }
    int slot = 0;
    for (const auto& e : g.edges()) {
        int a = e.tail == u ? hinge[slot++] : id[e.tail];
        int b = e.head == u ? hinge[slot++] : id[e.head];
        out.add_edge(a, b);
    }
    return out;
}

// ---- operations ----

Multigraph graph_union(const Multigraph& a, const Multigraph& b) {
    Multigraph out(std::max(a.vertex_count(), b.vertex_count()));
    std::map<std::pair<int, int>, int> ca, cb;
    for (const auto& e : a.edges()) ++ca[std::minmax(e.tail, e.head)];
    for (const auto& e : b.edges()) ++cb[std::minmax(e.tail, e.head)];
    for (const auto& [k, v] : cb) ca[k] = std::max(ca[k], v);
    for (const auto& [k, v] : ca)
        for (int i = 0; i < v; ++i) out.add_edge(k.first, k.second);
    return out;
}

Multigraph graph_join(const Multigraph& a, const Multigraph& b) {
    const int na = a.vertex_count();
    Multigraph out(na + b.vertex_count());
    for (const auto& e : a.edges()) out.add_edge(e.tail, e.head);
    for (const auto& e : b.edges()) out.add_edge(na + e.tail, na + e.head);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < b.vertex_count(); ++j) out.add_edge(i, na + j);
    return out;
}

Multigraph cartesian_product(const Multigraph& a, const Multigraph& b) {
    const int nb = b.vertex_count();
    Multigraph out(a.vertex_count() * nb);
    auto id = [nb](int x, int y) { return x * nb + y; };
    for (int x = 0; x < a.vertex_count(); ++x)
        for (const auto& e : b.edges()) out.add_edge(id(x, e.tail), id(x, e.head));
    for (int y = 0; y < nb; ++y)
        for (const auto& e : a.edges()) out.add_edge(id(e.tail, y), id(e.head, y));
    return out;
}

Multigraph complement(const Multigraph& g) {
    require(g.is_simple(), "complement needs a simple graph");
    Multigraph out(g.vertex_count());
    const Eigen::MatrixXi a = adjacency_matrix(g);
    for (int i = 0; i < g.vertex_count(); ++i)
        for (int j = i + 1; j < g.vertex_count(); ++j)
            if (a(i, j) == 0) out.add_edge(i, j);
    return out;
}

Multigraph relabel(const Multigraph& g, const Perm& p) {
    require(static_cast<int>(p.size()) == g.vertex_count(), "relabel: size mismatch");
    Multigraph out(g.vertex_count());
    for (const auto& e : g.edges()) out.add_edge(p[e.tail], p[e.head]);
    return out;
}

bool is_vertex_automorphism(const Multigraph& g, const Perm& p) {
    return is_permutation(p) && static_cast<int>(p.size()) == g.vertex_count() &&
           same_edge_multiset(g, relabel(g, p));
}

long long semi_arc_automorphism_order(const Multigraph& g, const SearchLimits& lim) {
    const int m = 2 * g.edge_count();
    if (m > lim.automorphism_semi_arcs)
        throw BudgetExceeded("semi-arc automorphism search limited to " +
                             std::to_string(lim.automorphism_semi_arcs) + " semi-arcs");
    std::vector<int> vert(static_cast<std::size_t>(m));
    for (int s = 0; s < m; ++s) vert[s] = g.semi_arc_vertex(s);
    std::vector<int> img(static_cast<std::size_t>(m), -1);
    std::vector<char> used(static_cast<std::size_t>(m), 0);
    long long count = 0;
    std::function<void(int)> go = [&](int s) {
        if (s == m) {
            ++count;
            return;
        }
        for (int t = 0; t < m; ++t) {
            if (used[t]) continue;
            bool ok = true;
            for (int r = 0; r < s && ok; ++r) {
                ok = ((semi_arc_edge(r) == semi_arc_edge(s)) == (semi_arc_edge(img[r]) == semi_arc_edge(t))) &&
                     ((vert[r] == vert[s]) == (vert[img[r]] == vert[t]));
            }
            if (!ok) continue;
            img[s] = t;
            used[t] = 1;
            go(s + 1);
            used[t] = 0;
        }
    };
    go(0);
    return count;
}

long long vertex_automorphism_order(const Multigraph& g) {
    const int n = g.vertex_count();
    const Eigen::MatrixXi a = adjacency_matrix(g);
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    long long count = 0;
    std::function<void(int)> go = [&](int v) {
        if (v == n) {
            ++count;
            return;
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || a(v, v) != a(w, w)) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u) ok = a(v, u) == a(w, map[u]);
            if (!ok) continue;
            map[v] = w;
            used[w] = 1;
            go(v + 1);
            used[w] = 0;
        }
    };
    go(0);
    return count;
}

std::vector<EdgePart> decompose_bouquets_dipoles(const Multigraph& g) {
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int e = 0; e < g.edge_count(); ++e)
        groups[std::minmax(g.edge(e).tail, g.edge(e).head)].push_back(e);
    std::vector<EdgePart> out;
    for (auto& [k, es] : groups) {
        if (k.first == k.second)
            out.push_back({EdgePart::Kind::bouquet, {k.first}, std::move(es)});
        else
            out.push_back({EdgePart::Kind::dipole, {k.first, k.second}, std::move(es)});
    }
    return out;
}

}  // namespace msg

namespace msg {

Multigraph induced_subgraph(const Multigraph& g, std::span<const int> vertices) {
    std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        require(vertices[i] >= 0 && vertices[i] < g.vertex_count(), "induced_subgraph: vertex out of range");
        require(index[vertices[i]] < 0, "induced_subgraph: repeated vertex");
        index[vertices[i]] = static_cast<int>(i);
    }
    Multigraph out(static_cast<int>(vertices.size()));
    for (const auto& e : g.edges())
        if (index[e.tail] >= 0 && index[e.head] >= 0) out.add_edge(index[e.tail], index[e.head]);
    return out;
}

std::vector<std::vector<int>> components(const Multigraph& g) {
    DisjointSets ds(g.vertex_count());
    for (const auto& e : g.edges()) ds.unite(e.tail, e.head);
    std::map<int, std::vector<int>> by_root;
    for (int v = 0; v < g.vertex_count(); ++v) by_root[ds.find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, vs] : by_root) out.push_back(std::move(vs));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace msg
