#include "msg/spatial.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <numeric>

#include "msg/error.hpp"

namespace msg {

namespace {

long long factorial(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) {
        if (f > LLONG_MAX / i) throw BudgetExceeded("factorial overflows");
        f *= i;
    }
    return f;
}

long long checked_mul(long long a, long long b) {
    if (a != 0 && b > LLONG_MAX / a) throw BudgetExceeded("count overflows");
    return a * b;
}

}  // namespace

long long count_space_embeddings(const Multigraph& g, int dimension) {
    require(dimension >= 3, "space embeddings need dimension >= 3");
    long long total = 1;
    for (int r : g.valencies()) total = checked_mul(total, factorial(r));
    return total;
}

std::set<SpacePermutation> enumerate_space_permutations(const Multigraph& g, long long budget) {
    if (count_space_embeddings(g, 3) > budget) throw BudgetExceeded("space permutation enumeration exceeds budget");
    SpacePermutation current{g.incident_semi_arcs()};
    std::set<SpacePermutation> out;
    const int nv = g.vertex_count();
    while (true) {
        out.insert(current);
        int v = 0;
        while (v < nv && !std::next_permutation(current.order[v].begin(), current.order[v].end())) ++v;
        if (v == nv) break;
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Point3> rectilinear_coordinates(const Multigraph& g, std::span<const long long> parameters) {
    require(g.is_simple(), "rectilinear embedding needs a simple graph");
    std::vector<long long> ts(parameters.begin(), parameters.end());
    if (ts.empty()) {
        ts.resize(static_cast<std::size_t>(g.vertex_count()));
        std::iota(ts.begin(), ts.end(), 1LL);
    }
    require(static_cast<int>(ts.size()) == g.vertex_count(), "one curve parameter per vertex");
    auto sorted = ts;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "curve parameters must be distinct");
    std::vector<Point3> out;
    for (long long t : ts) {
        const Rational r(t);
        out.emplace_back(r, r * r, r * r * r);
    }
    return out;
}

bool segments_cross(const Point3& a0, const Point3& a1, const Point3& b0, const Point3& b1) {
    const Point3 d1 = a1 - a0, d2 = b1 - b0, w = b0 - a0;
    const Point3 normal = d1.cross(d2);
    if (w.dot(normal) != 0) return false;  // skew
    auto shared_endpoint = [&](const Point3& p) { return (p == a0 || p == a1) && (p == b0 || p == b1); };
    const Rational nn = normal.dot(normal);
    if (nn != 0) {
        const Rational s = w.cross(d2).dot(normal) / nn;
        const Rational u = w.cross(d1).dot(normal) / nn;
        if (s < 0 || s > 1 || u < 0 || u > 1) return false;
        return !shared_endpoint(a0 + s * d1);
    }
    if (w.cross(d1) != Point3::Zero()) return false;  // parallel, different lines
    const Rational len = d1.dot(d1);
    const Rational t0 = w.dot(d1) / len, t1 = (b1 - a0).dot(d1) / len;
    const Rational lo = std::max(Rational(0), std::min(t0, t1));
    const Rational hi = std::min(Rational(1), std::max(t0, t1));
    if (lo > hi) return false;
    if (lo < hi) return true;
    return !shared_endpoint(a0 + lo * d1);
}

bool is_rectilinear_embedding(const Multigraph& g, std::span<const Point3> coords) {
    require(g.is_simple(), "rectilinear embedding needs a simple graph");
    require(static_cast<int>(coords.size()) == g.vertex_count(), "one point per vertex");
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j)
            if (coords[i] == coords[j]) return false;
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (segments_cross(coords[edges[i].tail], coords[edges[i].head], coords[edges[j].tail],
                               coords[edges[j].head]))
                return false;
    return true;
}

// ---------------------------------------------------------------------------

int planar_block_number_complete(int n) {
    require(n >= 1, "K_n needs n >= 1");
    return (n + 3) / 4;
}

int planar_block_number_complete_bipartite(int m, int n) {
    require(m >= 1 && n >= 1, "K(m,n) needs m,n >= 1");
    return (m >= 3 && n >= 3) ? 2 : 1;
}

namespace {

std::vector<int> mask_vertices(unsigned mask) {
    std::vector<int> vs;
    for (int v = 0; mask >> v; ++v)
        if ((mask >> v) & 1u) vs.push_back(v);
    return vs;
}

}  // namespace

int planar_block_number(const Multigraph& g) {
    const int nv = g.vertex_count();
    require(nv >= 1 && nv <= 12, "exhaustive planar block search supports 1..12 vertices");
    const unsigned full = (1u << nv) - 1;
    // Many induced subgraphs coincide after renumbering (all of them for K_n).
    std::map<std::vector<std::pair<int, int>>, bool> memo;
    std::vector<char> planar(full + 1, 0);
    for (unsigned mask = 1; mask <= full; ++mask) {
        const auto vs = mask_vertices(mask);
        const Multigraph sub = induced_subgraph(g, vs);
        std::vector<std::pair<int, int>> key{{sub.vertex_count(), -1}};
        for (const auto& e : sub.edges()) key.emplace_back(e.tail, e.head);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, is_planar(sub)).first;
        planar[mask] = it->second;
    }
    std::vector<int> best(full + 1, INT_MAX);
    best[0] = 0;
    for (unsigned mask = 1; mask <= full; ++mask) {
        const unsigned low = mask & (~mask + 1);
        // Blocks containing the lowest vertex of mask.
        for (unsigned sub = mask; sub; sub = (sub - 1) & mask) {
            if (!(sub & low) || !planar[sub] || best[mask ^ sub] == INT_MAX) continue;
            best[mask] = std::min(best[mask], best[mask ^ sub] + 1);
        }
    }
    return best[full];
}

bool sphere_multi_embedding_feasible(const Multigraph& g, int spheres) {
    return planar_block_number(g) <= spheres && spheres <= g.vertex_count();
}

bool is_including_decomposition(const Multigraph& g, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> block_of(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        require(!blocks[i].empty(), "empty block");
        for (int v : blocks[i]) {
            require(v >= 0 && v < g.vertex_count() && block_of[v] < 0, "blocks must partition the vertices");
            block_of[v] = static_cast<int>(i);
        }
    }
    require(std::find(block_of.begin(), block_of.end(), -1) == block_of.end(), "blocks must cover the vertices");
    for (const auto& e : g.edges())
        if (std::abs(block_of[e.tail] - block_of[e.head]) > 1) return false;
    for (const auto& b : blocks)
        if (!is_planar(induced_subgraph(g, b))) return false;
    return true;
}

std::set<int> multi_genus_range(const Multigraph& g, const std::vector<std::vector<int>>& blocks, bool orientable) {
    std::set<int> sums{0};
    for (const auto& b : blocks) {
        const Multigraph sub = induced_subgraph(g, b);
        require(sub.is_connected(), "each block must induce a connected graph");
        std::set<int> values;
        if (sub.edge_count() == 0) {
            values.insert(0);
        } else {
            const auto census = enumerate_embeddings(sub);
            for (const auto& [genus, count] : orientable ? census.orientable : census.nonorientable) values.insert(genus);
        }
        std::set<int> next;
        for (int s : sums)
            for (int v : values) next.insert(s + v);
        sums = std::move(next);
    }
    return sums;
}

// ---------------------------------------------------------------------------

long long isqrt(long long a) {
    require(a >= 0, "isqrt of a negative number");
    auto r = static_cast<long long>(std::sqrt(static_cast<long double>(a)));
    while (r > 0 && r * r > a) --r;
    while ((r + 1) * (r + 1) <= a) ++r;
    return r;
}

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

long long ceil_affine_sqrt(long long p, long long a, long long q) {
    require(q > 0 && a >= 0, "ceil_affine_sqrt needs q > 0 and a >= 0");
    long long m = floor_div(p + isqrt(a), q) - 1;
    // Smallest m with q·m − p ≥ √a.
    auto ok = [&](long long cand) {
        const long long t = q * cand - p;
        return t >= 0 && t * t >= a;
    };
    while (ok(m - 1)) --m;
    while (!ok(m)) ++m;
    return m;
}

long long floor_affine_sqrt(long long p, long long a, long long q) {
    require(q > 0 && a >= 0, "floor_affine_sqrt needs q > 0 and a >= 0");
    long long m = floor_div(p + isqrt(a), q) + 1;
    // Largest m with q·m − p ≤ √a.
    auto ok = [&](long long cand) {
        const long long t = q * cand - p;
        return t < 0 || t * t <= a;
    };
    while (ok(m + 1)) ++m;
    while (!ok(m)) --m;
    return m;
}

FeasibleBounds multi_embedding_bounds(MultiKind kind, std::span<const int> genera, bool orientable) {
    require(!genera.empty(), "at least one surface");
    FeasibleBounds b;
    for (int g : genera) {
        require(g >= 1, "surface genera must be at least 1");
        if (kind == MultiKind::complete && orientable) {
            b.lower += ceil_affine_sqrt(3, 16LL * g + 1, 2);
            b.upper += floor_affine_sqrt(7, 48LL * g + 1, 2);
        } else if (kind == MultiKind::complete) {
            b.lower += ceil_affine_sqrt(1, 2LL * g, 1);
            b.upper += floor_affine_sqrt(7, 24LL * g + 1, 2);
        } else if (orientable) {
            b.lower += ceil_affine_sqrt(1, 2LL * g, 1);
            b.upper += floor_affine_sqrt(2, 4LL * g, 1);
        } else {
            b.lower += ceil_affine_sqrt(1, g, 1);
            b.upper += floor_affine_sqrt(2, 2LL * g, 1);
        }
    }
    return b;
}

bool multi_embedding_feasible(MultiKind kind, int n, std::span<const int> genera, bool orientable) {
    const auto b = multi_embedding_bounds(kind, genera, orientable);
    return b.lower <= n && n <= b.upper;
}

bool multi_embedding_feasible_by_parts(int n, std::span<const int> genera, bool orientable) {
    require(!genera.empty(), "at least one surface");
    for (int g : genera) require(g >= 1, "surface genera must be at least 1");
    auto fits = [&](int m, int g) {
        if (m < 3) return false;
        if (orientable)
            return genus_complete(GenusKind::orientable, m) <= g && g <= genus_complete(GenusKind::max_orientable, m);
        return genus_complete(GenusKind::nonorientable, m) <= g && g <= genus_complete(GenusKind::max_nonorientable, m);
    };
    std::vector<char> reach(static_cast<std::size_t>(n + 1), 0);
    reach[0] = 1;
    for (int g : genera) {
        std::vector<char> next(reach.size(), 0);
        for (int s = 0; s <= n; ++s) {
            if (!reach[s]) continue;
            for (int m = 3; s + m <= n; ++m)
                if (fits(m, g)) next[s + m] = 1;
        }
        reach = std::move(next);
    }
    return reach[n];
}

// ---------------------------------------------------------------------------
// Manifold graphs

Perm mu_perm(int edge_count, int n) {
    Perm p(static_cast<std::size_t>(2 * n * edge_count));
    for (int e = 0; e < edge_count; ++e)
        for (int a = 0; a < 2; ++a)
            for (int k = 0; k < n; ++k) p[manifold_cell(n, e, a, k)] = manifold_cell(n, e, 1 - a, k);
    return p;
}

Perm o_perm(int edge_count, int n) {
    Perm p(static_cast<std::size_t>(2 * n * edge_count));
    for (int e = 0; e < edge_count; ++e)
        for (int a = 0; a < 2; ++a)
            for (int k = 0; k < n; ++k) p[manifold_cell(n, e, a, k)] = manifold_cell(n, e, a, (k + 1) % n);
    return p;
}

namespace {

void require_well_formed(const ManifoldGraph& mg) {
    require(mg.n >= 2, "manifold graphs need n >= 2");
    require(mg.edge_count >= 1, "manifold graphs need an edge");
    require(mg.L.size() == static_cast<std::size_t>(2 * mg.n * mg.edge_count) && is_permutation(mg.L),
            "L must permute the 2n*edge_count cells");
}

// n = 2: μ ↔ α (bit 0), o ↔ β (bit 1).
int to_quadricell(int cell) {
    const int e = cell / 4, a = (cell / 2) % 2, k = cell % 2;
    return quadricell(e, a | (k << 1));
}
int from_quadricell(int q) {
    const int e = quad_edge(q), kind = quad_kind(q);
    return manifold_cell(2, e, kind & 1, kind >> 1);
}

CombinatorialMap as_map(const ManifoldGraph& mg) {
    Perm p(mg.L.size());
    for (std::size_t x = 0; x < mg.L.size(); ++x) p[to_quadricell(static_cast<int>(x))] = to_quadricell(mg.L[x]);
    return CombinatorialMap(mg.edge_count, std::move(p));
}

void require_valid(const ManifoldGraph& mg) {
    const auto check = validate_manifold_graph(mg);
    if (!check.ok)
        throw InvalidInput("manifold graph violates axiom (" + check.axiom + ") at cell " + std::to_string(check.witness));
}

// Sheet permutation L̄; only meaningful when L commutes with o.
std::vector<int> sheet_perm(const ManifoldGraph& mg) {
    std::vector<int> s(static_cast<std::size_t>(2 * mg.edge_count));
    for (int sh = 0; sh < 2 * mg.edge_count; ++sh) s[sh] = mg.L[sh * mg.n] / mg.n;
    return s;
}

}  // namespace

ManifoldCheck validate_manifold_graph(const ManifoldGraph& mg) {
    require_well_formed(mg);
    if (mg.n == 2) {
        const auto c = validate_map(as_map(mg));
        if (c.ok) return {};
        return {false, c.axiom, c.witness < 0 ? -1 : from_quadricell(c.witness)};
    }
    const int cells = static_cast<int>(mg.L.size());
    const Perm mu = mu_perm(mg.edge_count, mg.n), o = o_perm(mg.edge_count, mg.n);
    const Perm linv = inverse(mg.L);
    std::vector<int> cyc(static_cast<std::size_t>(cells), -1);
    int next = 0;
    for (int s = 0; s < cells; ++s) {
        if (cyc[s] >= 0) continue;
        for (int x = s; cyc[x] < 0; x = mg.L[x]) cyc[x] = next;
        ++next;
    }
    for (int x = 0; x < cells; ++x)
        for (int i = 1, y = o[x]; i < mg.n; ++i, y = o[y])
            if (cyc[y] == cyc[x]) return {false, "i", x};
    for (int x = 0; x < cells; ++x)
        if (mu[mg.L[x]] != linv[mu[x]]) return {false, "ii", x};
    const std::vector<Perm> gens{mu, o, mg.L};
    const auto lab = orbit_labels(cells, gens);
    for (int x = 0; x < cells; ++x)
        if (lab[x] != lab[0]) return {false, "iii", x};
    for (int x = 0; x < cells; ++x)
        if (mg.L[o[x]] != o[mg.L[x]]) return {false, "o", x};
    return {};
}

std::vector<ManifoldVertex> manifold_vertices(const ManifoldGraph& mg) {
    require_valid(mg);
    std::vector<ManifoldVertex> out;
    if (mg.n == 2) {
        const auto m = as_map(mg);
        const auto vid = cell_vertices(m);
        const int nv = 1 + *std::max_element(vid.begin(), vid.end());
        out.resize(static_cast<std::size_t>(nv));
        for (const auto& c : cycles(m.P())) {
            Cycle mc;
            for (int q : c) mc.push_back(from_quadricell(q));
            auto& v = out[vid[c.front()]];
            v.valency = static_cast<int>(c.size());
            v.l = 1;
            v.cycles.push_back(canonical_cycle(std::move(mc)));
        }
        for (auto& v : out) std::sort(v.cycles.begin(), v.cycles.end());
        return out;
    }
    const int cells = static_cast<int>(mg.L.size());
    const auto cs = cycles(mg.L);
    std::vector<int> cyc(static_cast<std::size_t>(cells));
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (int x : cs[i]) cyc[x] = static_cast<int>(i);
    const Perm mu = mu_perm(mg.edge_count, mg.n), o = o_perm(mg.edge_count, mg.n);
    DisjointSets ds(static_cast<int>(cs.size()));
    for (int x = 0; x < cells; ++x) {
        ds.unite(cyc[x], cyc[o[x]]);
        ds.unite(cyc[x], cyc[mu[x]]);
    }
    const auto sheets = sheet_perm(mg);
    std::map<int, ManifoldVertex> by_root;
    std::map<int, std::set<int>> sheet_sets;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const int r = ds.find(static_cast<int>(i));
        by_root[r].cycles.push_back(canonical_cycle(cs[i]));
        for (int x : cs[i]) sheet_sets[r].insert(x / mg.n);
    }
    for (auto& [r, v] : by_root) {
        std::sort(v.cycles.begin(), v.cycles.end());
        const auto& ss = sheet_sets[r];
        v.valency = static_cast<int>(ss.size());
        std::set<int> seen;
        for (int s : ss) {
            if (seen.contains(s)) continue;
            ++v.l;
            for (int t = s; !seen.contains(t); t = sheets[t]) seen.insert(t);
        }
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.cycles.front() < b.cycles.front(); });
    return out;
}

Multigraph underlying_graph(const ManifoldGraph& mg) {
    const auto verts = manifold_vertices(mg);
    std::vector<int> vertex_of(mg.L.size(), -1);
    for (std::size_t v = 0; v < verts.size(); ++v)
        for (const auto& c : verts[v].cycles)
            for (int x : c) vertex_of[x] = static_cast<int>(v);
    Multigraph g(static_cast<int>(verts.size()));
    for (int e = 0; e < mg.edge_count; ++e) {
        // The two ends are the two sheets for n ≥ 3, and the β-pair (k = 0, 1) for n = 2.
        const int far = mg.n == 2 ? manifold_cell(2, e, 0, 1) : manifold_cell(mg.n, e, 1, 0);
        g.add_edge(vertex_of[manifold_cell(mg.n, e, 0, 0)], vertex_of[far]);
    }
    return g;
}

CombinatorialMap manifold_graph_to_map(const ManifoldGraph& mg) {
    require_valid(mg);
    if (mg.n == 2) return as_map(mg);
    const auto sheets = sheet_perm(mg);
    auto cell = [](int sheet) {
        return quadricell(sheet / 2, sheet % 2 == 0 ? q_one : q_alphabeta);
    };
    Perm p(static_cast<std::size_t>(4 * mg.edge_count));
    for (int s = 0; s < 2 * mg.edge_count; ++s) {
        p[cell(s)] = cell(sheets[s]);
        p[alpha_of(cell(sheets[s]))] = alpha_of(cell(s));
    }
    return CombinatorialMap(mg.edge_count, std::move(p));
}

ManifoldGraph map_to_manifold_graph(const CombinatorialMap& m, int n) {
    require(n >= 2, "manifold graphs need n >= 2");
    ManifoldGraph mg{m.edge_count(), n, Perm(static_cast<std::size_t>(2 * n * m.edge_count()))};
    if (n == 2) {
        for (int q = 0; q < m.cell_count(); ++q) mg.L[from_quadricell(q)] = from_quadricell(m.P()[q]);
    } else {
        const auto rs = rotation_from_map(m);
        std::vector<int> next(static_cast<std::size_t>(2 * m.edge_count()));
        for (const auto& rot : rs.rotation)
            for (std::size_t i = 0; i < rot.size(); ++i) next[rot[i]] = rot[(i + 1) % rot.size()];
        for (int s = 0; s < 2 * m.edge_count(); ++s)
            for (int k = 0; k < n; ++k) mg.L[s * n + k] = next[s] * n + k;
    }
    require_valid(mg);
    return mg;
}

long long rooted_manifold_count(const Multigraph& g, int n, const SearchLimits& lim) {
    require(n >= 2, "manifold graphs need n >= 2");
    require(g.edge_count() >= 1 && g.is_connected(), "rooted counts need a connected graph with an edge");
    const long long aut = semi_arc_automorphism_order(g, lim);
    const long long num = checked_mul(checked_mul(n, g.edge_count()), count_space_embeddings(g, 3));
    if (num % aut != 0) throw Error("rooted manifold formula is not integral");
    return num / aut;
}

std::vector<ManifoldGraph> enumerate_manifold_graphs(int edge_count, int n, long long budget) {
    require(n >= 3, "o-commuting enumeration needs n >= 3");
    require(edge_count >= 1, "need an edge");
    const int sheets = 2 * edge_count;
    long long total = factorial(sheets);
    for (int i = 0; i < sheets; ++i) total = checked_mul(total, n);
    if (total > budget) throw BudgetExceeded(std::to_string(total) + " candidates exceed the budget");
    std::vector<ManifoldGraph> out;
    std::vector<int> target(static_cast<std::size_t>(sheets));
    std::iota(target.begin(), target.end(), 0);
    do {
        std::vector<int> shift(static_cast<std::size_t>(sheets), 0);
        while (true) {
            ManifoldGraph mg{edge_count, n, Perm(static_cast<std::size_t>(sheets * n))};
            for (int s = 0; s < sheets; ++s)
                for (int k = 0; k < n; ++k) mg.L[s * n + k] = target[s] * n + (k + shift[s]) % n;
            if (validate_manifold_graph(mg).ok) out.push_back(std::move(mg));
            int i = 0;
            while (i < sheets && ++shift[i] == n) shift[i++] = 0;
            if (i == sheets) break;
        }
    } while (std::next_permutation(target.begin(), target.end()));
    return out;
}

long long rooted_manifold_count_exhaustive(const Multigraph& g, int n, long long budget) {
    std::set<std::vector<int>> codes;
    const Perm mu = mu_perm(g.edge_count(), n), o = o_perm(g.edge_count(), n);
    for (const auto& mg : enumerate_manifold_graphs(g.edge_count(), n, budget)) {
        const Multigraph under = underlying_graph(mg);
        if (under.vertex_count() != g.vertex_count() || !find_isomorphism(under, g)) continue;
        const std::vector<Perm> gens{mu, o, mg.L};
        for (int root = 0; root < static_cast<int>(mg.L.size()); ++root) codes.insert(rooted_code(gens, root));
    }
    return static_cast<long long>(codes.size());
}

}  // namespace msg
