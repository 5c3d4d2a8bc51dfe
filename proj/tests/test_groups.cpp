#include <algorithm>
#include <queue>
#include <set>

#include "doctest.h"
#include "msg/error.hpp"
#include "msg/generators.hpp"
#include "msg/group.hpp"

using namespace msg;

namespace {

std::vector<int> ints(std::initializer_list<int> xs) { return xs; }

// Max number of edge-disjoint u-v paths via unit-capacity augmenting paths.
int edge_connectivity_between(const Multigraph& g, int s, int t) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> cap(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (const auto& e : g.edges())
        if (!e.is_loop()) ++cap[e.tail][e.head], ++cap[e.head][e.tail];
    int flow = 0;
    for (;;) {
        std::vector<int> prev(static_cast<std::size_t>(n), -1);
        prev[s] = s;
        std::queue<int> q;
        q.push(s);
        while (!q.empty() && prev[t] < 0) {
            int x = q.front();
            q.pop();
            for (int y = 0; y < n; ++y)
                if (prev[y] < 0 && cap[x][y] > 0) prev[y] = x, q.push(y);
        }
        if (prev[t] < 0) return flow;
        for (int y = t; y != s; y = prev[y]) --cap[prev[y]][y], ++cap[y][prev[y]];
        ++flow;
    }
}

int edge_connectivity(const Multigraph& g) {
    int best = g.edge_count();
    for (int v = 1; v < g.vertex_count(); ++v) best = std::min(best, edge_connectivity_between(g, 0, v));
    return best;
}

}  // namespace

TEST_CASE("group axioms") {
    CHECK(verify_group(cyclic_group(4).table()).ok);
    // e, a, b: a·a = b, b·b = a, a·b = e
    Table letters{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    CHECK(verify_group(letters).ok);
    // a Latin square with identity 0 that is not associative
    Table loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    auto bad = verify_group(loop);
    CHECK_FALSE(bad.ok);
    CHECK(bad.axiom == "associativity");
    REQUIRE(bad.witness.size() == 3);
    int a = bad.witness[0], b = bad.witness[1], c = bad.witness[2];
    CHECK(loop[loop[a][b]][c] != loop[a][loop[b][c]]);
    CHECK_THROWS_AS(verify_group(Table{{0, 1}, {1}}), InvalidInput);
    CHECK_FALSE(verify_group(Table{{0, 1}, {1, 1}}).ok);
}

TEST_CASE("group catalogue is made of groups") {
    for (const auto& g : gen::group_catalogue(12)) {
        CHECK(verify_group(g.table()).ok);
        CHECK(g.identity() == 0);
    }
    CHECK(dihedral_group(3).order() == 6);
    CHECK_FALSE(dihedral_group(3).is_abelian());
}

TEST_CASE("cayley graphs") {
    auto z4 = cyclic_group(4);
    CHECK(same_edge_multiset(cayley_graph(z4, ints({1, 3})), cycle_graph(4)));
    CHECK(same_edge_multiset(cayley_graph(cyclic_group(5), ints({1, 2, 3, 4})), complete_graph(5)));
    auto two_triangles = cayley_graph(cyclic_group(6), ints({2, 4}));
    CHECK(two_triangles.component_count() == 2);
    CHECK_THROWS_AS(cayley_graph(z4, ints({0, 1, 3})), InvalidInput);
    CHECK_THROWS_AS(cayley_graph(z4, ints({1})), InvalidInput);

    SUBCASE("regular and vertex-transitive") {
        for (const auto& g : gen::group_catalogue(10)) {
            std::vector<int> s;
            for (int x = 1; x < g.order(); ++x)
                if (x <= g.inverse(x)) {
                    if ((x + g.order()) % 3 == 0) continue;
                    s.push_back(x);
                    if (g.inverse(x) != x) s.push_back(g.inverse(x));
                }
            auto cay = cayley_graph(g, s);
            for (int d : cay.valencies()) CHECK(d == static_cast<int>(s.size()));
            CHECK(cay.is_connected() == (static_cast<int>(g.generated(s).size()) == g.order()));
            for (int x = 0; x < g.order(); ++x) CHECK(is_vertex_automorphism(cay, vertex_transitivity_witness(g, x)));
        }
    }
}

TEST_CASE("translation witnesses") {
    auto z4 = cyclic_group(4);
    CHECK(vertex_transitivity_witness(z4, 0) == identity_perm(4));
    CHECK(vertex_transitivity_witness(z4, 1) == Perm{1, 2, 3, 0});
    auto z5 = cyclic_group(5);
    CHECK(is_vertex_automorphism(cayley_graph(z5, ints({1, 4})), vertex_transitivity_witness(z5, 2)));
    CHECK_THROWS_AS(vertex_transitivity_witness(z4, 4), InvalidInput);
}

TEST_CASE("multigroup cayley graphs") {
    auto z3 = cyclic_group(3);
    auto a = relabelled(z3, {"a0", "a1", "a2"});
    auto b = relabelled(z3, {"b0", "b1", "b2"});
    auto shared = relabelled(z3, {"a0", "c1", "c2"});  // meets the first in its identity

    auto disjoint = MultiGroup::from_groups({a, b});
    auto s_disjoint = std::vector<std::vector<int>>{{*disjoint.index_of("a1"), *disjoint.index_of("a2")},
                                                    {*disjoint.index_of("b1"), *disjoint.index_of("b2")}};
    auto built = cayley_graph_multigroup(disjoint, s_disjoint);
    CHECK(built.graph.vertex_count() == 6);
    CHECK(built.graph.component_count() == 2);
    CHECK_FALSE(is_multigroup_cayley_connected(disjoint, s_disjoint));

    auto overlap = MultiGroup::from_groups({a, shared});
    CHECK(overlap.universe_size() == 5);
    auto s_overlap = std::vector<std::vector<int>>{{*overlap.index_of("a1"), *overlap.index_of("a2")},
                                                   {*overlap.index_of("c1"), *overlap.index_of("c2")}};
    auto joined = cayley_graph_multigroup(overlap, s_overlap);
    CHECK(joined.graph.is_connected());
    CHECK(is_multigroup_cayley_connected(overlap, s_overlap));

    auto single = MultiGroup::from_groups({cyclic_group(5)});
    CHECK(same_edge_multiset(cayley_graph_multigroup(single, {{1, 4}}).graph, cycle_graph(5)));
    auto z4 = MultiGroup::from_groups({cyclic_group(4)});
    CHECK(is_multigroup_cayley_connected(z4, {{1, 3}}));

    CHECK_THROWS_AS(cayley_graph_multigroup(single, {{1}}), InvalidInput);
    CHECK_THROWS_AS(cayley_graph_multigroup(z4, {{2}}), InvalidInput);  // does not generate
}

TEST_CASE("multigroup cayley properties on random instances") {
    gen::Rng rng(21);
    int tested = 0;
    while (tested < 150) {
        auto mg = gen::overlapping_multigroup(rng, 12, 3);
        std::vector<std::vector<int>> s;
        try {
            s = gen::connection_sets(rng, mg);
        } catch (const InvalidInput&) {
            continue;
        }
        ++tested;
        auto built = cayley_graph_multigroup(mg, s);
        CHECK(is_multigroup_cayley_connected(mg, s) == built.graph.is_connected());
        // union of the per-constituent Cayley graphs, deduplicated
        std::set<std::pair<int, int>> want;
        for (int i = 0; i < mg.operation_count(); ++i) {
            const auto& part = mg.constituent(i);
            std::vector<int> local;
            for (int x : s[i]) local.push_back(mg.local(i, x));
            const auto cay = cayley_graph(part.group, local);
            for (const auto& e : cay.edges())
                want.insert(std::minmax(part.members[e.tail], part.members[e.head]));
        }
        std::set<std::pair<int, int>> got;
        for (const auto& e : built.graph.edges()) got.insert(std::minmax(e.tail, e.head));
        CHECK(got == want);
        CHECK(static_cast<int>(got.size()) == built.graph.edge_count());
        CHECK(built.provenance.size() == got.size());
    }
}

TEST_CASE("edge connectivity of equal-constituent multigroup Cayley graphs") {
    gen::Rng rng(23);
    for (const auto& g : {cyclic_group(3), cyclic_group(4), cyclic_group(5), dihedral_group(3)}) {
        for (int n = 1; n <= 3; ++n) {
            auto mg = gen::equal_multigroup(rng, g, n, true);
            auto s = gen::connection_sets(rng, mg);
            auto built = cayley_graph_multigroup(mg, s);
            // one parallel copy per operation that produced the edge
            Multigraph layered(built.graph.vertex_count());
            for (int e = 0; e < built.graph.edge_count(); ++e)
                for (std::size_t k = 0; k < built.provenance[e].size(); ++k)
                    layered.add_edge(built.graph.edge(e).tail, built.graph.edge(e).head);
            CHECK(edge_connectivity(layered) >= 2 * n);
        }
    }
}

TEST_CASE("cayley factorization") {
    auto z5 = cyclic_group(5);
    auto f5 = factorize_cayley(z5, ints({1, 4}));
    REQUIRE(f5.size() == 1);
    CHECK_FALSE(f5[0].is_matching);
    CHECK(f5[0].edges.size() == 5);

    auto z2 = factorize_cayley(cyclic_group(2), ints({1}));
    REQUIRE(z2.size() == 1);
    CHECK(z2[0].is_matching);

    auto z6 = cyclic_group(6);
    auto s6 = ints({1, 5, 3});
    auto f6 = factorize_cayley(z6, s6);
    REQUIRE(f6.size() == 2);
    auto cay = cayley_graph(z6, s6);
    int twos = 0, ones = 0;
    for (const auto& f : f6) {
        if (f.is_matching) {
            ++ones;
            CHECK(is_perfect_matching(cay, f.edges));
            CHECK(f.edges.size() == 3);
        } else {
            ++twos;
            CHECK(is_two_factor(cay, f.edges));
            CHECK(f.edges.size() == 6);
        }
    }
    CHECK(twos == 1);
    CHECK(ones == 1);

    SUBCASE("factors partition the edge set") {
        for (const auto& g : gen::group_catalogue(12)) {
            std::vector<int> s;
            for (int x = 1; x < g.order(); ++x) s.push_back(x);
            auto cay = cayley_graph(g, s);
            std::vector<int> all;
            for (const auto& f : factorize_cayley(g, s)) {
                CHECK((f.is_matching ? is_perfect_matching(cay, f.edges) : is_two_factor(cay, f.edges)));
                all.insert(all.end(), f.edges.begin(), f.edges.end());
            }
            std::sort(all.begin(), all.end());
            CHECK(static_cast<int>(all.size()) == cay.edge_count());
            CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
        }
    }
}

TEST_CASE("joint numbers") {
    auto z3 = cyclic_group(3);
    auto disjoint =
        MultiGroup::from_groups({relabelled(z3, {"a0", "a1", "a2"}), relabelled(z3, {"b0", "b1", "b2"})});
    CHECK(joint_number(disjoint, *disjoint.index_of("a1"), *disjoint.index_of("b1")) == 0);
    auto single = MultiGroup::from_groups({z3});
    for (int g = 0; g < 3; ++g)
        for (int h = 0; h < 3; ++h) CHECK(joint_number(single, g, h) == 1);
    gen::Rng rng(1);
    auto twice = gen::equal_multigroup(rng, z3, 2, true);
    CHECK(joint_number(twice, 1, 2) == 2);
    // Π̃ over an equal-set pair: each operation contributes Π[g, g∘h] = 2
    CHECK(joint_sum(twice, 1, 2) == 4);
    CHECK_THROWS_AS(joint_number(single, 0, 3), InvalidInput);
}
