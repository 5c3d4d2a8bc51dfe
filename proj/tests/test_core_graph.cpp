#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "msg/error.hpp"
#include "msg/generators.hpp"
#include "msg/graph.hpp"

using namespace msg;

namespace {

// Brute force: some labelled simple graph on p vertices has exactly this valency sequence.
bool graphical_by_enumeration(const std::vector<int>& seq) {
    const int p = static_cast<int>(seq.size());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
        std::vector<int> deg(static_cast<std::size_t>(p), 0);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (mask >> k & 1) ++deg[pairs[k].first], ++deg[pairs[k].second];
        if (deg == seq) return true;
    }
    return false;
}

std::vector<int> edge_range(const Multigraph& g) {
    std::vector<int> e(static_cast<std::size_t>(g.edge_count()));
    std::iota(e.begin(), e.end(), 0);
    return e;
}

// Edge ids of a vertex-sequence circuit in a simple graph.
std::vector<int> circuit_edges(const Multigraph& g, const std::vector<int>& cyc) {
    std::vector<int> out;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
        int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto& ed = g.edge(e);
            if ((ed.tail == a && ed.head == b) || (ed.tail == b && ed.head == a)) {
                out.push_back(e);
                break;
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("multigraph invariants") {
    gen::Rng rng(7);
    for (int k = 0; k < 50; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 1, 7), gen::uniform(rng, 0, 6), true);
        auto val = g.valencies();
        CHECK(std::accumulate(val.begin(), val.end(), 0) == 2 * g.edge_count());
        CHECK(g.betti() == g.edge_count() - g.vertex_count() + 1);
        int semi = 0;
        for (const auto& at : g.incident_semi_arcs()) semi += static_cast<int>(at.size());
        CHECK(semi == 2 * g.edge_count());
    }
    CHECK_THROWS_AS(Multigraph(2, {{0, 2}}), InvalidInput);
}

TEST_CASE("graphical sequences") {
    CHECK(is_graphical_hh(std::vector{1, 1}));
    CHECK(is_graphical_eg(std::vector{1, 1}));
    CHECK_FALSE(is_graphical_hh(std::vector{3, 1, 1}));
    CHECK_FALSE(is_graphical_eg(std::vector{3, 1, 1}));
    CHECK(is_graphical_hh(std::vector{3, 3, 2, 2, 2}));
    CHECK(is_graphical_eg(std::vector{3, 3, 2, 2, 2}));
    CHECK(graphical_by_enumeration({3, 3, 2, 2, 2}));
    CHECK(is_graphical_hh(std::vector{2, 2, 3, 2, 3}));  // unsorted input is fine
    CHECK_THROWS_AS(is_graphical_hh(std::vector<int>{}), InvalidInput);

    SUBCASE("both criteria match enumeration for p <= 5") {
        for (int p = 1; p <= 5; ++p) {
            std::vector<int> seq(static_cast<std::size_t>(p), 0);
            for (;;) {
                const bool truth = graphical_by_enumeration(seq);
                CHECK(is_graphical_hh(seq) == truth);
                CHECK(is_graphical_eg(seq) == truth);
                if (truth) {
                    auto g = realize_sequence(seq);
                    REQUIRE(g.has_value());
                    CHECK(g->is_simple());
                    CHECK(g->valencies() == seq);
                }
                int k = 0;
                while (k < p && ++seq[k] > p - 1) seq[k++] = 0;
                if (k == p) break;
            }
        }
    }
    SUBCASE("random long sequences agree") {
        gen::Rng rng(11);
        for (int k = 0; k < 500; ++k) {
            const int p = gen::uniform(rng, 6, 20);
            std::vector<int> seq;
            for (int i = 0; i < p; ++i) seq.push_back(gen::uniform(rng, 0, p - 1));
            CHECK(is_graphical_hh(seq) == is_graphical_eg(seq));
        }
    }
}

TEST_CASE("adjacency matrix") {
    CHECK(adjacency_matrix(empty_graph(3)) == Eigen::MatrixXi::Zero(3, 3));
    Eigen::MatrixXi k3 = Eigen::MatrixXi::Ones(3, 3);
    k3.diagonal().setZero();
    CHECK(adjacency_matrix(complete_graph(3)) == k3);
    // four vertices with a loop each, double edges v2v3 and v4v1
    Multigraph g(4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {3, 0}, {3, 0}});
    Eigen::MatrixXi want(4, 4);
    want << 1, 1, 0, 2, 1, 1, 2, 0, 0, 2, 1, 1, 2, 0, 1, 1;
    CHECK(adjacency_matrix(g) == want);
}

TEST_CASE("eccentricity") {
    auto c6 = eccentricity_profile(cycle_graph(6));
    CHECK(c6.values == std::vector{3});
    CHECK(c6.radius == 3);
    CHECK(c6.diameter == 3);
    auto p5 = eccentricity_profile(path_graph(5));
    CHECK(p5.values == std::vector{2, 3, 4});
    CHECK(p5.multiplicity.at(2).size() == 1);
    CHECK(eccentricity_profile(complete_graph(4)).values == std::vector{1});
    CHECK_THROWS_AS(eccentricity_profile(empty_graph(2)), InvalidInput);

    CHECK(validate_ecc_value_sequence(std::vector{2, 3}));
    CHECK_FALSE(validate_ecc_value_sequence(std::vector{1, 3}));
    CHECK_FALSE(validate_ecc_value_sequence(std::vector{2, 5}));
    CHECK_THROWS_AS(validate_ecc_value_sequence(std::vector{3, 2}), InvalidInput);

    CHECK(same_edge_multiset(construct_ecc_witness(3, 1), cycle_graph(6)));
    for (int r = 1; r <= 5; ++r)
        for (int s = 1; s <= r; ++s) {
            std::vector<int> want;
            for (int v = r; v <= r + s - 1; ++v) want.push_back(v);
            CHECK(eccentricity_profile(construct_ecc_witness(r, s)).values == want);
        }
    CHECK_THROWS_AS(construct_ecc_witness(2, 3), InvalidInput);

    SUBCASE("value sequences of random graphs are valid; only the centre can be a singleton") {
        gen::Rng rng(3);
        for (int k = 0; k < 200; ++k) {
            auto g = gen::connected_graph(rng, gen::uniform(rng, 2, 8), gen::uniform(rng, 0, 8), false);
            auto prof = eccentricity_profile(g);
            CHECK(validate_ecc_value_sequence(prof.values));
            for (const auto& [l, vs] : prof.multiplicity)
                if (l > prof.radius) CHECK(vs.size() >= 2);
        }
    }
}

TEST_CASE("hamiltonicity") {
    auto k4 = complete_graph(4);
    CHECK(brute_force_hamiltonian(k4).has_value());
    CHECK_FALSE(brute_force_hamiltonian(complete_bipartite(2, 3)).has_value());
    CHECK_FALSE(brute_force_hamiltonian(path_graph(3)).has_value());
    CHECK(is_hamiltonian_circuit_via_cuts(k4, circuit_edges(k4, {0, 1, 2, 3})));
    CHECK_FALSE(is_hamiltonian_circuit_via_cuts(k4, circuit_edges(k4, {0, 1, 2})));
    auto c5 = cycle_graph(5);
    CHECK(is_hamiltonian_circuit_via_cuts(c5, edge_range(c5)));
    CHECK_THROWS_AS(is_hamiltonian_circuit_via_cuts(k4, std::vector{0, 1}), InvalidInput);

    SUBCASE("cut criterion agrees with spanning on every circuit of small graphs") {
        gen::Rng rng(5);
        for (int k = 0; k < 30; ++k) {
            auto g = gen::connected_graph(rng, gen::uniform(rng, 2, 6), gen::uniform(rng, 1, 6), true);
            if (g.edge_count() > 12) continue;
            for (unsigned mask = 1; mask < (1u << g.edge_count()); ++mask) {
                std::vector<int> sub;
                for (int e = 0; e < g.edge_count(); ++e)
                    if (mask >> e & 1) sub.push_back(e);
                if (!is_circuit(g, sub)) continue;
                CHECK(is_hamiltonian_circuit_via_cuts(g, sub) == spans_all_vertices(g, sub));
            }
        }
    }
}

TEST_CASE("closure") {
    CHECK(same_edge_multiset(closure(cycle_graph(4)), complete_graph(4)));
    CHECK(same_edge_multiset(closure(complete_graph(5)), complete_graph(5)));
    CHECK(same_edge_multiset(closure(path_graph(4)), path_graph(4)));
    CHECK_THROWS_AS(closure(bouquet(1)), InvalidInput);

    gen::Rng rng(9);
    for (int k = 0; k < 60; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 3, 8), gen::uniform(rng, 0, 8), false);
        auto c = closure(g);
        CHECK(brute_force_hamiltonian(c).has_value() == brute_force_hamiltonian(g).has_value());
        // relabelling first does not change the result up to the same relabelling
        Perm p = identity_perm(g.vertex_count());
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(same_edge_multiset(closure(relabel(g, p)), relabel(c, p)));
    }
}

TEST_CASE("odd complete decomposition") {
    for (int n = 1; n <= 5; ++n) {
        auto parts = decompose_complete_odd(n);
        REQUIRE(static_cast<int>(parts.size()) == n);
        std::set<std::pair<int, int>> seen;
        for (const auto& cyc : parts) {
            CHECK(static_cast<int>(cyc.size()) == 2 * n + 1);
            CHECK(std::set<int>(cyc.begin(), cyc.end()).size() == cyc.size());
            for (std::size_t k = 0; k < cyc.size(); ++k) {
                auto e = std::minmax(cyc[k], cyc[(k + 1) % cyc.size()]);
                CHECK(seen.insert(e).second);
            }
        }
        CHECK(static_cast<int>(seen.size()) == n * (2 * n + 1));
    }
}

TEST_CASE("splitting operator") {
    for (const auto& base : {complete_graph(4), cycle_graph(3)}) {
        for (int u = 0; u < base.vertex_count(); ++u) {
            auto h = splitting_operator(base, u);
            CHECK(h.vertex_count() == splitting_vertex_count(base, u));
            CHECK(h.is_connected());
            if (h.vertex_count() <= 12) CHECK_FALSE(brute_force_hamiltonian(h).has_value());
        }
    }
    CHECK_THROWS_AS(splitting_operator(cycle_graph(3), 3), InvalidInput);
}

TEST_CASE("union, join, product") {
    auto kbar = [](int n) { return empty_graph(n); };
    CHECK(same_edge_multiset(graph_join(kbar(2), kbar(3)), complete_bipartite(2, 3)));
    auto prod = cartesian_product(cycle_graph(3), cycle_graph(3));
    CHECK(prod.vertex_count() == 9);
    CHECK(prod.edge_count() == 18);
    for (int d : prod.valencies()) CHECK(d == 4);
    auto g = complete_graph(4);
    CHECK(same_edge_multiset(graph_union(g, g), g));
}

TEST_CASE("semi-arc automorphisms") {
    CHECK(semi_arc_automorphism_order(bouquet(1)) == 2);
    CHECK(semi_arc_automorphism_order(bouquet(2)) == 8);
    CHECK(semi_arc_automorphism_order(complete_graph(3)) == 6);
    CHECK(semi_arc_automorphism_order(dipole(0, 2, 0)) == 4);
    SearchLimits tight{.automorphism_semi_arcs = 4};
    CHECK_THROWS_AS(semi_arc_automorphism_order(complete_graph(3), tight), BudgetExceeded);
    // loopless graphs: equal to the vertex automorphism group when the action is faithful
    gen::Rng rng(13);
    for (int k = 0; k < 30; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 3, 5), gen::uniform(rng, 0, 2), false);
        if (2 * g.edge_count() > 10) continue;
        CHECK(semi_arc_automorphism_order(g) == vertex_automorphism_order(g));
    }
}

TEST_CASE("bouquet and dipole decomposition") {
    auto b3 = decompose_bouquets_dipoles(bouquet(3));
    REQUIRE(b3.size() == 1);
    CHECK(b3[0].kind == EdgePart::Kind::bouquet);
    CHECK(b3[0].edges.size() == 3);
    auto k2 = decompose_bouquets_dipoles(complete_graph(2));
    REQUIRE(k2.size() == 1);
    CHECK(k2[0].kind == EdgePart::Kind::dipole);
    auto k3 = decompose_bouquets_dipoles(complete_graph(3));
    CHECK(k3.size() == 3);

    gen::Rng rng(17);
    for (int k = 0; k < 40; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 1, 6), gen::uniform(rng, 0, 8), true);
        std::vector<int> covered;
        for (const auto& part : decompose_bouquets_dipoles(g)) {
            for (int e : part.edges) {
                covered.push_back(e);
                const auto& ed = g.edge(e);
                if (part.kind == EdgePart::Kind::bouquet) {
                    CHECK(ed.is_loop());
                    CHECK(ed.tail == part.vertices[0]);
                } else {
                    CHECK_FALSE(ed.is_loop());
                    CHECK(std::minmax(ed.tail, ed.head) == std::minmax(part.vertices[0], part.vertices[1]));
                }
            }
        }
        std::sort(covered.begin(), covered.end());
        CHECK(covered == edge_range(g));
    }
}
