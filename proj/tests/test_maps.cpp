#include <algorithm>
#include <set>

#include "doctest.h"
#include "msg/error.hpp"
#include "msg/generators.hpp"
#include "msg/map.hpp"

using namespace msg;

namespace {

RotationSystem plain_rotation(const Multigraph& g, std::vector<int> lambda = {}) {
    if (lambda.empty()) lambda.assign(static_cast<std::size_t>(g.edge_count()), 0);
    return normalized(RotationSystem{g, g.incident_semi_arcs(), std::move(lambda)});
}

CombinatorialMap loop_on_sphere() { return map_from_rotation(plain_rotation(bouquet(1))); }

CombinatorialMap tetrahedron() {
    return map_from_rotation(rotation_from_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}));
}

bool is_interval(const std::map<int, long long>& hist) {
    if (hist.empty()) return true;
    return hist.rbegin()->first - hist.begin()->first + 1 == static_cast<int>(hist.size());
}

}  // namespace

TEST_CASE("map axioms") {
    auto klein = klein_dipole_map();
    CHECK(validate_map(klein).ok);

    // on a single edge α and β already act transitively, so P = 1 is K_2 on the sphere
    CHECK(validate_map(CombinatorialMap(1, identity_perm(4))).ok);
    auto stuck = validate_map(CombinatorialMap(2, identity_perm(8)));
    CHECK_FALSE(stuck.ok);
    CHECK(stuck.axiom == "iii");

    // P x = αx on the cycle 1 → α → β → αβ
    auto bad = validate_map(CombinatorialMap(1, Perm{1, 2, 3, 0}));
    CHECK_FALSE(bad.ok);
    CHECK(bad.axiom == "i");

    // a P that is not conjugated to its inverse by α
    auto skew = validate_map(CombinatorialMap(2, Perm{4, 1, 2, 3, 0, 5, 6, 7}));
    CHECK_FALSE(skew.ok);
    CHECK(skew.axiom == "ii");
    CHECK(skew.witness >= 0);

    CHECK_THROWS_AS(CombinatorialMap(1, Perm{0, 0, 1, 2}), InvalidInput);
}

TEST_CASE("orbits and characteristic") {
    auto klein = klein_dipole_map();
    auto o = orbits(klein);
    CHECK(o.vertices.size() == 2);
    CHECK(o.edges == 4);
    CHECK(o.faces.size() == 2);
    CHECK(euler_characteristic(klein) == 0);
    CHECK_FALSE(is_orientable(klein));
    CHECK(genus(klein).genus == 2);

    auto loop = loop_on_sphere();
    auto lo = orbits(loop);
    CHECK(lo.vertices.size() == 1);
    CHECK(lo.edges == 1);
    CHECK(lo.faces.size() == 2);
    CHECK(euler_characteristic(loop) == 2);

    auto tet = tetrahedron();
    CHECK(euler_characteristic(tet) == 2);
    CHECK(orbits(tet).faces.size() == 4);
    CHECK(is_orientable(tet));
}

TEST_CASE("rotation systems and maps") {
    auto projective = map_from_rotation(plain_rotation(bouquet(1), {1}));
    CHECK(orbits(projective).faces.size() == 1);
    CHECK(euler_characteristic(projective) == 1);
    CHECK(genus(projective).genus == 1);
    CHECK_FALSE(genus(projective).orientable);

    gen::Rng rng(61);
    for (int k = 0; k < 80; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 1, 5), gen::uniform(rng, 1, 5), true);
        auto rs = gen::rotation_system(rng, g, gen::coin(rng));
        auto m = map_from_rotation(rs);
        REQUIRE(validate_map(m).ok);
        CHECK(rotation_from_map(m, g) == rs);
        auto o = orbits(m);
        CHECK(static_cast<int>(o.vertices.size()) == g.vertex_count());
        CHECK(euler_characteristic(m) <= 2);
        const int chi = static_cast<int>(o.vertices.size()) - o.edges + static_cast<int>(o.faces.size());
        CHECK(chi == euler_characteristic(m));
        if (std::all_of(rs.lambda.begin(), rs.lambda.end(), [](int l) { return l == 0; })) CHECK(is_orientable(m));
    }
}

TEST_CASE("edge twisting") {
    auto loop = loop_on_sphere();
    auto twisted = edge_twist(loop, 0);
    CHECK(euler_characteristic(twisted) == 1);
    CHECK(edge_twist(twisted, 0) == loop);

    auto tet = tetrahedron();
    for (int e = 0; e < 6; ++e) {
        auto t = edge_twist(tet, e);
        CHECK_FALSE(is_orientable(t));
        CHECK(orbits(t).faces.size() == 3);
    }
    CHECK_THROWS_AS(edge_twist(tet, 6), InvalidInput);

    gen::Rng rng(67);
    for (int k = 0; k < 60; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 2, 5), gen::uniform(rng, 0, 4), true);
        auto m = map_from_rotation(gen::rotation_system(rng, g, true));
        const int e = gen::uniform(rng, 0, g.edge_count() - 1);
        auto t = edge_twist(m, e);
        CHECK(validate_map(t).ok);
        CHECK(std::abs(static_cast<int>(orbits(t).faces.size()) - static_cast<int>(orbits(m).faces.size())) <= 1);
        CHECK(edge_twist(t, e) == m);
        CHECK(dual_map(dual_map(m)) == m);
    }
}

TEST_CASE("embedding census") {
    auto k4 = enumerate_embeddings(complete_graph(4));
    CHECK(k4.orientable_total == 16);
    CHECK(k4.nonorientable_total == 112);
    CHECK(k4.orientable.begin()->first == 0);
    CHECK(k4.orientable.rbegin()->first == 1);
    CHECK(embedding_count(complete_graph(4)) == 128);
    CHECK_THROWS_AS(enumerate_embeddings(complete_graph(5), 1000), BudgetExceeded);

    gen::Rng rng(71);
    for (int k = 0; k < 25; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 2, 5), gen::uniform(rng, 0, 4), true);
        if (embedding_count(g) > 20000) continue;
        auto census = enumerate_embeddings(g);
        CHECK(census.total() == embedding_count(g));
        CHECK(is_interval(census.orientable));
        CHECK(is_interval(census.nonorientable));
        if (g.betti() > 0) CHECK(census.nonorientable.rbegin()->first == g.betti());
        CHECK(census.orientable.rbegin()->first == xuong_max_genus(g));
        CHECK(nebesky_max_genus(g) == xuong_max_genus(g));
    }
}

TEST_CASE("genus formulas") {
    CHECK(genus_complete(GenusKind::orientable, 7) == 1);
    CHECK(genus_complete(GenusKind::nonorientable, 7) == 3);
    CHECK(genus_complete(GenusKind::max_orientable, 4) == 1);
    CHECK(genus_complete(GenusKind::max_orientable, 5) == 3);
    CHECK(genus_complete_bipartite(GenusKind::orientable, 3, 3) == 1);
    CHECK(genus_complete_bipartite(GenusKind::nonorientable, 3, 3) == 1);
    CHECK_THROWS_AS(genus_complete(GenusKind::orientable, 2), InvalidInput);
    // closed forms against enumeration
    auto k5 = enumerate_embeddings(complete_graph(5));
    CHECK(k5.orientable.begin()->first == genus_complete(GenusKind::orientable, 5));
    CHECK(k5.nonorientable.begin()->first == genus_complete(GenusKind::nonorientable, 5));
    CHECK(k5.orientable.rbegin()->first == genus_complete(GenusKind::max_orientable, 5));
}

TEST_CASE("maximum genus") {
    CHECK(xuong_max_genus(complete_graph(4)) == 1);
    CHECK(nebesky_max_genus(complete_graph(4)) == 1);
    CHECK(xuong_max_genus(path_graph(5)) == 0);
    CHECK(nebesky_max_genus(path_graph(5)) == 0);
    CHECK(xuong_max_genus(cycle_graph(5)) == 0);
    CHECK(nebesky_max_genus(complete_graph(5)) == 3);
    CHECK(xuong_max_genus(complete_graph(5)) == 3);
    CHECK_THROWS_AS(nebesky_max_genus(complete_graph(7)), BudgetExceeded);
}

TEST_CASE("rooted maps") {
    CHECK(rooted_map_count(bouquet(1)) == 2);
    CHECK(rooted_map_count(bouquet(2)) == 12);
    CHECK(rooted_map_count(complete_graph(4)) == 64);
    for (const auto& g : {bouquet(1), bouquet(2), complete_graph(3), complete_graph(4)})
        CHECK(rooted_map_count_exhaustive(g) == rooted_map_count(g));
}

TEST_CASE("map lifting") {
    auto z2 = MultiGroup::from_groups({cyclic_group(2)});
    MapVoltage mv{loop_on_sphere(), z2, {1}};
    auto lifted = lift_map(mv);
    CHECK(lifted.vertices == 2);
    CHECK(lifted.edges == 2);
    CHECK(lifted.faces == 2);
    CHECK(lifted.euler_characteristic() == 2);
    const auto chi = lift_chi_formula(mv);
    CHECK(chi.numerator() == 2);
    CHECK(chi.denominator() == 1);

    MapVoltage flat{tetrahedron(), z2, std::vector<int>(6, 0)};
    auto copies = lift_map(flat);
    CHECK_FALSE(copies.checks[0].ok);
    CHECK(copies.checks[0].axiom == "iii");

    // ψ(βx) must be the inverse of ψ(x)
    auto z3 = MultiGroup::from_groups({cyclic_group(3)});
    CHECK_THROWS_AS(map_voltage_from_cells(loop_on_sphere(), z3, {1, 1, 1, 1}), InvalidInput);
    auto ok = map_voltage_from_cells(loop_on_sphere(), z3, {1, 1, 2, 2});
    CHECK(ok.edge_voltage == std::vector{1});

    gen::Rng rng(73);
    for (int k = 0; k < 60; ++k) {
        auto mg = gen::equal_multigroup(rng, gen::group_catalogue(6)[static_cast<std::size_t>(gen::uniform(rng, 0, 5))], gen::uniform(rng, 1, 3), false);
        auto base = gen::connected_graph(rng, gen::uniform(rng, 1, 4), gen::uniform(rng, 1, 3), true);
        auto mvr = gen::map_voltage(rng, map_from_rotation(gen::rotation_system(rng, base, true)), mg);
        auto l = lift_map(mvr);
        auto f = lift_chi_formula(mvr);
        CHECK(f.denominator() == 1);
        CHECK(f.numerator() == l.euler_characteristic());
        bool gen_all = true;
        for (int i = 0; i < mvr.groups.operation_count(); ++i) gen_all &= face_voltages_generate(mvr, i);
        if (gen_all)
            for (const auto& c : l.checks) CHECK(c.ok);
    }
}

TEST_CASE("platonic solids") {
    auto solids = platonic_solids();
    REQUIRE(solids.size() == 5);
    std::set<std::pair<int, int>> kinds;
    for (const auto& s : solids) {
        kinds.insert({s.valency, s.face_length});
        CHECK(validate_map(s.map).ok);
        CHECK(euler_characteristic(s.map) == 2);
        auto o = orbits(s.map);
        for (const auto& f : o.faces) CHECK(static_cast<int>(f.size()) == s.face_length);
        if (s.valency == 3 && s.face_length == 4) {
            CHECK(o.vertices.size() == 8);
            CHECK(o.edges == 12);
            CHECK(o.faces.size() == 6);
        }
        if (s.valency == 3 && s.face_length == 5) CHECK(o.vertices.size() == 20);
    }
    CHECK(kinds == std::set<std::pair<int, int>>{{3, 3}, {3, 4}, {3, 5}, {4, 3}, {5, 3}});
}
