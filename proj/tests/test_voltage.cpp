#include <algorithm>
#include <set>

#include "doctest.h"
#include "msg/error.hpp"
#include "msg/generators.hpp"
#include "msg/voltage.hpp"

using namespace msg;

namespace {

MultiGroup one(const FiniteGroup& g) { return MultiGroup::from_groups({g}); }

// Z_2 twice over {0, 1}: the usual table, and the one with 1 as identity.
MultiGroup twin_z2() {
    auto usual = cyclic_group(2);
    auto swapped = relabelled(usual, {"1", "0"});
    return MultiGroup::from_groups({usual, swapped});
}

bool isomorphic(const Multigraph& a, const Multigraph& b) {
    return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
           find_isomorphism(a, b).has_value();
}

LabelledAction deck_action(const MultiVoltage1& mv, const LiftedGraph& lift, int op) {
    LabelledAction act;
    for (int a : mv.groups.constituent(op).members) {
        act.labels.push_back(mv.groups.universe()[a]);
        act.perms.push_back(left_subaction(mv, lift, op, a));
    }
    return act;
}

}  // namespace

TEST_CASE("type-1 lifting") {
    MultiVoltage1 loop3{bouquet(1), one(cyclic_group(3)), {1}};
    auto c3 = lift_type1(loop3);
    CHECK(c3.graph.vertex_count() == 3);
    CHECK(c3.graph.edge_count() == 3);
    CHECK(isomorphic(c3.graph, cycle_graph(3)));

    MultiVoltage1 twin{bouquet(1), twin_z2(), {1}};
    REQUIRE(twin.groups.operation_count() == 2);
    // one lifted edge per (fibre, operation): a 2-cycle under the first table, two loops under the second
    auto lifted = lift_type1(twin);
    CHECK(lifted.graph.vertex_count() == 2);
    CHECK(lifted.graph.edge_count() == 4);
    CHECK(lifted.sublift(0).is_simple() == false);
    const auto first = lifted.sublift(0), second = lifted.sublift(1);
    for (const auto& e : first.edges()) CHECK_FALSE(e.is_loop());
    for (const auto& e : second.edges()) CHECK(e.is_loop());

    auto base = complete_graph(4);
    MultiVoltage1 trivial{base, one(cyclic_group(3)), std::vector<int>(6, 0)};
    auto copies = lift_type1(trivial);
    CHECK(copies.graph.component_count() == 3);
    CHECK(copies.graph.edge_count() == 18);

    SUBCASE("fibres and projection") {
        gen::Rng rng(31);
        for (int k = 0; k < 40; ++k) {
            auto mg = gen::overlapping_multigroup(rng, 8, 3);
            auto mv = gen::voltage1(rng, gen::connected_graph(rng, gen::uniform(rng, 1, 4), 2, true), mg);
            auto lift = lift_type1(mv);
            CHECK(lift.graph.vertex_count() == mv.base.vertex_count() * mv.groups.universe_size());
            for (int e = 0; e < lift.graph.edge_count(); ++e) {
                const auto& o = lift.edge_origin[e];
                const auto& be = mv.base.edge(o.base_edge);
                CHECK(lift.vertex_label[lift.graph.edge(e).tail].first == be.tail);
                CHECK(lift.vertex_label[lift.graph.edge(e).head].first == be.head);
                CHECK(mv.groups.contains(o.operation, o.fiber));
            }
            int summed = 0;
            for (int i = 0; i < mv.groups.operation_count(); ++i) summed += lift.sublift(i).edge_count();
            CHECK(summed == lift.graph.edge_count());
        }
    }
}

TEST_CASE("type-2 lifting") {
    // K_2 with u in Z_2 and v in Z_3 sharing only the identity
    auto z2 = relabelled(cyclic_group(2), {"e", "a"});
    auto z3 = relabelled(cyclic_group(3), {"e", "b", "c"});
    auto mg = MultiGroup::from_groups({z2, z3});
    MultiVoltage2 k2{complete_graph(2), mg, {0, 1}, {*mg.index_of("e")}};
    auto lifted = lift_type2(k2);
    CHECK(lifted.graph.vertex_count() == 5);

    auto z4 = relabelled(cyclic_group(4), {"e", "p", "q", "r"});
    auto mg43 = MultiGroup::from_groups({z4, z3});
    Multigraph seven(7);
    for (int v = 0; v < 6; ++v) seven.add_edge(v, v + 1);
    MultiVoltage2 big{seven, mg43, {0, 0, 0, 0, 1, 1, 1}, std::vector<int>(6, *mg43.index_of("e"))};
    CHECK(lift_type2(big).graph.vertex_count() == 4 * 4 + 3 * 3);

    SUBCASE("a single class is a type-1 lift") {
        gen::Rng rng(37);
        for (int k = 0; k < 20; ++k) {
            auto g = gen::group_catalogue(6)[static_cast<std::size_t>(gen::uniform(rng, 0, 5))];
            auto base = gen::connected_graph(rng, gen::uniform(rng, 1, 4), 2, true);
            auto mv1 = gen::voltage1(rng, base, one(g));
            MultiVoltage2 mv2{base, one(g), std::vector<int>(static_cast<std::size_t>(base.vertex_count()), 0), mv1.psi};
            auto a = lift_type1(mv1), b = lift_type2(mv2);
            CHECK(a.graph.vertex_count() == b.graph.vertex_count());
            CHECK(same_edge_multiset(a.graph, b.graph));
        }
    }
}

TEST_CASE("walk lifting") {
    gen::Rng rng(41);
    auto z3 = cyclic_group(3);
    auto pair = gen::equal_multigroup(rng, z3, 2, false);
    auto base = gen::connected_graph(rng, 3, 2, true);
    auto mv = gen::voltage1(rng, base, pair);
    auto lift = lift_type1(mv);
    auto w = gen::walk(rng, mv.base, 2);
    CHECK(lift_walk(mv, lift, w, 0).size() == 4);

    MultiVoltage1 single{base, one(z3), mv.psi};
    auto single_lift = lift_type1(single);
    for (int a = 0; a < 3; ++a) CHECK(lift_walk(single, single_lift, w, a).size() == 1);

    // disjoint constituents: a fibre outside the group holding ψ of the first edge
    auto disjoint = MultiGroup::from_groups({relabelled(z3, {"a0", "a1", "a2"}), relabelled(z3, {"b0", "b1", "b2"})});
    MultiVoltage1 split{bouquet(1), disjoint, {*disjoint.index_of("a1")}};
    auto split_lift = lift_type1(split);
    CHECK(lift_walk(split, split_lift, std::vector{0}, *disjoint.index_of("b0")).empty());
    CHECK(count_walk_liftings(split, std::vector{0}, *disjoint.index_of("b0")) == 0);
    CHECK_THROWS_AS(lift_walk(mv, lift, std::vector{0, 0, 0, 99}, 0), InvalidInput);

    SUBCASE("n^k liftings over equal constituents") {
        for (int k = 0; k < 60; ++k) {
            const int n = gen::uniform(rng, 1, 3), len = gen::uniform(rng, 1, 5);
            auto mg = gen::equal_multigroup(rng, gen::group_catalogue(6)[static_cast<std::size_t>(gen::uniform(rng, 0, 5))], n, false);
            auto m = gen::voltage1(rng, gen::connected_graph(rng, gen::uniform(rng, 1, 4), 2, true), mg);
            auto l = lift_type1(m);
            auto wk = gen::walk(rng, m.base, len);
            long long want = 1;
            for (int j = 0; j < len; ++j) want *= n;
            const int fiber = gen::uniform(rng, 0, m.groups.universe_size() - 1);
            auto walks = lift_walk(m, l, wk, fiber);
            CHECK(static_cast<long long>(walks.size()) == want);
            for (const auto& lw : walks) {
                CHECK(lw.vertices.size() == wk.size() + 1);
                CHECK(lw.vertices.front() == l.vertex(m.base.semi_arc_vertex(wk.front()), fiber));
            }
        }
    }
}

TEST_CASE("homogeneous circuit liftings") {
    auto z3 = one(cyclic_group(3));
    auto k3 = complete_graph(3);
    auto find_edge = [&](int u, int v) {
        for (int e = 0; e < k3.edge_count(); ++e) {
            if (k3.edge(e).tail == u && k3.edge(e).head == v) return semi_arc(e, 0);
            if (k3.edge(e).tail == v && k3.edge(e).head == u) return semi_arc(e, 1);
        }
        return -1;
    };
    const std::vector<int> circuit{find_edge(0, 1), find_edge(1, 2), find_edge(2, 0)};

    MultiVoltage1 one_total{k3, z3, {0, 0, 0}};
    // voltage 1 on the semi-arc 0 → 1 only
    one_total.psi[static_cast<std::size_t>(semi_arc_edge(circuit[0]))] = semi_arc_end(circuit[0]) == 0 ? 1 : 2;
    auto h = circuit_homogeneous_liftings(one_total, circuit);
    REQUIRE(h.size() == 1);
    CHECK(h[0].order == 3);
    CHECK(h[0].count == 1);
    CHECK(h[0].length == 9);

    MultiVoltage1 zero_total{k3, z3, {0, 0, 0}};
    auto h0 = circuit_homogeneous_liftings(zero_total, circuit);
    CHECK(h0[0].count == 3);
    CHECK(h0[0].length == 3);

    MultiVoltage1 z6{bouquet(1), one(cyclic_group(6)), {3}};
    auto h6 = circuit_homogeneous_liftings(z6, std::vector{0});
    CHECK(h6[0].count == 3);
    CHECK(h6[0].length == 2);

    auto disjoint = MultiGroup::from_groups({relabelled(cyclic_group(2), {"a", "b"}), relabelled(cyclic_group(2), {"a", "c"})});
    MultiVoltage1 unequal{bouquet(1), disjoint, {0}};
    CHECK_THROWS_AS(circuit_homogeneous_liftings(unequal, std::vector{0}), InvalidInput);

    SUBCASE("formula matches the orbits of the lift") {
        gen::Rng rng(43);
        for (int k = 0; k < 60; ++k) {
            auto mg = gen::equal_multigroup(rng, gen::group_catalogue(8)[static_cast<std::size_t>(gen::uniform(rng, 0, 6))], gen::uniform(rng, 1, 3), false);
            auto [g, c] = gen::graph_with_circuit(rng, gen::uniform(rng, 1, 4), gen::uniform(rng, 0, 2));
            auto mv = gen::voltage1(rng, g, mg);
            auto lift = lift_type1(mv);
            for (const auto& row : circuit_homogeneous_liftings(mv, c)) {
                auto orbits = circuit_lift_orbits(mv, lift, c, row.operation);
                CHECK(orbits == std::vector<int>(static_cast<std::size_t>(row.count), row.order));
            }
        }
    }
}

TEST_CASE("left subactions") {
    MultiVoltage1 loop3{bouquet(1), one(cyclic_group(3)), {1}};
    auto lift = lift_type1(loop3);
    CHECK(left_subaction(loop3, lift, 0, 0) == identity_perm(3));
    auto g1 = left_subaction(loop3, lift, 0, 1);
    CHECK(cycles(g1).size() == 1);
    CHECK_THROWS_AS(left_subaction(loop3, lift, 0, 5), InvalidInput);

    gen::Rng rng(47);
    for (int k = 0; k < 30; ++k) {
        auto mg = gen::overlapping_multigroup(rng, 8, 3);
        auto mv = gen::voltage1(rng, gen::connected_graph(rng, gen::uniform(rng, 1, 3), 2, true), mg);
        auto l = lift_type1(mv);
        for (int i = 0; i < mv.groups.operation_count(); ++i) {
            auto sub = l.sublift(i);
            std::set<Perm> distinct;
            for (int g : mv.groups.constituent(i).members) {
                auto p = left_subaction(mv, l, i, g);
                CHECK(is_vertex_automorphism(sub, p));
                distinct.insert(p);
                if (g != mv.groups.identity(i))
                    for (int x = 0; x < l.graph.vertex_count(); ++x)
                        if (mv.groups.contains(i, l.vertex_label[x].second)) CHECK(p[x] != x);
            }
            CHECK(static_cast<int>(distinct.size()) == mv.groups.constituent(i).group.order());
        }
    }
}

TEST_CASE("quotient graphs") {
    auto c6 = cycle_graph(6);
    std::vector<Perm> rot2;
    for (int s : {0, 2, 4}) {
        Perm p(6);
        for (int v = 0; v < 6; ++v) p[v] = (v + s) % 6;
        rot2.push_back(p);
    }
    auto q = quotient_graph(c6, rot2);
    CHECK(q.graph.vertex_count() == 2);
    CHECK(q.graph.edge_count() == 2);

    auto k4 = complete_graph(4);
    auto same = quotient_graph(k4, {identity_perm(4)});
    CHECK(same_edge_multiset(same.graph, k4));

    // ten vertices, two Z_5 orbits: the lift of a dipole-with-loop style base
    MultiVoltage1 mv{Multigraph(2, {{0, 0}, {0, 1}, {1, 1}}), one(cyclic_group(5)), {1, 0, 2}};
    auto lift = lift_type1(mv);
    auto q5 = quotient_graph(lift.graph, deck_action(mv, lift, 0).perms);
    CHECK(q5.graph.vertex_count() == 2);
    CHECK(isomorphic(q5.graph, mv.base));

    Perm not_auto{1, 0, 2, 3, 4, 5};
    CHECK_THROWS_AS(quotient_graph(c6, {identity_perm(6), not_auto}), InvalidInput);
}

TEST_CASE("voltage reconstruction") {
    MultiVoltage1 loop3{bouquet(1), one(cyclic_group(3)), {1}};
    auto lift = lift_type1(loop3);
    std::vector<std::vector<int>> classes{{0, 1, 2}};
    auto rec = reconstruct_voltage_from_action(lift.graph, classes, {deck_action(loop3, lift, 0)});
    CHECK(rec.voltage.base.vertex_count() == 1);
    CHECK(rec.voltage.base.edge_count() == 1);
    CHECK(rec.voltage.groups.constituent(0).group.element_order(
              rec.voltage.groups.local(0, rec.voltage.psi[0])) == 3);
    CHECK(lift_matches(rec.lift, rec.iso, lift.graph));

    auto k4 = complete_graph(4);
    LabelledAction trivial{{"e"}, {identity_perm(4)}};
    std::vector<std::vector<int>> all{{0, 1, 2, 3, 4, 5}};
    auto flat = reconstruct_voltage_from_action(k4, all, {trivial});
    CHECK(isomorphic(flat.voltage.base, k4));

    // a transposition fixes vertices, so the action is not fixed-free
    Perm swap01 = identity_perm(4);
    std::swap(swap01[0], swap01[1]);
    LabelledAction fixing{{"e", "s"}, {identity_perm(4), swap01}};
    CHECK_THROWS_AS(reconstruct_voltage_from_action(k4, all, {fixing}), InvalidInput);

    SUBCASE("round trips over random type-1 lifts") {
        gen::Rng rng(53);
        for (int k = 0; k < 40; ++k) {
            auto mg = gen::equal_multigroup(rng, gen::group_catalogue(6)[static_cast<std::size_t>(gen::uniform(rng, 0, 5))], gen::uniform(rng, 1, 3), true);
            auto mv = gen::voltage1(rng, gen::connected_graph(rng, gen::uniform(rng, 1, 4), gen::uniform(rng, 0, 3), true), mg);
            auto l = lift_type1(mv);
            std::vector<LabelledAction> actions;
            std::vector<std::vector<int>> cls(static_cast<std::size_t>(mv.groups.operation_count()));
            for (int i = 0; i < mv.groups.operation_count(); ++i) actions.push_back(deck_action(mv, l, i));
            for (int e = 0; e < l.graph.edge_count(); ++e) cls[l.edge_origin[e].operation].push_back(e);
            auto r = reconstruct_voltage_from_action(l.graph, cls, actions);
            CHECK(lift_matches(r.lift, r.iso, l.graph));
            CHECK(isomorphic(r.voltage.base, mv.base));
        }
    }

    SUBCASE("type-2 with a Z_4 class and a Z_3 class") {
        auto z4 = relabelled(cyclic_group(4), {"e", "p", "q", "r"});
        auto z3 = relabelled(cyclic_group(3), {"e", "b", "c"});
        auto mg = MultiGroup::from_groups({z4, z3});
        Multigraph base(7);
        for (int v = 0; v < 6; ++v) base.add_edge(v, v + 1);
        base.add_edge(0, 3);
        base.add_edge(4, 6);
        MultiVoltage2 mv{base, mg, {0, 0, 0, 0, 1, 1, 1}, {}};
        for (const auto& ed : base.edges()) {
            const bool both4 = mv.vertex_class[ed.tail] == 0 && mv.vertex_class[ed.head] == 0;
            const bool both3 = mv.vertex_class[ed.tail] == 1 && mv.vertex_class[ed.head] == 1;
            mv.tau.push_back(*mg.index_of(both4 ? "p" : both3 ? "b" : "e"));
        }
        auto l = lift_type2(mv);
        std::vector<int> lifted_class;
        for (const auto& [v, a] : l.vertex_label) lifted_class.push_back(mv.vertex_class[v]);
        std::vector<LabelledAction> actions;
        for (int c = 0; c < 2; ++c) {
            LabelledAction act;
            for (int g : mg.constituent(c).members) {
                Perm p = identity_perm(l.graph.vertex_count());
                for (int x = 0; x < l.graph.vertex_count(); ++x) {
                    auto [v, a] = l.vertex_label[x];
                    if (mv.vertex_class[v] == c) p[x] = l.vertex(v, *mg.op(c, g, a));
                }
                act.labels.push_back(mg.universe()[g]);
                act.perms.push_back(p);
            }
            actions.push_back(act);
        }
        auto r = reconstruct_type2_from_action(l.graph, lifted_class, actions);
        CHECK(r.voltage.base.vertex_count() == 7);
        CHECK(lift_matches(r.lift, r.iso, l.graph));
        CHECK(isomorphic(r.voltage.base, base));
    }
}

TEST_CASE("cayley graphs as bouquet lifts") {
    auto z4 = one(cyclic_group(4));
    auto c4 = cayley_as_bouquet_lift(z4, {{1, 3}});
    CHECK(c4.voltage.base.edge_count() == 2);
    CHECK(c4.isomorphic);
    CHECK(isomorphic(underlying_simple(c4.lift.graph), cycle_graph(4)));

    auto k2 = cayley_as_bouquet_lift(one(cyclic_group(2)), {{1}});
    CHECK(k2.isomorphic);
    CHECK(isomorphic(underlying_simple(k2.lift.graph), complete_graph(2)));

    auto z3 = cyclic_group(3);
    auto mg = MultiGroup::from_groups({relabelled(z3, {"a0", "a1", "a2"}), relabelled(z3, {"a0", "c1", "c2"})});
    std::vector<std::vector<int>> s{{*mg.index_of("a1"), *mg.index_of("a2")}, {*mg.index_of("c1"), *mg.index_of("c2")}};
    auto both = cayley_as_bouquet_lift(mg, s);
    CHECK(both.isomorphic);
    CHECK(isomorphic(underlying_simple(both.lift.graph), cayley_graph_multigroup(mg, s).graph));
}
