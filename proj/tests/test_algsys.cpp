#include <algorithm>

#include "doctest.h"
#include "msg/algsys.hpp"
#include "msg/error.hpp"
#include "msg/generators.hpp"

using namespace msg;

namespace {

PartialBinarySystem random_system(gen::Rng& rng, int n) {
    PartialBinarySystem sys;
    for (int k = 0; k < n; ++k) sys.elements.push_back("x" + std::to_string(k));
    sys.table.assign(static_cast<std::size_t>(n), std::vector<std::optional<int>>(static_cast<std::size_t>(n)));
    for (auto& row : sys.table)
        for (auto& cell : row)
            if (gen::coin(rng)) cell = gen::uniform(rng, 0, n - 1);
    return sys;
}

}  // namespace

TEST_CASE("graph models") {
    auto z4 = system_from_group(cyclic_group(4));
    auto g = graph_model(z4);
    CHECK(g.arcs.size() == 16);
    CHECK(is_complete_multiple_2_graph(g));
    CHECK(graph_model(four_symbol_partial_system()).arcs.size() == 6);
    PartialBinarySystem empty{{"a", "b"}, {{std::nullopt, std::nullopt}, {std::nullopt, std::nullopt}}};
    auto e = graph_model(empty);
    CHECK(e.vertices.size() == 2);
    CHECK(e.arcs.empty());

    gen::Rng rng(101);
    for (int k = 0; k < 100; ++k) {
        auto sys = random_system(rng, gen::uniform(rng, 1, 8));
        auto d = graph_model(sys);
        CHECK(static_cast<int>(d.arcs.size()) == defined_cell_count(sys));
        CHECK(reconstruct_system(d) == sys);
    }
}

TEST_CASE("reconstruction rejects conflicting arcs") {
    auto d = graph_model(system_from_group(cyclic_group(3)));
    auto bad = d;
    auto extra = bad.arcs.front();
    extra.to = (extra.to + 1) % 3;
    bad.arcs.push_back(extra);
    CHECK_THROWS_AS(reconstruct_system(bad), InvalidInput);
}

TEST_CASE("properties") {
    auto z4 = analyze_properties(graph_model(system_from_group(cyclic_group(4))));
    CHECK(z4.connected);
    CHECK(z4.units == std::vector{0});
    CHECK(z4.all_invertible);
    CHECK(z4.cancellation);

    auto partial = analyze_properties(graph_model(four_symbol_partial_system()));
    CHECK(partial.units.empty());

    // two disjoint groups as one partial system
    PartialBinarySystem two{{"a0", "a1", "b0", "b1"}, {}};
    two.table.assign(4, std::vector<std::optional<int>>(4));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            two.table[x][y] = (x + y) % 2;
            two.table[2 + x][2 + y] = 2 + (x + y) % 2;
        }
    auto split = analyze_properties(graph_model(two));
    CHECK_FALSE(split.connected);
    CHECK(split.partition_side.size() == 2);

    for (const auto& g : gen::group_catalogue(10)) {
        auto d = graph_model(system_from_group(g));
        auto r = analyze_properties(d);
        CHECK(r.connected);
        CHECK(r.units.size() == 1);
        CHECK(r.all_invertible);
        CHECK(r.cancellation);
        CHECK(is_complete_multiple_2_graph(d));
        bool has_involution = false;
        for (int x = 0; x < g.order(); ++x) has_involution |= x != g.identity() && g.inverse(x) == x;
        if (g.order() % 2 == 0) CHECK(has_involution);
        CHECK(equal_weight_opposite_pairs(d).empty() == !has_involution);
    }
}

TEST_CASE("euler analysis") {
    auto z4 = graph_model(system_from_group(cyclic_group(4)));
    auto r = euler_analysis(z4);
    CHECK(r.euler);
    CHECK(is_one_way_matching(z4, r.one_way));
    CHECK(r.circuit.size() == z4.arcs.size());

    auto partial = euler_analysis(graph_model(four_symbol_partial_system()));
    CHECK_FALSE(partial.euler);
    CHECK(partial.unbalanced_vertex.has_value());

    for (const auto& g : gen::group_catalogue(10)) {
        auto d = graph_model(system_from_group(g));
        auto er = euler_analysis(d);
        CHECK(er.euler);
        CHECK(is_one_way_matching(d, er.one_way));
        for (int deg : out_degrees(d)) CHECK(deg == g.order());
    }
}

TEST_CASE("multi-space graphs") {
    auto z3 = system_from_group(cyclic_group(3));
    auto letters = letter_cyclic_system();
    auto partial = four_symbol_partial_system();
    auto u = multispace_graph({z3, letters, partial});
    CHECK(u.systems.size() == 3);
    CHECK(static_cast<int>(u.arcs.size()) ==
          defined_cell_count(z3) + defined_cell_count(letters) + defined_cell_count(partial));
    auto back = reconstruct_multispace(u);
    REQUIRE(back.size() == 3);
    CHECK(back[0] == z3);
    CHECK(back[1] == letters);
    CHECK(back[2] == partial);

    auto single = multispace_graph({z3});
    CHECK(single.arcs == graph_model(z3).arcs);

    auto other = z3;
    for (auto& l : other.elements) l = "y" + l;
    auto apart = multispace_graph({z3, other});
    CHECK(apart.vertices.size() == 6);
    CHECK_FALSE(analyze_properties(apart).connected);
}
