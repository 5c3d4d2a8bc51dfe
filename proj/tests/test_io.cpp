#include <filesystem>

#include "doctest.h"
#include "msg/error.hpp"
#include "msg/generators.hpp"
#include "msg/io.hpp"

using namespace msg;

namespace {

template <class T, class Load>
T round_trip(const T& value, Load load) {
    return load(Json::parse(to_json(value).dump()));
}

}  // namespace

TEST_CASE("quadricell names") {
    for (int q = 0; q < 40; ++q) CHECK(parse_quadricell(quadricell_name(q)) == q);
    CHECK(quadricell_name(quadricell(3, q_alphabeta)) == "e3.ab");
    CHECK_THROWS_AS(parse_quadricell("e3.c"), SchemaError);
}

TEST_CASE("documents round-trip") {
    gen::Rng rng(131);
    for (int k = 0; k < 20; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 2, 6), gen::uniform(rng, 0, 5), true);
        CHECK(round_trip(g, graph_from_json) == g);

        auto rs = gen::rotation_system(rng, g, true);
        CHECK(round_trip(rs, rotation_from_json) == rs);
        auto m = map_from_rotation(rs);
        CHECK(round_trip(m, map_from_json) == m);

        auto mg = gen::overlapping_multigroup(rng, 8, 3);
        auto mg2 = round_trip(mg, multigroup_from_json);
        CHECK(mg2.universe() == mg.universe());
        REQUIRE(mg2.operation_count() == mg.operation_count());
        for (int i = 0; i < mg.operation_count(); ++i) {
            CHECK(mg2.constituent(i).members == mg.constituent(i).members);
            CHECK(mg2.constituent(i).group == mg.constituent(i).group);
        }

        auto mv = gen::voltage1(rng, g, mg);
        auto mv2 = round_trip(mv, voltage1_from_json);
        CHECK(mv2.base == mv.base);
        CHECK(mv2.psi == mv.psi);

        auto ph = gen::phase(rng, gen::uniform(rng, 2, 5), PhaseOp::cross);
        auto ph2 = round_trip(ph, phase_from_json);
        CHECK(same_phase(ph, ph2));
    }

    auto group = cyclic_group(5);
    GroupDocument gd{group.labels(), group.table()};
    CHECK(round_trip(gd, group_from_json) == gd);

    auto sys = four_symbol_partial_system();
    CHECK(round_trip(sys, system_from_json) == sys);
    auto d = multispace_graph({system_from_group(cyclic_group(3)), letter_cyclic_system()});
    CHECK(round_trip(d, digraph_from_json) == d);
}

TEST_CASE("schema errors") {
    auto j = to_json(complete_graph(3));
    CHECK(document_kind(j) == "graph");
    CHECK_THROWS_AS(map_from_json(j), SchemaError);
    auto wrong_version = j;
    wrong_version["version"] = 99;
    CHECK_THROWS_AS(graph_from_json(wrong_version), SchemaError);
    auto missing = j;
    missing.erase("edges");
    CHECK_THROWS_AS(graph_from_json(missing), SchemaError);
    CHECK_THROWS_AS(read_document("/nonexistent/nothing.json"), Error);
}

TEST_CASE("files") {
    auto path = std::filesystem::temp_directory_path() / "msg_io_test.graph";
    auto g = complete_bipartite(3, 3);
    write_document(path, to_json(g));
    CHECK(graph_from_json(read_document(path)) == g);
    std::filesystem::remove(path);
}
