#include <numeric>

#include "doctest.h"
#include "msg/error.hpp"
#include "msg/generators.hpp"
#include "msg/spatial.hpp"

using namespace msg;

TEST_CASE("space permutations") {
    CHECK(count_space_embeddings(complete_graph(3), 3) == 8);
    CHECK(count_space_embeddings(complete_graph(4), 3) == 1296);
    CHECK(count_space_embeddings(complete_graph(2), 3) == 1);
    CHECK_THROWS_AS(count_space_embeddings(complete_graph(3), 2), InvalidInput);

    gen::Rng rng(81);
    for (int k = 0; k < 30; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 1, 5), gen::uniform(rng, 0, 4), true);
        if (count_space_embeddings(g, 3) > 10'000) continue;
        CHECK(static_cast<long long>(enumerate_space_permutations(g).size()) == count_space_embeddings(g, 3));
    }
}

TEST_CASE("rectilinear embeddings") {
    for (int n : {2, 4, 5, 7}) {
        auto g = complete_graph(n);
        auto pts = rectilinear_coordinates(g);
        CHECK(static_cast<int>(pts.size()) == n);
        CHECK(is_rectilinear_embedding(g, pts));
    }
    CHECK_THROWS_AS(rectilinear_coordinates(bouquet(1)), InvalidInput);

    // points in one plane can cross
    Point3 a0(0, 0, 0), a1(2, 2, 0), b0(0, 2, 0), b1(2, 0, 0);
    CHECK(segments_cross(a0, a1, b0, b1));
    CHECK_FALSE(segments_cross(a0, a1, a0, b0));  // shared endpoint only

    gen::Rng rng(83);
    for (int k = 0; k < 20; ++k) {
        const int n = gen::uniform(rng, 2, 7);
        std::vector<long long> t(static_cast<std::size_t>(n));
        std::iota(t.begin(), t.end(), -3);
        std::shuffle(t.begin(), t.end(), rng);
        auto g = gen::connected_graph(rng, n, n, false);
        CHECK(is_rectilinear_embedding(g, rectilinear_coordinates(g, t)));
    }
}

TEST_CASE("planar block numbers") {
    CHECK(planar_block_number_complete(6) == 2);
    CHECK(planar_block_number_complete_bipartite(3, 3) == 2);
    CHECK(planar_block_number_complete_bipartite(2, 7) == 1);
    for (int n = 4; n <= 8; ++n) CHECK(planar_block_number(complete_graph(n)) == planar_block_number_complete(n));
    CHECK(planar_block_number(complete_bipartite(3, 3)) == 2);
    for (int n = 4; n <= 7; ++n) {
        auto g = complete_graph(n);
        for (int s = 1; s <= n + 1; ++s)
            CHECK(sphere_multi_embedding_feasible(g, s) == (planar_block_number(g) <= s && s <= n));
    }
}

TEST_CASE("multi-embedding arithmetic") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(48) == 6);
    CHECK(isqrt(49) == 7);
    // ⌈(3 + √17)/2⌉ = 4 and ⌊(7 + √49)/2⌋ = 7 for one torus
    CHECK(ceil_affine_sqrt(3, 17, 2) == 4);
    CHECK(floor_affine_sqrt(7, 49, 2) == 7);

    std::vector<int> two_tori{1, 1}, one_torus{1}, two_planes{1, 1};
    CHECK(multi_embedding_feasible(MultiKind::complete, 10, two_tori, true));
    CHECK_FALSE(multi_embedding_feasible(MultiKind::complete, 8, one_torus, true));
    CHECK(multi_embedding_feasible(MultiKind::complete, 6, two_planes, false));
    std::vector<int> with_sphere{0, 1};
    CHECK_THROWS_AS(multi_embedding_feasible(MultiKind::complete, 6, with_sphere, true), InvalidInput);

    for (int s = 1; s <= 4; ++s) {
        std::vector<int> g(static_cast<std::size_t>(s), 1);
        for (int n = 1; n <= 30; ++n) {
            CHECK(multi_embedding_feasible(MultiKind::complete, n, g, true) == (4 * s <= n && n <= 7 * s));
            CHECK(multi_embedding_feasible(MultiKind::complete, n, g, false) == (3 * s <= n && n <= 6 * s));
        }
    }
}

TEST_CASE("manifold graphs") {
    // one edge is already transitive under μ and o; two edges are not
    CHECK(validate_manifold_graph({1, 3, identity_perm(6)}).ok);
    auto stuck = validate_manifold_graph({2, 3, identity_perm(12)});
    CHECK_FALSE(stuck.ok);
    CHECK(stuck.axiom == "iii");

    gen::Rng rng(89);
    for (int k = 0; k < 40; ++k) {
        auto g = gen::connected_graph(rng, gen::uniform(rng, 2, 4), gen::uniform(rng, 0, 3), true);
        auto m = map_from_rotation(gen::rotation_system(rng, g, true));
        auto two = map_to_manifold_graph(m, 2);
        CHECK(validate_manifold_graph(two).ok);
        CHECK(manifold_graph_to_map(two) == m);
    }

    auto all = enumerate_manifold_graphs(1, 3);
    CHECK_FALSE(all.empty());
    for (const auto& mg : all) {
        CHECK(validate_manifold_graph(mg).ok);
        auto verts = manifold_vertices(mg);
        CHECK((verts.size() == 1 || verts.size() == 2));
        auto m = manifold_graph_to_map(mg);
        CHECK(m.edge_count() == mg.edge_count);
        int split = 0;
        for (const auto& v : verts) split += v.l;
        CHECK(static_cast<int>(orbits(m).vertices.size()) == split);
    }
}

TEST_CASE("rooted manifold counts") {
    CHECK(rooted_manifold_count(complete_graph(3), 3) == 12);
    // the closed form gives 3 on a single loop; the exhaustive count disagrees (see README)
    CHECK(rooted_manifold_count(bouquet(1), 3) == 3);
    CHECK(rooted_manifold_count_exhaustive(bouquet(1), 3) == 2);
}
