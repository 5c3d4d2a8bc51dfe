#include <cmath>

#include "doctest.h"
#include "msg/error.hpp"
#include "msg/generators.hpp"
#include "msg/phases.hpp"

using namespace msg;

namespace {

GraphPhase<double> unit_pair(PhaseOp op = PhaseOp::cross) {
    return make_phase(complete_graph(2), std::vector<Vec3<double>>{{1, 0, 0}, {0, 1, 0}}, op);
}

}  // namespace

TEST_CASE("phase matrices") {
    auto ph = unit_pair();
    auto m = phase_matrices(ph);
    // ‖u − v‖² = 2
    CHECK(m.lambda(0, 1).isApprox(Vec3<double>(0, 0, 0.5)));
    CHECK(m.lambda(1, 0).isApprox(Vec3<double>(0, 0, -0.5)));
    CHECK(m.v(0, 1).radicand == doctest::Approx(2.0));
    CHECK(m.v(0, 0).numerator.isZero());

    auto three = make_phase(path_graph(3), std::vector<Vec3<double>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto m3 = phase_matrices(three);
    CHECK(m3.lambda(0, 2).isZero());
    CHECK(m3.v(0, 2).numerator.isZero());

    CHECK_THROWS_AS(make_phase(complete_graph(2), std::vector<Vec3<double>>{{1, 0, 0}, {1, 0, 0}}), InvalidInput);
}

TEST_CASE("star identity") {
    gen::Rng rng(111);
    for (int k = 0; k < 200; ++k) {
        auto op = k % 2 ? PhaseOp::cross : PhaseOp::componentwise;
        auto ph = gen::phase(rng, gen::uniform(rng, 2, 7), op);
        CHECK(verify_star_identity(ph) <= 1e-9);
    }
    // exact on rationals
    using Q = Rational;
    auto exact = make_phase<Q>(complete_graph(4),
                               {Vec3<Q>(1, 2, 3), Vec3<Q>(Q(1, 2), 0, 5), Vec3<Q>(-1, 4, Q(2, 3)), Vec3<Q>(7, -2, 1)});
    CHECK(verify_star_identity(exact) == 0.0);
    auto edge = make_phase<Q>(complete_graph(2), {Vec3<Q>(1, 0, 0), Vec3<Q>(0, 1, 0)});
    CHECK(verify_star_identity(edge) == 0.0);
}

TEST_CASE("phase addition") {
    auto a = make_phase(complete_graph(2), std::vector<Vec3<double>>{{1, 0, 0}, {0, 1, 0}}, PhaseOp::cross, {"u", "v"});
    auto b = make_phase(complete_graph(2), std::vector<Vec3<double>>{{2, 0, 0}, {0, 3, 0}}, PhaseOp::cross, {"x", "y"});
    auto disjoint = add_phases(a, b, PhaseOp::sum, PhaseOp::cross);
    CHECK(disjoint.graph.vertex_count() == 4);
    CHECK(disjoint.graph.edge_count() == 2);

    auto doubled = add_phases(a, a, PhaseOp::sum, PhaseOp::cross);
    CHECK(doubled.graph.vertex_count() == 2);
    CHECK(capacity(doubled).isApprox(2 * capacity(a)));

    auto c = make_phase(complete_graph(2), std::vector<Vec3<double>>{{0, 1, 0}, {0, 0, 4}}, PhaseOp::cross, {"v", "w"});
    auto glued = add_phases(a, c, PhaseOp::sum, PhaseOp::cross);
    CHECK(glued.graph.vertex_count() == 3);
    for (std::size_t k = 0; k < glued.labels.size(); ++k) {
        if (glued.labels[k] == "v") CHECK(glued.omega[k].isApprox(Vec3<double>(0, 2, 0)));
        if (glued.labels[k] == "u") CHECK(glued.omega[k].isApprox(Vec3<double>(1, 0, 0)));
    }

    CHECK(same_phase(add_phases(a, c, PhaseOp::sum, PhaseOp::cross), add_phases(c, a, PhaseOp::sum, PhaseOp::cross)));
    auto ac_b = add_phases(add_phases(a, c, PhaseOp::sum, PhaseOp::cross), b, PhaseOp::sum, PhaseOp::cross);
    auto a_cb = add_phases(a, add_phases(c, b, PhaseOp::sum, PhaseOp::cross), PhaseOp::sum, PhaseOp::cross);
    CHECK(same_phase(ac_b, a_cb));
}

TEST_CASE("capacity and entropy") {
    auto ph = unit_pair();
    CHECK(capacity(ph).isApprox(Vec3<double>(1, 1, 0)));
    CHECK(entropy(ph) == doctest::Approx(0.0));
    auto scaled = make_phase(complete_graph(2), std::vector<Vec3<double>>{{2, 0, 0}, {0, 3, 0}});
    CHECK(entropy(scaled) == doctest::Approx(std::log(6.0)));
    CHECK(entropy(scaled, EntropyNorm::squared_norm) == doctest::Approx(2 * std::log(6.0)));
    auto zero = make_phase(complete_graph(2), std::vector<Vec3<double>>{{0, 0, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(entropy(zero), InvalidInput);
}

TEST_CASE("differential check") {
    // translation: every vertex moves by the same d
    AffinePhaseFamily shift{complete_graph(3), {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}};
    auto r = differential_check(shift, 0.0, 1e-3);
    CHECK(r.capacity_analytic.isApprox(Eigen::Vector3d(3, 3, 3)));
    CHECK(r.capacity_deviation < 1e-9);

    // scaling ω ↦ sω at s = 1 + t: dEn/ds = |V| / s
    AffinePhaseFamily scale{complete_graph(3), {{1, 2, 0}, {0, 2, 1}, {3, 0, 1}}, {{1, 2, 0}, {0, 2, 1}, {3, 0, 1}}};
    auto rs = differential_check(scale, 1.0, 1e-4);
    CHECK(rs.entropy_analytic == doctest::Approx(3.0 / 2.0));
    CHECK(rs.entropy_numeric == doctest::Approx(1.5).epsilon(1e-6));
    CHECK_THROWS_AS(differential_check(scale, 0.0, 0.0), InvalidInput);

    gen::Rng rng(113);
    int checked = 0;
    for (int k = 0; k < 30; ++k) {
        auto fam = gen::affine_family(rng, gen::uniform(rng, 2, 6));
        auto coarse = differential_check(fam, 0.1, 1e-2);
        auto fine = differential_check(fam, 0.1, 5e-3);
        if (coarse.entropy_deviation < 1e-9) continue;
        ++checked;
        const double ratio = coarse.entropy_deviation / fine.entropy_deviation;
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
    CHECK(checked > 0);
}

TEST_CASE("affine transforms keep the graph") {
    gen::Rng rng(127);
    for (int k = 0; k < 20; ++k) {
        auto ph = gen::phase(rng, gen::uniform(rng, 2, 6), PhaseOp::cross);
        Eigen::Matrix3d a;
        a << 2, 1, 0, 0, 1, 0, 1, 0, 3;
        auto moved = transform_phase(ph, a, Vec3<double>(1, -1, 2));
        CHECK(moved.graph == ph.graph);
        CHECK(verify_star_identity(moved) <= 1e-9);
    }
}
