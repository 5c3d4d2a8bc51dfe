#pragma once
#include <Eigen/Core>
#include <string>
#include <vector>

#include "msg/graph.hpp"
#include "msg/rational.hpp"

namespace msg {

template <class Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

// cross and componentwise are bilinear; sum is only meant for combining vertex values.
enum class PhaseOp { cross, componentwise, sum };
template <class Scalar>
Vec3<Scalar> apply_op(PhaseOp op, const Vec3<Scalar>& a, const Vec3<Scalar>& b);
bool is_bilinear(PhaseOp op);

// The vertex vector doubles as the vertex's position, so edge lengths are ‖ω(u) − ω(v)‖.
template <class Scalar>
struct GraphPhase {
    std::vector<std::string> labels;
    Multigraph graph;
    std::vector<Vec3<Scalar>> omega;
    PhaseOp op = PhaseOp::cross;
};
// Labels default to v0, v1, ...; throws when adjacent vertices coincide or the graph is not simple.
template <class Scalar>
GraphPhase<Scalar> make_phase(Multigraph g, std::vector<Vec3<Scalar>> omega, PhaseOp op = PhaseOp::cross,
                              std::vector<std::string> labels = {});
template <class Scalar>
void validate(const GraphPhase<Scalar>& ph);

// numerator / √radicand, so that exact mode never takes a square root.
template <class Scalar>
struct SurdVector {
    Vec3<Scalar> numerator = Vec3<Scalar>::Zero();
    Scalar radicand = 1;
    Eigen::Vector3d approx() const;
};

template <class Entry>
struct EntryMatrix {
    int size = 0;
    std::vector<Entry> entries;
    explicit EntryMatrix(int n = 0, Entry fill = {}) : size(n), entries(static_cast<std::size_t>(n * n), fill) {}
    Entry& operator()(int i, int j) { return entries[static_cast<std::size_t>(i * size + j)]; }
    const Entry& operator()(int i, int j) const { return entries[static_cast<std::size_t>(i * size + j)]; }
};
template <class Scalar>
using SurdMatrix = EntryMatrix<SurdVector<Scalar>>;
template <class Scalar>
using VectorMatrix = EntryMatrix<Vec3<Scalar>>;

template <class Entry>
EntryMatrix<Entry> transpose(const EntryMatrix<Entry>& m) {
    EntryMatrix<Entry> t(m.size);
    for (int i = 0; i < m.size; ++i)
        for (int j = 0; j < m.size; ++j) t(j, i) = m(i, j);
    return t;
}

// unsquared divides Λ by ‖u − v‖ rather than its square; double only.
enum class LambdaNorm { squared, unsquared };
template <class Scalar>
struct PhaseMatrices {
    SurdMatrix<Scalar> v;
    VectorMatrix<Scalar> lambda;
};
template <class Scalar>
PhaseMatrices<Scalar> phase_matrices(const GraphPhase<Scalar>& ph, LambdaNorm norm = LambdaNorm::squared);

// Entrywise a_ij ∘ b_ij.
template <class Scalar>
VectorMatrix<Scalar> star_product(const SurdMatrix<Scalar>& a, const SurdMatrix<Scalar>& b, PhaseOp op);

// max over entries of ‖(V ∗ Vᵗ)_ij − Λ_ij‖ / max(1, ‖Λ_ij‖); exactly 0 in rational mode when equal.
template <class Scalar>
double verify_star_identity(const GraphPhase<Scalar>& ph, LambdaNorm norm = LambdaNorm::squared);

// Shared labels combine by vertex_op, the rest carry over; edges are the union and Λ uses edge_op.
template <class Scalar>
GraphPhase<Scalar> add_phases(const GraphPhase<Scalar>& first, const GraphPhase<Scalar>& second, PhaseOp vertex_op,
                              PhaseOp edge_op);
// Same labelled vertex values, labelled edge set and operation, ignoring vertex order.
template <class Scalar>
bool same_phase(const GraphPhase<Scalar>& a, const GraphPhase<Scalar>& b);

template <class Scalar>
Vec3<Scalar> capacity(const GraphPhase<Scalar>& ph);
// Σ log ‖ω‖ by default; squared_norms sums log ‖ω‖² instead (twice the value).
enum class EntropyNorm { norm, squared_norm };
template <class Scalar>
double entropy(const GraphPhase<Scalar>& ph, EntropyNorm kind = EntropyNorm::norm);

// ω ↦ A ω + b on every vertex.
template <class Scalar>
GraphPhase<Scalar> transform_phase(const GraphPhase<Scalar>& ph, const Eigen::Matrix<Scalar, 3, 3>& linear,
                                   const Vec3<Scalar>& shift);

// ω_u(t) = base_u + t · direction_u over a fixed graph.
struct AffinePhaseFamily {
    Multigraph graph;
    std::vector<Eigen::Vector3d> base;
    std::vector<Eigen::Vector3d> direction;
    GraphPhase<double> at(double t) const;
};
struct DifferentialReport {
    Eigen::Vector3d capacity_analytic;
    Eigen::Vector3d capacity_numeric;
    double entropy_analytic = 0;
    double entropy_numeric = 0;
    double capacity_deviation = 0;
    double entropy_deviation = 0;
};
// Central differences at t against Σ_u ∂ω_u/∂t and Σ_u ∂ log‖ω_u‖/∂t.
DifferentialReport differential_check(const AffinePhaseFamily& family, double t, double step,
                                      EntropyNorm kind = EntropyNorm::norm);

}  // namespace msg
