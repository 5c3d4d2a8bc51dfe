#pragma once
#include <boost/rational.hpp>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "msg/graph.hpp"
#include "msg/group.hpp"
#include "msg/perm.hpp"

namespace msg {

// Quadricell (edge, k) lives at 4*edge + k; k = 0:1, 1:α, 2:β, 3:αβ, so α and β are xor 1 and xor 2.
enum QuadKind : int { q_one = 0, q_alpha = 1, q_beta = 2, q_alphabeta = 3 };
inline int quadricell(int edge, int kind) { return 4 * edge + kind; }
inline int quad_edge(int q) { return q / 4; }
inline int quad_kind(int q) { return q % 4; }
inline int alpha_of(int q) { return q ^ 1; }
inline int beta_of(int q) { return q ^ 2; }
Perm alpha_perm(int edge_count);
Perm beta_perm(int edge_count);

class CombinatorialMap {
public:
    CombinatorialMap() = default;
    // Checks only that P is a permutation of 4*edge_count cells; axioms via validate_map.
    CombinatorialMap(int edge_count, Perm p);
    static CombinatorialMap from_cycles(int edge_count, const std::vector<Cycle>& cs);

    int edge_count() const { return edge_count_; }
    int cell_count() const { return 4 * edge_count_; }
    const Perm& P() const { return p_; }
    std::vector<Cycle> cycles() const { return msg::cycles(p_); }

    friend bool operator==(const CombinatorialMap&, const CombinatorialMap&) = default;

private:
    int edge_count_ = 0;
    Perm p_;
};

struct MapCheck {
    bool ok = true;
    std::string axiom;  // "i", "ii", "iii" when !ok
    int witness = -1;   // offending quadricell
};
MapCheck validate_map(const CombinatorialMap& m);

// One representative orbit per conjugate pair: the orbit holding the pair's least cell,
// rotated to start there; lists sorted by that cell.
struct MapOrbits {
    std::vector<Cycle> vertices;
    int edges = 0;
    std::vector<Cycle> faces;
};
MapOrbits orbits(const CombinatorialMap& m);
// Vertex index of each quadricell, numbered as in orbits().vertices.
std::vector<int> cell_vertices(const CombinatorialMap& m);
// Face permutation Pαβ.
Perm face_perm(const CombinatorialMap& m);

int euler_characteristic(const CombinatorialMap& m);
bool is_orientable(const CombinatorialMap& m);
struct Genus {
    bool orientable = true;
    int genus = 0;  // handles if orientable, crosscaps otherwise
};
Genus genus(const CombinatorialMap& m);

// ⊗(e): swaps the β and αβ cells of e inside P.
CombinatorialMap edge_twist(const CombinatorialMap& m, int edge);
// Vertices and faces exchanged; α and β swap roles, then cells are renamed back to the standard table.
CombinatorialMap dual_map(const CombinatorialMap& m);

struct RotationSystem {
    Multigraph base;
    std::vector<Cycle> rotation;  // per vertex, semi-arc ids, least first
    std::vector<int> lambda;      // per edge, 0 or 1
    friend bool operator==(const RotationSystem&, const RotationSystem&) = default;
};
void validate(const RotationSystem& rs);
// Cycles rotated to least-first; a vertex that is the tail of no edge is read from the
// orbit in which its least edge appears untwisted (both readings give the same map).
RotationSystem normalized(RotationSystem rs);

CombinatorialMap map_from_rotation(const RotationSystem& rs);
// Base graph read off the map: edge e runs from the vertex of (e,1) to the vertex of (e,β).
RotationSystem rotation_from_map(const CombinatorialMap& m);
// Same, but vertex ids and edge ends are taken from `base`.
RotationSystem rotation_from_map(const CombinatorialMap& m, const Multigraph& base);

// Orientable sphere map from oriented face boundaries (vertex lists, each directed edge used once).
RotationSystem rotation_from_faces(int vertex_count, const std::vector<std::vector<int>>& faces);

// Calls `visit` with P for every rotation system with λ = 0 on a BFS spanning tree.
void for_each_embedding(const Multigraph& g, long long budget, const std::function<void(const Perm&)>& visit);
long long embedding_count(const Multigraph& g);  // 2^β ∏(ρ−1)!

struct EmbeddingCensus {
    std::map<int, long long> orientable;     // genus -> count
    std::map<int, long long> nonorientable;  // crosscaps -> count
    long long orientable_total = 0;
    long long nonorientable_total = 0;
    long long total() const { return orientable_total + nonorientable_total; }
};
constexpr long long default_embedding_budget = 1'000'000;
EmbeddingCensus enumerate_embeddings(const Multigraph& g, long long budget = default_embedding_budget);

// Genus 0 by enumerating pure rotation systems per component, after the Euler edge bound.
bool is_planar(const Multigraph& g, long long budget = default_embedding_budget);

enum class GenusKind { orientable, nonorientable, max_orientable, max_nonorientable };
int genus_complete(GenusKind kind, int n);
int genus_complete_bipartite(GenusKind kind, int m, int n);

int xuong_max_genus(const Multigraph& g, long long budget = default_embedding_budget);
int nebesky_max_genus(const Multigraph& g, int max_edges = 20);

// 2^{β+1} ε ∏(ρ−1)! / |Aut_{1/2} G|; throws if not integral.
long long rooted_map_count(const Multigraph& g, const SearchLimits& lim = {.automorphism_semi_arcs = 16});
// Distinct rooted canonical codes over every embedding and every root cell.
long long rooted_map_count_exhaustive(const Multigraph& g, long long budget = default_embedding_budget);

// ψ on quadricells; with several operations ψ(βx) is read as the inverse of ψ(x) under each one.
struct MapVoltage {
    CombinatorialMap base;
    MultiGroup groups;           // constituents equal as sets
    std::vector<int> edge_voltage;  // universe index carried by (e,1) and (e,α)
};
// Builds edge voltages from a full quadricell assignment, checking ψ(αx)=ψ(x) and ψ(βx)=ψ(x)^{-1}
// under every operation.
MapVoltage map_voltage_from_cells(CombinatorialMap base, MultiGroup groups, const std::vector<int>& psi);
void validate(const MapVoltage& mv);
int cell_voltage(const MapVoltage& mv, int operation, int cell);
// ψ(f, ∘_i) for each face of orbits(base).faces.
std::vector<int> face_voltages(const MapVoltage& mv, int operation);
// Faces around every vertex generate the group under this operation.
bool face_voltages_generate(const MapVoltage& mv, int operation);

struct LiftedMap {
    std::vector<CombinatorialMap> sheets;  // one per operation, same vertex and edge fibres
    std::vector<MapCheck> checks;
    int vertices = 0;
    int edges = 0;
    int faces = 0;  // summed over sheets
    int euler_characteristic() const { return vertices - edges + faces; }
};
// Lifted edge (e, g) has cells (e,1)_g, (e,α)_g, (e,β)_h, (e,αβ)_h with h = g ∘_i ψ(e).
LiftedMap lift_map(const MapVoltage& mv);
boost::rational<long long> lift_chi_formula(const MapVoltage& mv);

struct PlatonicSolid {
    std::string name;
    int face_length;
    int valency;
    CombinatorialMap map;
};
std::vector<PlatonicSolid> platonic_solids();

// The dipole D_{0.4.0} map with edges x,y,z,w = 0..3 on a Klein bottle.
CombinatorialMap klein_dipole_map();
RotationSystem klein_dipole_rotation();

}  // namespace msg
