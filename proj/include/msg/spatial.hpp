#pragma once
#include <Eigen/Core>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "msg/graph.hpp"
#include "msg/map.hpp"
#include "msg/rational.hpp"

namespace msg {

// ---- space permutations -------------------------------------------------

// One permutation per vertex of its incident semi-arcs (as an ordering).
struct SpacePermutation {
    std::vector<std::vector<int>> order;
    friend auto operator<=>(const SpacePermutation&, const SpacePermutation&) = default;
};
// ∏ ρ(v)!
long long count_space_embeddings(const Multigraph& g, int dimension);
std::set<SpacePermutation> enumerate_space_permutations(const Multigraph& g, long long budget = 10'000);

// ---- rectilinear embeddings ----------------------------------------------

using Point3 = Eigen::Matrix<Rational, 3, 1>;

// Points (t, t², t³) on the moment curve; parameters default to 1..ν.
std::vector<Point3> rectilinear_coordinates(const Multigraph& g, std::span<const long long> parameters = {});
// Closed segments meet somewhere other than a shared endpoint.
bool segments_cross(const Point3& a0, const Point3& a1, const Point3& b0, const Point3& b1);
bool is_rectilinear_embedding(const Multigraph& g, std::span<const Point3> coords);

// ---- planar block number -------------------------------------------------

int planar_block_number_complete(int n);
int planar_block_number_complete_bipartite(int m, int n);
// Fewest planar induced blocks, by subset dynamic programming (ν ≤ 16).
int planar_block_number(const Multigraph& g);
// A nontrivial multi-embedding on s spheres exists iff n_p(G) ≤ s ≤ |G|.
bool sphere_multi_embedding_feasible(const Multigraph& g, int spheres);

// Blocks in nested-sphere order: each planar, neighbours of block i inside blocks i−1..i+1.
bool is_including_decomposition(const Multigraph& g, const std::vector<std::vector<int>>& blocks);

// Sums of per-block genus values over all embeddings of the induced blocks (each block connected).
std::set<int> multi_genus_range(const Multigraph& g, const std::vector<std::vector<int>>& blocks, bool orientable);

// ---- multi-embedding arithmetic -------------------------------------------

// ⌈(p + √a)/q⌉ and ⌊(p + √a)/q⌋ for a ≥ 0, q > 0, exact.
long long isqrt(long long a);
long long ceil_affine_sqrt(long long p, long long a, long long q);
long long floor_affine_sqrt(long long p, long long a, long long q);

enum class MultiKind { complete, complete_bipartite };
struct FeasibleBounds {
    long long lower = 0;
    long long upper = 0;
};
// Sum of per-surface bounds for K_n (or K(n,n)) over the listed genera, all ≥ 1.
FeasibleBounds multi_embedding_bounds(MultiKind kind, std::span<const int> genera, bool orientable);
bool multi_embedding_feasible(MultiKind kind, int n, std::span<const int> genera, bool orientable);
// Independent check for K_n: split n into one part per surface so that each surface genus
// lies in the part's genus range from the closed genus formulas.
bool multi_embedding_feasible_by_parts(int n, std::span<const int> genera, bool orientable);

// ---- manifold graphs -----------------------------------------------------

// Cell (e, a, k) for edge e, sheet a ∈ {0,1}, k ∈ Z_n at index (2e + a)·n + k; μ flips a, o adds 1 to k.
struct ManifoldGraph {
    int edge_count = 0;
    int n = 3;
    Perm L;
    friend bool operator==(const ManifoldGraph&, const ManifoldGraph&) = default;
};
inline int manifold_cell(int n, int e, int a, int k) { return (2 * e + a) * n + k; }
Perm mu_perm(int edge_count, int n);
Perm o_perm(int edge_count, int n);

struct ManifoldCheck {
    bool ok = true;
    std::string axiom;  // "i", "ii", "iii", or "o" when L does not commute with o
    int witness = -1;
};
// n = 2 is checked as a map with μ = α and o = β.
ManifoldCheck validate_manifold_graph(const ManifoldGraph& mg);

struct ManifoldVertex {
    std::vector<Cycle> cycles;  // L-cycles in the class
    int l = 0;                  // sheet cycles, i.e. map vertices it splits into
    int valency = 0;            // sheets in the class
};
std::vector<ManifoldVertex> manifold_vertices(const ManifoldGraph& mg);
Multigraph underlying_graph(const ManifoldGraph& mg);

CombinatorialMap manifold_graph_to_map(const ManifoldGraph& mg);
// L moves sheets as the map's rotation does, with no shift; needs μ L̄ μ = L̄^{-1} on sheets when n ≥ 3.
ManifoldGraph map_to_manifold_graph(const CombinatorialMap& m, int n);

// n ε ∏ ρ! / |Aut_{1/2} G|
long long rooted_manifold_count(const Multigraph& g, int n, const SearchLimits& lim = {.automorphism_semi_arcs = 16});
// Distinct rooted codes over every valid o-commuting L on ε(G) edges whose underlying graph is G.
long long rooted_manifold_count_exhaustive(const Multigraph& g, int n, long long budget = 1'000'000);
// Every valid o-commuting L on `edge_count` edges.
std::vector<ManifoldGraph> enumerate_manifold_graphs(int edge_count, int n, long long budget = 1'000'000);

}  // namespace msg
