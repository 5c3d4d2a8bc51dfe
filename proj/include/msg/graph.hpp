#pragma once
#include <Eigen/Core>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "msg/perm.hpp"

namespace msg {

struct Edge {
    int tail = 0;
    int head = 0;
    bool is_loop() const { return tail == head; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

// Semi-arc id: 2*edge + end, where end 0 sits at the tail and end 1 at the head.
inline int semi_arc(int edge, int end) { return 2 * edge + end; }
inline int semi_arc_edge(int s) { return s / 2; }
inline int semi_arc_end(int s) { return s % 2; }

class Multigraph {
public:
    Multigraph() = default;
    explicit Multigraph(int vertex_count, std::vector<Edge> edges = {});

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

    int add_vertex() { return vertex_count_++; }
    int add_edge(int u, int v);

    int semi_arc_vertex(int s) const;
    int valency(int v) const;
    std::vector<int> valencies() const;
    // Semi-arcs at each vertex, ordered by semi-arc id.
    std::vector<std::vector<int>> incident_semi_arcs() const;
    // Neighbour list per vertex (with multiplicity, loops listed twice).
    std::vector<std::vector<int>> neighbours() const;

    bool is_simple() const;
    bool is_connected() const;
    int component_count() const;
    // β(G) = ε − ν + c
    int betti() const;
    bool has_edge(int u, int v) const;

    friend bool operator==(const Multigraph&, const Multigraph&) = default;

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
};

// Standard families.
Multigraph empty_graph(int n);
Multigraph complete_graph(int n);
Multigraph cycle_graph(int n);  // n = 1 is a loop, n = 2 a double edge
Multigraph path_graph(int n);   // n vertices
Multigraph complete_bipartite(int m, int n);
Multigraph bouquet(int loops);
Multigraph dipole(int s, int l, int t);  // D_{s.l.t}

// Same vertex count and equal edge multisets (as unordered endpoint pairs).
bool same_edge_multiset(const Multigraph& a, const Multigraph& b);
// Brute-force isomorphism for small graphs; returns vertex map a -> b.
std::optional<std::vector<int>> find_isomorphism(const Multigraph& a, const Multigraph& b);

Eigen::MatrixXi adjacency_matrix(const Multigraph& g);

// Degree sequences.
bool is_graphical_hh(std::span<const int> seq);
bool is_graphical_eg(std::span<const int> seq);
// Havel–Hakimi realization, vertex i receiving seq[i].
std::optional<Multigraph> realize_sequence(std::span<const int> seq);

struct EccentricityProfile {
    std::vector<int> eccentricity;      // per vertex
    std::vector<int> values;            // distinct, increasing
    int radius = 0;
    int diameter = 0;
    std::map<int, std::vector<int>> multiplicity;  // N_G(l)
};

std::vector<int> bfs_distances(const Multigraph& g, int source);
EccentricityProfile eccentricity_profile(const Multigraph& g);
bool validate_ecc_value_sequence(std::span<const int> seq);
Multigraph construct_ecc_witness(int r, int s);

struct SearchLimits {
    int hamiltonian_vertices = 12;
    int cut_vertices = 20;
    int automorphism_semi_arcs = 10;
};

// Closed walk through every vertex once, as a vertex sequence.
std::optional<std::vector<int>> brute_force_hamiltonian(const Multigraph& g,
                                                        const SearchLimits& lim = {});
bool is_hamiltonian_circuit_via_cuts(const Multigraph& g, std::span<const int> circuit_edges,
                                     const SearchLimits& lim = {});
// True iff the edge subset forms one circuit.
bool is_circuit(const Multigraph& g, std::span<const int> edges);
bool spans_all_vertices(const Multigraph& g, std::span<const int> edges);

Multigraph closure(const Multigraph& g);

// Vertex sequences of n edge-disjoint hamiltonian circuits of K_{2n+1}.
std::vector<std::vector<int>> decompose_complete_odd(int n);

Multigraph splitting_operator(const Multigraph& g, int u);
int splitting_vertex_count(const Multigraph& g, int u);

// Union over a shared id space; an edge present in both counts once per multiplicity max.
Multigraph graph_union(const Multigraph& a, const Multigraph& b);
Multigraph graph_join(const Multigraph& a, const Multigraph& b);
Multigraph cartesian_product(const Multigraph& a, const Multigraph& b);
Multigraph complement(const Multigraph& g);
// Subgraph on `vertices` (renumbered in the given order) with every edge between them.
Multigraph induced_subgraph(const Multigraph& g, std::span<const int> vertices);
// Vertex lists of the connected components.
std::vector<std::vector<int>> components(const Multigraph& g);

// Vertex permutation mapping the edge multiset onto itself.
bool is_vertex_automorphism(const Multigraph& g, const Perm& p);
// Image of g under a vertex relabelling (edge order kept).
Multigraph relabel(const Multigraph& g, const Perm& p);

// |Aut_{1/2} G| by exhaustive search over semi-arc bijections.
long long semi_arc_automorphism_order(const Multigraph& g, const SearchLimits& lim = {});
// |Aut G| on vertices, edge multiplicities preserved.
long long vertex_automorphism_order(const Multigraph& g);

struct EdgePart {
    enum class Kind { bouquet, dipole } kind;
    std::vector<int> vertices;  // one for a bouquet, two for a dipole
    std::vector<int> edges;
};
std::vector<EdgePart> decompose_bouquets_dipoles(const Multigraph& g);

}  // namespace msg
