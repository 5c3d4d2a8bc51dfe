#pragma once
#include <optional>
#include <string>
#include <vector>

#include "msg/graph.hpp"
#include "msg/group.hpp"

namespace msg {

// ψ[e] is the voltage on the semi-arc leaving the tail of e; the reverse
// direction carries its inverse, resolved per operation.
struct MultiVoltage1 {
    Multigraph base;
    MultiGroup groups;
    std::vector<int> psi;  // universe indices
};

struct MultiVoltage2 {
    Multigraph base;
    MultiGroup groups;
    std::vector<int> vertex_class;  // constituent index per base vertex
    std::vector<int> tau;           // universe index per edge, tail -> head
};

struct LiftedGraph {
    struct Origin {
        int base_edge;
        int fiber;      // universe element at the tail end
        int operation;
    };
    Multigraph graph;
    std::vector<std::pair<int, int>> vertex_label;  // (base vertex, universe element)
    std::vector<Origin> edge_origin;
    std::vector<int> index;  // base vertex * |universe| + element -> lifted vertex, or -1
    int universe = 0;

    int vertex(int v, int a) const { return index[static_cast<std::size_t>(v * universe + a)]; }
    // Edges of one operation only (Thm 2.2.4 summand).
    Multigraph sublift(int operation) const;
};

void validate(const MultiVoltage1& mv);
void validate(const MultiVoltage2& mv);

LiftedGraph lift_type1(const MultiVoltage1& mv);
LiftedGraph lift_type2(const MultiVoltage2& mv);

// A walk as semi-arcs; semi-arc s leaves semi_arc_vertex(s) along its edge.
bool is_walk(const Multigraph& g, std::span<const int> walk);

struct LiftedWalk {
    std::vector<int> operations;
    std::vector<int> vertices;  // lifted vertex ids, length k+1
    std::vector<int> edges;     // lifted edge ids
};
std::vector<LiftedWalk> lift_walk(const MultiVoltage1& mv, const LiftedGraph& lift, std::span<const int> walk,
                                  int start_fiber);
// Upper bound from the containment counts, Σ over feasible sequences, without building walks.
long long count_walk_liftings(const MultiVoltage1& mv, std::span<const int> walk, int start_fiber);

struct HomogeneousLifting {
    int operation;
    int product;   // ψ(C, ∘_i)
    int order;     // o(ψ(C, ∘_i))
    int count;     // |Γ| / order
    int length;    // order · m
};
std::vector<HomogeneousLifting> circuit_homogeneous_liftings(const MultiVoltage1& mv, std::span<const int> circuit);
// Orbit lengths found by walking the circuit inside the actual lift under one operation.
std::vector<int> circuit_lift_orbits(const MultiVoltage1& mv, const LiftedGraph& lift, std::span<const int> circuit,
                                     int operation);

Perm left_subaction(const MultiVoltage1& mv, const LiftedGraph& lift, int operation, int element);

struct QuotientGraph {
    Multigraph graph;
    std::vector<int> vertex_orbit;  // per vertex of the original
    std::vector<int> edge_orbit;    // per edge of the original
};
// `action` must list every element of a permutation group of automorphisms.
QuotientGraph quotient_graph(const Multigraph& g, const std::vector<Perm>& action);

// Permutations of the lifted vertex set labelled by group element names.
struct LabelledAction {
    std::vector<std::string> labels;
    std::vector<Perm> perms;
};
// The group structure read off the composition of the permutations.
FiniteGroup action_group(const LabelledAction& act);
LabelledAction unlabelled_action(const std::vector<Perm>& perms);

struct VoltageReconstruction1 {
    MultiVoltage1 voltage;
    LiftedGraph lift;
    Perm iso;  // lift vertex -> original vertex
};
// edge_classes[i] = edges of the original forming the operation-i summand.
VoltageReconstruction1 reconstruct_voltage_from_action(const Multigraph& g,
                                                       const std::vector<std::vector<int>>& edge_classes,
                                                       const std::vector<LabelledAction>& actions);

struct VoltageReconstruction2 {
    MultiVoltage2 voltage;
    LiftedGraph lift;
    Perm iso;
};
// vertex_class[x] picks the constituent acting on original vertex x; edges keep orientation.
VoltageReconstruction2 reconstruct_type2_from_action(const Multigraph& g, const std::vector<int>& vertex_class,
                                                     const std::vector<LabelledAction>& actions);

// Lifted graph mapped through iso has the same edge multiset as target.
bool lift_matches(const LiftedGraph& lift, const Perm& iso, const Multigraph& target);

struct BouquetCayley {
    MultiVoltage1 voltage;
    LiftedGraph lift;
    Perm iso;          // lifted vertex (O, g) -> universe element g
    bool isomorphic;   // simple graph under the lift equals the Cayley graph
};
BouquetCayley cayley_as_bouquet_lift(const MultiGroup& mg, const std::vector<std::vector<int>>& s);
// Parallel edges merged into one.
Multigraph underlying_simple(const Multigraph& g);

}  // namespace msg
