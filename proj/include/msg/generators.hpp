#pragma once
#include <random>
#include <vector>

#include "msg/graph.hpp"
#include "msg/group.hpp"
#include "msg/map.hpp"
#include "msg/phases.hpp"
#include "msg/voltage.hpp"

// Seeded random instances shared by the property tests, the acceptance suite and the CLI.
namespace msg::gen {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);  // inclusive
bool coin(Rng& rng);

// Random spanning tree plus extra edges; loops and parallels only when allowed.
Multigraph connected_graph(Rng& rng, int vertices, int extra_edges, bool multigraph);
// Semi-arc walk of the given length starting anywhere; the graph needs an edge.
std::vector<int> walk(Rng& rng, const Multigraph& g, int length);
// Cycle 0 → 1 → … → m−1 → 0 with random chords, and that cycle as semi-arcs.
std::pair<Multigraph, std::vector<int>> graph_with_circuit(Rng& rng, int m, int chords);

// Groups of order ≤ max_order: abelian ones and dihedral ones. Identity is element 0 in each.
std::vector<FiniteGroup> group_catalogue(int max_order);
// `operations` copies of g with independently permuted labels; keep_identity pins element 0's label.
MultiGroup equal_multigroup(Rng& rng, const FiniteGroup& g, int operations, bool keep_identity);
// Up to `max_parts` catalogue groups placed on random labels drawn from a pool of `max_universe`.
// shared_identity gives every constituent the identity label "e", so all of them meet.
MultiGroup overlapping_multigroup(Rng& rng, int max_universe, int max_parts, bool shared_identity = false);
// Random S̃ whose trace S_i = S̃ ∩ Γ_i is inverse-closed, misses 1_{Γ_i} and generates Γ_i.
// Throws InvalidInput when the multigroup admits none.
std::vector<std::vector<int>> connection_sets(Rng& rng, const MultiGroup& mg);

RotationSystem rotation_system(Rng& rng, const Multigraph& g, bool allow_twists);

MultiVoltage1 voltage1(Rng& rng, Multigraph base, MultiGroup groups);
MultiVoltage2 voltage2(Rng& rng, Multigraph base, MultiGroup groups);
MapVoltage map_voltage(Rng& rng, CombinatorialMap base, MultiGroup groups);

// Simple connected graph with adjacent vertices at distinct random positions.
GraphPhase<double> phase(Rng& rng, int vertices, PhaseOp op);
AffinePhaseFamily affine_family(Rng& rng, int vertices);

}  // namespace msg::gen
