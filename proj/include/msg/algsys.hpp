#pragma once
#include <optional>
#include <string>
#include <vector>

#include "msg/group.hpp"

namespace msg {

// A (partial) binary operation on labelled elements; std::nullopt marks an undefined product.
struct PartialBinarySystem {
    std::vector<std::string> elements;
    std::vector<std::vector<std::optional<int>>> table;
    std::string operation = "o";
    friend bool operator==(const PartialBinarySystem&, const PartialBinarySystem&) = default;
};
void validate(const PartialBinarySystem& sys);
int defined_cell_count(const PartialBinarySystem& sys);
bool is_complete(const PartialBinarySystem& sys);
PartialBinarySystem system_from_group(const FiniteGroup& g, std::string operation = "+");

// {e, a, b} under "·", a cyclic group of order 3 written multiplicatively.
PartialBinarySystem letter_cyclic_system();
// {1, 2, a, b} under "o" with six defined products and no unit.
PartialBinarySystem four_symbol_partial_system();

struct Weight {
    std::string operation;
    int element = 0;  // right operand, as a vertex index
    friend auto operator<=>(const Weight&, const Weight&) = default;
};
struct Arc {
    int from = 0;
    int to = 0;
    Weight weight;
    int system = 0;  // which constituent produced it
    friend bool operator==(const Arc&, const Arc&) = default;
};
struct SystemSlot {
    std::string operation;
    std::vector<int> members;  // vertex indices, in the system's own element order
    friend bool operator==(const SystemSlot&, const SystemSlot&) = default;
};
struct WeightedDigraph {
    std::vector<std::string> vertices;
    std::vector<Arc> arcs;
    std::vector<SystemSlot> systems;
    friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;
};

// Arc a → a∘b weighted (operation, b), one per defined cell, in row-major order.
WeightedDigraph graph_model(const PartialBinarySystem& sys);
// Union over a shared label namespace; vertices in order of first appearance.
WeightedDigraph multispace_graph(const std::vector<PartialBinarySystem>& systems);
// Inverse of graph_model for one constituent; throws InvalidInput naming two conflicting arcs.
PartialBinarySystem reconstruct_system(const WeightedDigraph& d, int system = 0);
std::vector<PartialBinarySystem> reconstruct_multispace(const WeightedDigraph& d);

struct PropertyReport {
    bool connected = true;
    std::vector<int> partition_side;  // one weak component when disconnected
    std::vector<int> left_units;      // every arc out of u is (u, x) weighted x; at least one
    std::vector<int> right_units;     // every arc weighted u is a loop; at least one
    std::vector<int> units;           // both
    // (a, b) with opposite arcs a → 1 weighted b and b → 1 weighted a, through the first unit.
    std::vector<std::pair<int, int>> inverse_pairs;
    bool all_invertible = false;
    std::vector<std::pair<int, int>> commuting_pairs;  // a < b meeting at a common head
    bool cancellation = true;
    std::optional<std::pair<int, int>> parallel_witness;  // arc indices sharing both ends
};
PropertyReport analyze_properties(const WeightedDigraph& d);

// Each vertex has exactly one loop and exactly one arc to every other vertex.
bool is_complete_multiple_2_graph(const WeightedDigraph& d);
// Pairs a < b joined both ways by arcs of the same weight.
std::vector<std::pair<int, int>> equal_weight_opposite_pairs(const WeightedDigraph& d);
std::vector<int> out_degrees(const WeightedDigraph& d);
std::vector<int> in_degrees(const WeightedDigraph& d);

// At vertex c, the arc entering c (from a∘b = c) is matched with an arc leaving c weighted ϖ(b).
struct OneWayMatch {
    int vertex = 0;
    int in_arc = 0;
    int out_arc = 0;
};
struct EulerReport {
    bool euler = false;
    std::optional<int> unbalanced_vertex;   // ρ⁺ ≠ ρ⁻
    std::optional<int> stranded_vertex;     // balanced but outside the main component
    std::vector<OneWayMatch> one_way;       // present when euler
    std::vector<int> circuit;               // arc indices of a closed trail, when euler
};
EulerReport euler_analysis(const WeightedDigraph& d);
// Every arc is matched once as incoming and once as outgoing, at the right vertex.
bool is_one_way_matching(const WeightedDigraph& d, const std::vector<OneWayMatch>& matches);

}  // namespace msg
