#pragma once
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msg/graph.hpp"

namespace msg {

using Table = std::vector<std::vector<int>>;

struct GroupCheck {
    bool ok = true;
    std::string axiom;        // closure | identity | inverse | associativity
    std::vector<int> witness; // offending elements
};

// Group axioms on a square table of element indices. Throws on a ragged table.
GroupCheck verify_group(const Table& table);

class FiniteGroup {
public:
    FiniteGroup() = default;
    // Throws InvalidInput when the table is not a group.
    FiniteGroup(std::vector<std::string> labels, Table table);

    int order() const { return static_cast<int>(labels_.size()); }
    int op(int a, int b) const { return table_[a][b]; }
    int identity() const { return identity_; }
    int inverse(int a) const { return inverse_[a]; }
    int element_order(int a) const;
    bool is_abelian() const;
    const std::vector<std::string>& labels() const { return labels_; }
    const Table& table() const { return table_; }
    std::optional<int> index_of(const std::string& label) const;
    // Subgroup generated by the given elements.
    std::vector<int> generated(std::span<const int> gens) const;

    friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

private:
    std::vector<std::string> labels_;
    Table table_;
    int identity_ = 0;
    std::vector<int> inverse_;
};

FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
// One representative per isomorphism type of abelian group with order <= max_order.
std::vector<FiniteGroup> abelian_groups_up_to(int max_order);
// Same group with labels permuted by relabel[i] (new label of element i), table rewritten.
FiniteGroup relabelled(const FiniteGroup& g, const std::vector<std::string>& new_labels);

class MultiGroup {
public:
    struct Constituent {
        std::vector<int> members;  // universe indices; members[k] is group element k
        FiniteGroup group;
    };

    MultiGroup() = default;
    MultiGroup(std::vector<std::string> universe, std::vector<Constituent> parts);
    // Constituents given as groups over labels; labels merge by name.
    static MultiGroup from_groups(const std::vector<FiniteGroup>& groups);

    int universe_size() const { return static_cast<int>(universe_.size()); }
    int operation_count() const { return static_cast<int>(parts_.size()); }
    const std::vector<std::string>& universe() const { return universe_; }
    const Constituent& constituent(int i) const { return parts_.at(static_cast<std::size_t>(i)); }
    std::optional<int> index_of(const std::string& label) const;

    bool contains(int i, int a) const { return local_[i][a] >= 0; }
    // a ∘_i b in universe indices, or nullopt when a or b is outside Γ_i.
    std::optional<int> op(int i, int a, int b) const;
    int identity(int i) const;
    int inverse(int i, int a) const;
    int element_order(int i, int a) const;
    int local(int i, int a) const { return local_[i][a]; }
    // Every constituent uses the whole universe.
    bool all_constituents_equal() const;
    std::vector<int> overlap(int i, int j) const;

private:
    std::vector<std::string> universe_;
    std::vector<Constituent> parts_;
    std::vector<std::vector<int>> local_;  // [i][universe index] -> group index or -1
};

// ---- Cayley graphs ----

// Vertices are group element indices; edge {g, gs} once per unordered pair.
Multigraph cayley_graph(const FiniteGroup& g, std::span<const int> s);

struct MultiCayley {
    Multigraph graph;                           // vertices = universe indices
    std::vector<std::vector<int>> provenance;   // per edge: operations producing it
};
// s[i] lists universe indices forming S_i.
MultiCayley cayley_graph_multigroup(const MultiGroup& mg, const std::vector<std::vector<int>>& s);
bool is_multigroup_cayley_connected(const MultiGroup& mg, const std::vector<std::vector<int>>& s);

struct CayleyFactor {
    bool is_matching = false;      // 1-factor when true, 2-factor otherwise
    std::vector<int> generators;   // {s} or {s, s^{-1}}
    std::vector<int> edges;        // indices into cayley_graph's edge list
};
std::vector<CayleyFactor> factorize_cayley(const FiniteGroup& g, std::span<const int> s);
bool is_perfect_matching(const Multigraph& g, std::span<const int> edges);
bool is_two_factor(const Multigraph& g, std::span<const int> edges);

Perm vertex_transitivity_witness(const FiniteGroup& g, int elem);

int joint_number(const MultiGroup& mg, int g, int h);
int joint_sum(const MultiGroup& mg, int g, int h);

}  // namespace msg
