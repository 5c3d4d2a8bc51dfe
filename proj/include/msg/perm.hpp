#pragma once
#include <numeric>
#include <span>
#include <vector>

namespace msg {

// A permutation of {0..n-1} stored as its image table.
using Perm = std::vector<int>;
using Cycle = std::vector<int>;

Perm identity_perm(int n);
// (a * b)(x) = a(b(x))
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
bool is_permutation(std::span<const int> p);
std::vector<Cycle> cycles(const Perm& p);
Perm from_cycles(int n, const std::vector<Cycle>& cs);
// Rotate so the smallest element leads.
Cycle canonical_cycle(Cycle c);

// Orbit id for every point under the group generated by gens.
std::vector<int> orbit_labels(int n, std::span<const Perm> gens);
int orbit_count(int n, std::span<const Perm> gens);

// Relabels points in breadth-first order from root, trying generators in order, and lists
// each point's generator images in the new labels. Two transitive systems with the same
// generator sequence are isomorphic by a root-preserving map iff their codes agree.
std::vector<int> rooted_code(std::span<const Perm> gens, int root);

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

}  // namespace msg
