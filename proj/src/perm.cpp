#include "msg/perm.hpp"

#include <algorithm>

#include "msg/error.hpp"

namespace msg {

Perm identity_perm(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    require(a.size() == b.size(), "compose: size mismatch");
    Perm r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
    return r;
}

Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<int>(x);
    return r;
}

bool is_permutation(std::span<const int> p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

std::vector<Cycle> cycles(const Perm& p) {
    std::vector<Cycle> out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s]) continue;
        Cycle c;
        for (int x = static_cast<int>(s); !seen[x]; x = p[x]) {
            seen[x] = 1;
            c.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

Perm from_cycles(int n, const std::vector<Cycle>& cs) {
    Perm p = identity_perm(n);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (const auto& c : cs) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            int x = c[i];
            require(x >= 0 && x < n, "cycle element out of range");
            require(!used[x], "element repeated across cycles");
            used[x] = 1;
            p[x] = c[(i + 1) % c.size()];
        }
    }
    return p;
}

Cycle canonical_cycle(Cycle c) {
    if (c.empty()) return c;
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    return c;
}

std::vector<int> orbit_labels(int n, std::span<const Perm> gens) {
    DisjointSets ds(n);
    for (const auto& g : gens)
        for (int x = 0; x < n; ++x) ds.unite(x, g[x]);
    std::vector<int> label(static_cast<std::size_t>(n), -1), root_id(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int x = 0; x < n; ++x) {
        int r = ds.find(x);
        if (root_id[r] < 0) root_id[r] = next++;
        label[x] = root_id[r];
    }
    return label;
}

int orbit_count(int n, std::span<const Perm> gens) {
    auto l = orbit_labels(n, gens);
    return n == 0 ? 0 : *std::max_element(l.begin(), l.end()) + 1;
}

}  // namespace msg

namespace msg {

std::vector<int> rooted_code(std::span<const Perm> gens, int root) {
    require(!gens.empty(), "rooted_code: no generators");
    const std::size_t n = gens.front().size();
    std::vector<int> label(n, -1), order;
    order.reserve(n);
    label[root] = 0;
    order.push_back(root);
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (const auto& g : gens) {
            int y = g[order[head]];
            if (label[y] < 0) {
                label[y] = static_cast<int>(order.size());
                order.push_back(y);
            }
        }
    }
    std::vector<int> code;
    code.reserve(order.size() * gens.size() + 1);
    code.push_back(static_cast<int>(order.size()));
    for (int x : order)
        for (const auto& g : gens) code.push_back(label[g[x]]);
    return code;
}

}  // namespace msg
