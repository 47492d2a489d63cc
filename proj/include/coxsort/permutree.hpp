#pragma once

#include <array>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "permutation.hpp"

namespace coxsort {

enum class Symbol : unsigned char { none, up, down, updown };

inline bool has_up(Symbol s) { return s == Symbol::up || s == Symbol::updown; }
inline bool has_down(Symbol s) { return s == Symbol::down || s == Symbol::updown; }

inline char symbol_char(Symbol s) {
    switch (s) {
        case Symbol::none: return 'n';
        case Symbol::up: return 'u';
        case Symbol::down: return 'd';
        case Symbol::updown: return 'b';
    }
    return '?';
}

inline Symbol complement(Symbol s) {
    switch (s) {
        case Symbol::up: return Symbol::down;
        case Symbol::down: return Symbol::up;
        default: return s;
    }
}

class Decoration {
public:
    Decoration() = default;
    explicit Decoration(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw std::invalid_argument("decoration must be nonempty");
    }
    // One character per symbol: n, u, d, b (both).
    static Decoration parse(const std::string& text) {
        std::vector<Symbol> out;
        for (char c : text) {
            switch (c) {
                case 'n': out.push_back(Symbol::none); break;
                case 'u': out.push_back(Symbol::up); break;
                case 'd': out.push_back(Symbol::down); break;
                case 'b': out.push_back(Symbol::updown); break;
                default: throw std::invalid_argument(std::string("bad decoration symbol '") + c + "'");
            }
        }
        return Decoration(std::move(out));
    }
    static Decoration uniform(std::size_t n, Symbol s) { return Decoration(std::vector<Symbol>(n, s)); }

    // All 4^n decorations in a fixed order.
    static std::vector<Decoration> all(std::size_t n) {
        std::vector<Decoration> out;
        std::size_t total = std::size_t{1} << (2 * n);
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Symbol> s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<Symbol>((code >> (2 * i)) & 3);
            out.emplace_back(std::move(s));
        }
        return out;
    }

    std::size_t size() const { return symbols_.size(); }
    Symbol operator()(std::size_t i) const { return symbols_[i - 1]; }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::string str() const {
        std::string s;
        for (auto x : symbols_) s += symbol_char(x);
        return s;
    }
    friend bool operator==(const Decoration&, const Decoration&) = default;

private:
    std::vector<Symbol> symbols_;
};

// Decreasing permutree with vertices indexed by horizontal position 1..n.
// Slot 0 of children/parents is the left (or only) link, slot 1 the right link.
// Vertices whose symbol allows a single child (or parent) use slot 0 only. 0 = absent.
class DecreasingPermutree {
public:
    struct Vertex {
        Symbol symbol = Symbol::none;
        int label = 0;
        std::array<int, 2> children{0, 0};
        std::array<int, 2> parents{0, 0};
    };

    DecreasingPermutree() = default;
    explicit DecreasingPermutree(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {}

    std::size_t size() const { return vertices_.size(); }
    const Vertex& vertex(int p) const { return vertices_[p - 1]; }
    const std::vector<Vertex>& vertices() const { return vertices_; }

    StdPermutation in_order() const {
        std::vector<int> out;
        for (auto& v : vertices_) out.push_back(v.label);
        return StdPermutation(std::move(out));
    }

    // sigma_post(p) for each position p: greedy leftmost minimal unlisted vertex.
    std::vector<int> postorder_rank() const {
        const int n = static_cast<int>(size());
        std::vector<int> pending(n + 1, 0), rank(n + 1, 0);
        std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
        for (int p = 1; p <= n; ++p) {
            for (int c : vertex(p).children) pending[p] += c != 0;
            if (pending[p] == 0) ready.push(p);
        }
        int next = 1;
        while (!ready.empty()) {
            int p = ready.top();
            ready.pop();
            rank[p] = next++;
            for (int q : vertex(p).parents)
                if (q && --pending[q] == 0) ready.push(q);
        }
        ensure(next == n + 1, "permutree poset has a cycle");
        check_postorder(rank);
        return rank;
    }

    StdPermutation postorder_reading() const {
        auto rank = postorder_rank();
        std::vector<int> out(size());
        for (std::size_t p = 1; p <= size(); ++p) out[rank[p] - 1] = vertices_[p - 1].label;
        return StdPermutation(std::move(out));
    }

    // Descendant sets (inclusive) as bit rows, indexed by position.
    std::vector<std::vector<std::uint64_t>> descendants() const {
        const int n = static_cast<int>(size());
        const std::size_t words = (n + 64) / 64;
        std::vector<std::vector<std::uint64_t>> below(n + 1, std::vector<std::uint64_t>(words, 0));
        std::vector<int> by_label(n + 1);
        for (int p = 1; p <= n; ++p) by_label[vertex(p).label] = p;
        for (int l = 1; l <= n; ++l) {
            int p = by_label[l];
            below[p][p / 64] |= std::uint64_t{1} << (p % 64);
            for (int c : vertex(p).children)
                if (c)
                    for (std::size_t k = 0; k < words; ++k) below[p][k] |= below[c][k];
        }
        return below;
    }

    static bool has_bit(const std::vector<std::uint64_t>& row, int p) {
        return (row[p / 64] >> (p % 64)) & 1;
    }

    bool comparable(int x, int y, const std::vector<std::vector<std::uint64_t>>& below) const {
        return has_bit(below[x], y) || has_bit(below[y], x);
    }

    // An edge from child c up to parent q must pass each intermediate up-wall below
    // its base and each intermediate down-wall above its top.
    bool edge_crosses_wall(int c, int q) const {
        int lo = vertex(c).label, hi = vertex(q).label;
        for (int z = std::min(c, q) + 1; z < std::max(c, q); ++z) {
            const auto& v = vertex(z);
            if (has_up(v.symbol) && v.label < lo) return true;
            if (has_down(v.symbol) && v.label > hi) return true;
            if (v.symbol == Symbol::updown) return true;
        }
        return false;
    }

    // Structural conditions of a decreasing permutree. Returns an empty string when valid.
    std::string violations() const {
        const int n = static_cast<int>(size());
        auto below = descendants();
        for (int p = 1; p <= n; ++p) {
            const auto& v = vertex(p);
            if (!has_up(v.symbol) && v.parents[1]) return "extra parent";
            if (!has_down(v.symbol) && v.children[1]) return "extra child";
            for (int slot = 0; slot < 2; ++slot) {
                int c = v.children[slot];
                if (!c) continue;
                if (vertex(c).label >= v.label) return "labels not decreasing";
                if (has_down(v.symbol)) {
                    for (int d = 1; d <= n; ++d)
                        if (has_bit(below[c], d) && (slot == 0 ? d >= p : d <= p))
                            return "descendant on wrong side";
                }
            }
            if (has_up(v.symbol))
                for (int slot = 0; slot < 2; ++slot) {
                    int q = v.parents[slot];
                    if (!q) continue;
                    for (int a = 1; a <= n; ++a)
                        if (has_bit(below[a], q) && (slot == 0 ? a >= p : a <= p))
                            return "ancestor on wrong side";
                }
        }
        for (int p = 1; p <= n; ++p)
            for (int c : vertex(p).children)
                if (c && edge_crosses_wall(c, p)) return "edge crosses a wall";
        return {};
    }

    // Plane structure with labels erased.
    std::string skeleton() const {
        std::string s;
        for (auto& v : vertices_) {
            s += symbol_char(v.symbol);
            s += std::to_string(v.children[0]) + '/' + std::to_string(v.children[1]) + ';';
        }
        return s;
    }

private:
    void check_postorder(const std::vector<int>& rank) const {
        const int n = static_cast<int>(size());
        auto below = descendants();
        for (int x = 1; x <= n; ++x)
            for (int y = x + 1; y <= n; ++y)
                if (!comparable(x, y, below))
                    ensure(rank[x] < rank[y], "postorder violates horizontal order on incomparable pair");
    }

    std::vector<Vertex> vertices_;
};

// Sweep the points from bottom to top. Between consecutive walls lives exactly one
// strand; a strand remembers the vertex (and parent slot) that emitted it.
inline DecreasingPermutree insert(const StdPermutation& w, const Decoration& delta) {
    const int n = static_cast<int>(w.size());
    if (delta.size() != w.size()) throw std::invalid_argument("decoration length mismatch");
    using Strand = std::pair<int, int>;  // (source position, parent slot); source 0 = unbounded
    std::vector<DecreasingPermutree::Vertex> vs(n);
    std::map<int, Strand> regions;  // keyed by left wall position, 0 = far left
    regions[0] = {0, 0};
    for (int p = 1; p <= n; ++p) {
        vs[p - 1].symbol = delta(p);
        vs[p - 1].label = w(p);
        if (has_down(delta(p))) regions[p] = {0, 0};
    }
    auto winv = inverse(w);
    auto attach = [&](int parent, int child_slot, Strand s) {
        if (!s.first) return;
        vs[parent - 1].children[child_slot] = s.first;
        vs[s.first - 1].parents[s.second] = parent;
    };
    for (int h = 1; h <= n; ++h) {
        int p = winv(h);
        Symbol sym = delta(p);
        if (has_down(sym)) {
            auto right = regions.find(p);
            auto left = std::prev(right);
            attach(p, 0, left->second);
            attach(p, 1, right->second);
            regions.erase(right);
            left->second = {p, 0};
        } else {
            auto it = std::prev(regions.upper_bound(p));
            attach(p, 0, it->second);
            it->second = {p, 0};
        }
        if (has_up(sym)) regions[p] = {p, 1};
    }
    return DecreasingPermutree(std::move(vs));
}

// Class minimum of w: sigma_post composed with the inverse position map.
inline StdPermutation pi_down_permutree(const Decoration& delta, const StdPermutation& w) {
    auto rank = insert(w, delta).postorder_rank();
    return StdPermutation(std::vector<int>(rank.begin() + 1, rank.end()));
}

inline StdPermutation permutree_sort(const Decoration& delta, const StdPermutation& w) {
    auto tree = insert(w, delta);
    auto reading = tree.postorder_reading();
    auto rank = tree.postorder_rank();
    auto via_min = compose(w, inverse(StdPermutation(std::vector<int>(rank.begin() + 1, rank.end()))));
    ensure(reading == via_min, "postorder reading disagrees with w * pi_down(w)^-1");
    return reading;
}

inline bool same_congruence_class(const Decoration& delta, const StdPermutation& v, const StdPermutation& w) {
    if (v.size() != w.size()) throw std::invalid_argument("size mismatch");
    return insert(v, delta).skeleton() == insert(w, delta).skeleton();
}

inline StdPermutation pop_stack(const StdPermutation& w) {
    return permutree_sort(Decoration::uniform(w.size(), Symbol::updown), w);
}

template <class Step>
std::vector<StdPermutation> forward_orbit(const StdPermutation& w, Step step) {
    std::vector<StdPermutation> orbit{w};
    while (!orbit.back().is_identity()) {
        orbit.push_back(step(orbit.back()));
        ensure(orbit.size() <= orbit.front().size() * orbit.front().size() + 2, "orbit does not reach e");
    }
    return orbit;
}

}  // namespace coxsort
