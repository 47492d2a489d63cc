#pragma once

#include <limits>
#include <optional>

#include "fertility.hpp"
#include "parallel.hpp"
#include "permutree.hpp"
#include "series.hpp"

namespace coxsort {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

// Bijection of Z with w(i+n) = w(i)+n and window sum n(n+1)/2, stored as its window.
class AffinePermutation {
public:
    AffinePermutation() = default;
    explicit AffinePermutation(std::vector<std::int64_t> window) : window_(std::move(window)) {
        const auto n = static_cast<std::int64_t>(window_.size());
        if (n == 0) throw std::invalid_argument("affine permutation needs rank at least 1");
        std::vector<char> seen(n, 0);
        std::int64_t sum = 0;
        for (auto x : window_) {
            if (x > value_limit / 4 || x < -value_limit / 4) throw std::invalid_argument("window entry out of range");
            auto r = floor_mod(x, n);
            if (seen[r]) throw std::invalid_argument("window entries clash modulo n");
            seen[r] = 1;
            sum += x;
        }
        if (sum != n * (n + 1) / 2) throw std::invalid_argument("window sum must be n(n+1)/2");
    }

    static AffinePermutation identity(std::size_t n) {
        std::vector<std::int64_t> w(n);
        std::iota(w.begin(), w.end(), 1);
        return AffinePermutation(std::move(w));
    }

    std::size_t rank() const { return window_.size(); }
    const std::vector<std::int64_t>& window() const { return window_; }

    std::int64_t operator()(std::int64_t i) const {
        const auto n = static_cast<std::int64_t>(window_.size());
        return window_[floor_mod(i - 1, n)] + floor_div(i - 1, n) * n;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < window_.size(); ++i)
            if (window_[i] != static_cast<std::int64_t>(i + 1)) return false;
        return true;
    }

    friend bool operator==(const AffinePermutation&, const AffinePermutation&) = default;
    friend auto operator<=>(const AffinePermutation&, const AffinePermutation&) = default;

private:
    std::vector<std::int64_t> window_;
};

inline AffinePermutation make_affine(std::size_t n, std::vector<std::int64_t> window) {
    if (window.size() != n) throw std::invalid_argument("window length must equal n");
    return AffinePermutation(std::move(window));
}

inline AffinePermutation parse_affine(const std::string& text) { return AffinePermutation(parse_integer_list(text)); }

inline std::string format_window(const AffinePermutation& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.rank(); ++i) s += (i ? "," : "") + std::to_string(w.window()[i]);
    return s + "]";
}

inline std::ostream& operator<<(std::ostream& os, const AffinePermutation& w) { return os << format_window(w); }

// Values at positions lo..lo+n-1 folded back into a window.
inline AffinePermutation from_period(std::int64_t lo, const std::vector<std::int64_t>& values) {
    const auto n = static_cast<std::int64_t>(values.size());
    std::vector<std::int64_t> w(n);
    for (std::int64_t t = 0; t < n; ++t) {
        std::int64_t p = lo + t;
        w[floor_mod(p - 1, n)] = values[t] - floor_div(p - 1, n) * n;
    }
    return AffinePermutation(std::move(w));
}

inline AffinePermutation compose(const AffinePermutation& a, const AffinePermutation& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("rank mismatch");
    std::vector<std::int64_t> w(a.rank());
    for (std::size_t i = 1; i <= a.rank(); ++i) w[i - 1] = a(b(static_cast<std::int64_t>(i)));
    return AffinePermutation(std::move(w));
}

inline AffinePermutation inverse(const AffinePermutation& w) {
    const auto n = static_cast<std::int64_t>(w.rank());
    std::vector<std::int64_t> out(n);
    for (std::int64_t r = 1; r <= n; ++r) {
        std::int64_t x = w(r);
        out[floor_mod(x - 1, n)] = r - floor_div(x - 1, n) * n;
    }
    return AffinePermutation(std::move(out));
}

// Swaps i+mn and i+1+mn for every m; i in [n].
inline AffinePermutation simple_generator(std::size_t n, std::size_t i) {
    if (i < 1 || i > n) throw std::invalid_argument("generator index out of range");
    auto w = AffinePermutation::identity(n).window();
    if (n == 1) throw std::invalid_argument("the affine group of rank 1 is trivial");
    if (i < n) {
        std::swap(w[i - 1], w[i]);
    } else {
        w[n - 1] = static_cast<std::int64_t>(n) + 1;
        w[0] = 0;
    }
    return AffinePermutation(std::move(w));
}

inline AffinePermutation right_simple(const AffinePermutation& w, std::size_t i) {
    return compose(w, simple_generator(w.rank(), i));
}
inline AffinePermutation left_simple(std::size_t i, const AffinePermutation& w) {
    return compose(simple_generator(w.rank(), i), w);
}

// Pairs (i, j) with i in [n], i < j and w(i) > w(j).
inline std::uint64_t length(const AffinePermutation& w) {
    const auto n = static_cast<std::int64_t>(w.rank());
    std::uint64_t total = 0;
    for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t r = 1; r <= n; ++r) {
            // j = r + kn with j > i and w(r) + kn < w(i)
            std::int64_t kmin = floor_div(i - r, n) + 1;
            std::int64_t kmax = floor_div(w(i) - w(r) - 1, n);
            if (kmax >= kmin) total += static_cast<std::uint64_t>(kmax - kmin + 1);
        }
    return total;
}

inline std::vector<int> descents(const AffinePermutation& w) {
    std::vector<int> out;
    for (std::int64_t i = 1; i <= static_cast<std::int64_t>(w.rank()); ++i)
        if (w(i) > w(i + 1)) out.push_back(static_cast<int>(i));
    return out;
}

inline AffinePermutation iota(const StdPermutation& u) {
    return AffinePermutation(std::vector<std::int64_t>(u.values().begin(), u.values().end()));
}

inline AffinePermutation shift(const AffinePermutation& v) {
    std::vector<std::int64_t> w(v.rank());
    for (std::size_t i = 1; i <= v.rank(); ++i) w[i - 1] = v(static_cast<std::int64_t>(i) + 1) - 1;
    return AffinePermutation(std::move(w));
}

// Positions in [n] holding left-to-right maxima. Anything further left than n
// places is smaller than its translate inside that window, so n places suffice.
inline std::vector<std::int64_t> left_to_right_maxima(const AffinePermutation& w) {
    const auto n = static_cast<std::int64_t>(w.rank());
    std::vector<std::int64_t> out;
    for (std::int64_t p = 1; p <= n; ++p) {
        bool is_max = true;
        for (std::int64_t j = p - n; j < p && is_max; ++j) is_max = w(j) < w(p);
        if (is_max) out.push_back(p);
    }
    ensure(!out.empty(), "affine permutation without left-to-right maxima");
    return out;
}

// ---- decreasing affine binary plane tree -----------------------------------

struct VertexRef {
    std::int64_t residue = 0;  // in [n]
    std::int64_t period = 0;
    std::int64_t position(std::size_t n) const { return residue + period * static_cast<std::int64_t>(n); }
    VertexRef shifted(std::int64_t periods) const { return {residue, period + periods}; }
    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

inline VertexRef ref_at(std::int64_t position, std::size_t n) {
    const auto m = static_cast<std::int64_t>(n);
    return {floor_mod(position - 1, m) + 1, floor_div(position - 1, m)};
}

// One period of vertices; vertex r describes position r, and the vertex at r + kn
// is its translate with label and child references moved by k periods.
class AffineDecreasingTree {
public:
    struct Vertex {
        std::int64_t label = 0;
        std::optional<VertexRef> left, right;
    };

    AffineDecreasingTree(std::vector<Vertex> vertices, std::vector<std::int64_t> branch)
        : vertices_(std::move(vertices)), branch_(std::move(branch)) {}

    std::size_t rank() const { return vertices_.size(); }
    const Vertex& vertex(std::int64_t residue) const { return vertices_.at(residue - 1); }
    // Residues of the infinite left branch, increasing.
    const std::vector<std::int64_t>& branch() const { return branch_; }

    std::int64_t label(const VertexRef& x) const {
        return vertex(x.residue).label + x.period * static_cast<std::int64_t>(rank());
    }
    std::optional<VertexRef> left(const VertexRef& x) const { return moved(vertex(x.residue).left, x.period); }
    std::optional<VertexRef> right(const VertexRef& x) const { return moved(vertex(x.residue).right, x.period); }

    AffinePermutation in_order() const {
        std::vector<std::int64_t> values;
        for (auto b : branch_) {
            VertexRef x{b, 0};
            values.push_back(label(x));
            if (auto r = right(x)) finite_in_order(*r, values);
        }
        return from_period(branch_.front(), values);
    }

    // sigma_post composed with the inverse position map, i.e. the class minimum.
    AffinePermutation postorder_rank() const {
        const std::size_t n = rank();
        std::vector<VertexRef> order;
        for (auto b : branch_) {
            VertexRef x{b, 0};
            if (auto r = right(x)) finite_postorder(*r, order);
            order.push_back(x);
        }
        ensure(order.size() == n, "postorder does not cover one period");
        // relative ranks 0..n-1, then the additive constant pinned by the window sum
        std::vector<std::int64_t> rel(n);
        std::int64_t sum = 0;
        for (std::size_t t = 0; t < n; ++t) {
            rel[order[t].residue - 1] = static_cast<std::int64_t>(t) - order[t].period * static_cast<std::int64_t>(n);
            sum += rel[order[t].residue - 1];
        }
        const auto m = static_cast<std::int64_t>(n);
        std::int64_t gap = m * (m + 1) / 2 - sum;
        ensure(gap % m == 0, "postorder normalization is not integral");
        for (auto& x : rel) x += gap / m;
        return AffinePermutation(std::move(rel));
    }

    AffinePermutation postorder_reading() const {
        auto rank_of = postorder_rank();
        const auto n = static_cast<std::int64_t>(rank());
        std::vector<std::int64_t> v(n);
        // v(sigma_post(x)) = sigma(x)
        for (std::int64_t r = 1; r <= n; ++r) {
            auto at = ref_at(rank_of(r), rank());
            v[at.residue - 1] = vertex(r).label - at.period * n;
        }
        return AffinePermutation(std::move(v));
    }

private:
    std::optional<VertexRef> moved(const std::optional<VertexRef>& c, std::int64_t periods) const {
        if (!c) return std::nullopt;
        return c->shifted(periods);
    }
    void finite_in_order(const VertexRef& x, std::vector<std::int64_t>& out) const {
        if (auto l = left(x)) finite_in_order(*l, out);
        out.push_back(label(x));
        if (auto r = right(x)) finite_in_order(*r, out);
    }
    void finite_postorder(const VertexRef& x, std::vector<VertexRef>& out) const {
        if (auto l = left(x)) finite_postorder(*l, out);
        if (auto r = right(x)) finite_postorder(*r, out);
        out.push_back(x);
    }

    std::vector<Vertex> vertices_;
    std::vector<std::int64_t> branch_;
};

// Left-to-right maxima form the infinite left branch; the word between consecutive
// maxima is inserted as an ordinary decreasing binary tree hanging to the right.
inline AffineDecreasingTree affine_tree(const AffinePermutation& w) {
    const std::size_t n = w.rank();
    const auto m = static_cast<std::int64_t>(n);
    auto branch = left_to_right_maxima(w);
    std::vector<AffineDecreasingTree::Vertex> vs(n);
    for (std::int64_t p = 1; p <= m; ++p) vs[p - 1].label = w(p);
    const std::size_t r = branch.size();
    for (std::size_t j = 0; j < r; ++j) {
        const std::int64_t here = branch[j];
        const std::int64_t next = j + 1 < r ? branch[j + 1] : branch[0] + m;
        const std::int64_t prev = j > 0 ? branch[j - 1] : branch[r - 1] - m;
        vs[here - 1].left = ref_at(prev, n);
        std::vector<std::int64_t> gap;
        for (std::int64_t p = here + 1; p < next; ++p) gap.push_back(w(p));
        if (gap.empty()) continue;
        auto pattern = standardize(Permutation(gap));
        auto sub = insert(pattern, Decoration::uniform(gap.size(), Symbol::down));
        auto place = [&](int t) { return ref_at(here + t, n); };
        for (int t = 1; t <= static_cast<int>(gap.size()); ++t) {
            auto& target = vs[place(t).residue - 1];
            const auto& c = sub.vertex(t).children;
            const std::int64_t lift = -place(t).period;  // references are stored relative to period 0
            if (c[0]) target.left = place(c[0]).shifted(lift);
            if (c[1]) target.right = place(c[1]).shifted(lift);
            if (pattern(t) == static_cast<int>(gap.size())) vs[here - 1].right = place(t);
        }
    }
    return AffineDecreasingTree(std::move(vs), std::move(branch));
}

inline AffinePermutation pi_down_affine(const AffinePermutation& w) { return affine_tree(w).postorder_rank(); }

inline AffinePermutation affine_stack(const AffinePermutation& w) {
    auto tree = affine_tree(w);
    auto v = tree.postorder_reading();
    ensure(v == compose(w, inverse(tree.postorder_rank())), "affine postorder disagrees with w * pi_down(w)^-1");
    return v;
}

inline AffinePermutation affine_stack_power(AffinePermutation w, int t) {
    while (t-- > 0) w = affine_stack(w);
    return w;
}

inline bool is_231_avoiding(const AffinePermutation& w) { return affine_stack(w).is_identity(); }

// b, c, a at positions x < y < z with a < b < c; x ranges over [n] by periodicity and
// z is bounded because w(z) grows with z.
inline bool has_231_by_scan(const AffinePermutation& w) {
    const auto n = static_cast<std::int64_t>(w.rank());
    auto [lo, hi] = std::minmax_element(w.window().begin(), w.window().end());
    const std::int64_t reach = (*hi - *lo) + 2 * n;
    for (std::int64_t x = 1; x <= n; ++x) {
        std::int64_t running = std::numeric_limits<std::int64_t>::min();
        for (std::int64_t z = x + 1; z <= x + reach; ++z) {
            if (w(z) < w(x) && running > w(x)) return true;
            running = std::max(running, w(z));
        }
    }
    return false;
}

// ---- weak order exploration ------------------------------------------------

// Every element of length at most max_length, by breadth-first search from e.
inline std::vector<AffinePermutation> elements_up_to_length(std::size_t n, std::uint64_t max_length) {
    std::vector<AffinePermutation> out{AffinePermutation::identity(n)};
    if (n == 1) return out;
    std::set<AffinePermutation> seen(out.begin(), out.end());
    std::size_t layer_begin = 0;
    for (std::uint64_t len = 0; len < max_length; ++len) {
        std::size_t layer_end = out.size();
        for (std::size_t k = layer_begin; k < layer_end; ++k)
            for (std::size_t i = 1; i <= n; ++i) {
                auto x = right_simple(out[k], i);
                if (length(x) == len + 1 && seen.insert(x).second) out.push_back(x);
            }
        layer_begin = layer_end;
    }
    return out;
}

constexpr std::size_t avoider_cap_default = 6;
constexpr std::uint64_t avoider_length_ceiling = 200;

struct AvoiderEnumeration {
    std::vector<AffinePermutation> avoiders;  // in breadth-first order
    std::uint64_t max_length = 0;             // K(n)
};

// Swapping an adjacent inversion cannot create a 231, so the avoiders are closed under
// lower covers in the right weak order and the search only expands avoiders.
inline AvoiderEnumeration enumerate_231_avoiders(std::size_t n, std::size_t cap = avoider_cap_default) {
    if (n > cap) throw std::invalid_argument("n exceeds the avoider enumeration cap");
    const Count certificate = binomial(2 * static_cast<long>(n) - 1, static_cast<long>(n));
    AvoiderEnumeration res;
    res.avoiders.push_back(AffinePermutation::identity(n));
    std::set<AffinePermutation> seen(res.avoiders.begin(), res.avoiders.end());
    std::size_t layer_begin = 0;
    for (std::uint64_t len = 0; n > 1 && Count(res.avoiders.size()) < certificate; ++len) {
        if (len >= avoider_length_ceiling || layer_begin == res.avoiders.size())
            throw internal_error("231-avoider search stopped before reaching the expected count");
        std::size_t layer_end = res.avoiders.size();
        for (std::size_t k = layer_begin; k < layer_end; ++k)
            for (std::size_t i = 1; i <= n; ++i) {
                auto x = right_simple(res.avoiders[k], i);
                if (length(x) != len + 1 || seen.count(x)) continue;
                seen.insert(x);
                if (is_231_avoiding(x)) res.avoiders.push_back(x);
            }
        layer_begin = layer_end;
    }
    ensure(Count(res.avoiders.size()) == certificate, "231-avoider count overshoots");
    for (auto& a : res.avoiders) res.max_length = std::max(res.max_length, length(a));
    return res;
}

// ---- skylines and fertility ------------------------------------------------

struct Skyline {
    AffinePermutation base;
    std::vector<std::int64_t> residues;   // chosen maxima positions reduced to [n]
    std::vector<std::int64_t> positions;  // P_1 <= 1 < P_2 < ... < P_{r+1} = P_1 + n
    std::size_t periods() const { return positions.size() - 1; }  // r
    std::int64_t maximum(std::size_t i) const { return base(positions.at(i - 1)); }
};

inline Skyline make_skyline(const AffinePermutation& v, std::vector<std::int64_t> residues) {
    const auto n = static_cast<std::int64_t>(v.rank());
    std::sort(residues.begin(), residues.end());
    if (residues.empty()) throw std::invalid_argument("skyline needs a nonempty set of maxima");
    std::int64_t first = residues.front() == 1 ? 1 : residues.back() - n;
    std::vector<std::int64_t> pos;
    for (auto r : residues) pos.push_back(r > first ? r : r + n);  // P_2 .. P_{r+1} lie in (first, first+n]
    std::sort(pos.begin(), pos.end());
    pos.insert(pos.begin(), first);
    return {v, std::move(residues), std::move(pos)};
}

inline std::vector<Skyline> skylines(const AffinePermutation& v) {
    auto maxima = left_to_right_maxima(v);
    std::vector<Skyline> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << maxima.size()); ++mask) {
        std::vector<std::int64_t> chosen;
        for (std::size_t b = 0; b < maxima.size(); ++b)
            if (mask >> b & 1) chosen.push_back(maxima[b]);
        out.push_back(make_skyline(v, chosen));
    }
    return out;
}

// z_1 .. z_r: the words strictly underneath each hook.
inline std::vector<Permutation> segments(const Skyline& s) {
    std::vector<Permutation> out;
    for (std::size_t i = 0; i + 1 < s.positions.size(); ++i) {
        std::vector<std::int64_t> z;
        for (std::int64_t p = s.positions[i] + 1; p < s.positions[i + 1]; ++p) z.push_back(s.base(p));
        out.emplace_back(std::move(z));
    }
    return out;
}

struct AffineVHC {
    Skyline skyline;
    std::vector<ValidHookConfiguration> parts;  // one per segment
};

inline std::vector<AffineVHC> enumerate_affine_vhcs(const AffinePermutation& v) {
    std::vector<AffineVHC> out;
    for (auto& s : skylines(v)) {
        auto zs = segments(s);
        std::vector<std::vector<ValidHookConfiguration>> options;
        for (auto& z : zs) options.push_back(enumerate_vhcs(z));
        std::vector<ValidHookConfiguration> pick(zs.size());
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == zs.size()) {
                out.push_back({s, pick});
                return;
            }
            for (auto& h : options[i]) {
                pick[i] = h;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

inline std::vector<std::size_t> q_composition(const AffineVHC& h) {
    std::vector<std::size_t> q;
    auto zs = segments(h.skyline);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        auto part = q_composition(standardize(zs[i]), h.parts[i]);
        if (!zs[i].empty()) q.insert(q.end(), part.begin(), part.end());
    }
    return q;
}

// Sum over skylines of the product of segment preimage counts (finite preimages by brute force).
inline Count fertility_by_decomposition(const AffinePermutation& v) {
    Count total = 0;
    for (auto& s : skylines(v)) {
        Count product = 1;
        for (auto& z : segments(s)) product *= stack_preimages(z).size();
        total += product;
    }
    return total;
}

inline Count fertility_by_hook_configurations(const AffinePermutation& v) {
    Count total = 0;
    for (auto& h : enumerate_affine_vhcs(v)) total += catalan_product(q_composition(h));
    return total;
}

inline Count affine_fertility(const AffinePermutation& v) {
    Count aff = fertility_by_hook_configurations(v);
    bool small = true;
    for (auto& s : skylines(v))
        for (auto& z : segments(s)) small &= z.size() <= brute_fertility_cap;
    if (small) ensure(aff == fertility_by_decomposition(v), "affine fertility formulas disagree");
    return aff;
}

// Every preimage: a skyline, a preimage of each segment, then the blocks [z_i, m_{i+1}]
// of v become [m_{i+1}, u_i] in place.
inline std::vector<AffinePermutation> affine_preimages(const AffinePermutation& v) {
    std::vector<AffinePermutation> out;
    for (auto& s : skylines(v)) {
        auto zs = segments(s);
        std::vector<std::vector<Permutation>> options;
        for (auto& z : zs) options.push_back(stack_preimages(z));
        std::vector<std::int64_t> word;
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == zs.size()) {
                out.push_back(from_period(s.positions.front() + 1, word));
                return;
            }
            for (auto& u : options[i]) {
                const std::size_t mark = word.size();
                word.push_back(s.maximum(i + 2));
                word.insert(word.end(), u.values().begin(), u.values().end());
                self(self, i + 1);
                word.resize(mark);
            }
        };
        rec(rec, 0);
    }
    for (auto& w : out) ensure(affine_stack(w) == v, "constructed preimage does not sort to v");
    return out;
}

// Class minimum by walking down: swap values i+1 and i (all translates) while i+1 comes
// first and something larger sits between them.
inline AffinePermutation pi_down_by_descent_walk(AffinePermutation w) {
    const auto n = static_cast<std::int64_t>(w.rank());
    if (n == 1) return w;
    for (bool moved = true; moved;) {
        moved = false;
        auto winv = inverse(w);
        for (std::int64_t i = 1; i <= n && !moved; ++i) {
            std::int64_t hi = winv(i + 1), lo = winv(i);
            if (hi > lo) continue;
            for (std::int64_t p = hi + 1; p < lo; ++p)
                if (w(p) > i + 1) {
                    w = left_simple(static_cast<std::size_t>(i), w);
                    moved = true;
                    break;
                }
        }
    }
    return w;
}

inline bool same_affine_class(const AffinePermutation& v, const AffinePermutation& w) {
    return pi_down_affine(v) == pi_down_affine(w);
}

// ---- uniquely sorted classes and 2-stack-sortable counts ----------------------

constexpr std::size_t class_count_cap_default = 3;

inline bool is_uniquely_sorted_affine(const AffinePermutation& v) {
    Count f = affine_fertility(v);
    bool by_descents = f > 0 && descents(v).size() * 2 == v.rank();
    ensure((f == 1) == by_descents, "uniquely sorted characterizations disagree");
    return f == 1;
}

inline Count uniquely_sorted_class_formula(long k) {
    Count tail = 0;
    for (long i = 0; i <= k; ++i) tail += binomial(4 * k, i);
    return 3 * binomial(4 * k, k) - 2 * tail;
}

inline Count uniquely_sorted_class_count(std::size_t k, std::size_t cap = class_count_cap_default) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (k > cap) throw std::invalid_argument("k exceeds the uniquely sorted class cap");
    auto avoiders = enumerate_231_avoiders(2 * k, std::max(avoider_cap_default, 2 * k)).avoiders;
    std::vector<char> unique(avoiders.size(), 0);
    parallel_for(avoiders.size(), [&](std::size_t t) { unique[t] = is_uniquely_sorted_affine(avoiders[t]); });
    Count count = std::count(unique.begin(), unique.end(), 1);
    ensure(count == uniquely_sorted_class_formula(static_cast<long>(k)), "uniquely sorted class count off formula");
    return count;
}

constexpr std::size_t count_2ss_cap_default = 5;

struct TwoStackCounts {
    std::size_t n = 0;
    Count by_fertility;     // sum of fertilities over 231-avoiders
    Count by_compositions;  // composition sum over finite 2-stack-sortable pieces
    Count by_series;        // coefficient of the generating function identity
};

inline Count count_2ss_by_fertility(std::size_t n, std::size_t cap = count_2ss_cap_default) {
    if (n > cap) throw std::invalid_argument("n exceeds the 2-stack-sortable cap");
    auto avoiders = enumerate_231_avoiders(n, std::max(avoider_cap_default, n)).avoiders;
    std::vector<Count> f(avoiders.size());
    parallel_for(avoiders.size(), [&](std::size_t t) { f[t] = affine_fertility(avoiders[t]); });
    Count total = 0;
    for (auto& x : f) total += x;
    return total;
}

// f(k) = sum over 2-stack-sortable tau of size k-1 of (slmax(tau) + 1).
inline Count two_stack_piece_weight(std::size_t k) {
    if (k == 0) throw std::invalid_argument("piece size must be positive");
    Count total = 0;
    for (auto& tau : all_permutations(k - 1))
        if (is_t_stack_sortable(tau, 2)) total += slmax(tau.general()) + 1;
    return total;
}

inline Count count_2ss_by_compositions(std::size_t n) {
    std::vector<Count> f(n + 1);
    for (std::size_t k = 1; k <= n; ++k) f[k] = two_stack_piece_weight(k);
    // tail[m] = sum over compositions of m of the product of f over the parts
    std::vector<Count> tail(n + 1, 0);
    tail[0] = 1;
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t k = 1; k <= m; ++k) tail[m] += f[k] * tail[m - k];
    Count total = 0;
    for (std::size_t first = 1; first <= n; ++first) total += Count(first) * f[first] * tail[n - first];
    return total;
}

// Counts of 2-stack-sortable permutations by size. The closed form evaluates to 2 at
// size 0, but the empty permutation is the only one there, so that term is 1.
inline Series two_stack_series(std::size_t order) {
    Series s(order);
    s[0] = 1;
    for (std::size_t k = 1; k <= order; ++k) {
        auto m = static_cast<long>(k);
        s[k] = Rational(2 * binomial(3 * m, m)) / ((m + 1) * (2 * m + 1));
    }
    return s;
}

// Coefficients 1..n of  qI'/(I(I-1)) - 1, written as I'/(I * (I-1)/q) - 1.
inline Series affine_two_stack_series(std::size_t n) {
    auto big = two_stack_series(n + 1);
    auto reduced = (big - Rational(1)).divided_by_q();  // order n
    auto result = big.derivative() * (big * reduced).reciprocal() - Rational(1);
    Series trimmed(n);
    for (std::size_t k = 0; k <= n; ++k) trimmed[k] = result[k];
    // (result + 1) * I * (I - 1) = q I'
    auto lhs = (trimmed + Rational(1)) * big * (big - Rational(1));
    auto rhs = big.derivative().times_q();
    for (std::size_t k = 0; k <= n; ++k) ensure(lhs[k] == rhs[k], "generating function identity fails");
    return trimmed;
}

inline Count count_2ss_by_series(std::size_t n) {
    auto c = affine_two_stack_series(n)[n];
    ensure(denominator(c) == 1, "series coefficient is not an integer");
    return numerator(c);
}

inline TwoStackCounts count_2ss(std::size_t n, std::size_t cap = count_2ss_cap_default) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    TwoStackCounts c{n, count_2ss_by_fertility(n, cap), count_2ss_by_compositions(n), count_2ss_by_series(n)};
    ensure(c.by_fertility == c.by_compositions && c.by_compositions == c.by_series,
           "2-stack-sortable counts disagree");
    return c;
}

// ---- descent witnesses -----------------------------------------------------

// An element whose image attains floor(n/2) descents: iota of a finite witness for odd n,
// the rank-2 witness [-1,4] read as an element of rank n for even n.
inline AffinePermutation affine_descent_witness(std::size_t n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<std::int64_t> w;
    if (n % 2 == 1) {
        if (n == 1) return AffinePermutation::identity(1);
        w.push_back(2);
        for (std::int64_t k = 4; k <= static_cast<std::int64_t>(n) - 1; k += 2) {
            w.push_back(k);
            w.push_back(k - 3);
        }
        w.push_back(static_cast<std::int64_t>(n));
        w.push_back(static_cast<std::int64_t>(n) - 2);
    } else {
        AffinePermutation small({-1, 4});
        for (std::int64_t i = 1; i <= static_cast<std::int64_t>(n); ++i) w.push_back(small(i));
    }
    return AffinePermutation(std::move(w));
}

}  // namespace coxsort
