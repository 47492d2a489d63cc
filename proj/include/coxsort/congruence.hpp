#pragma once

#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "permutree.hpp"
#include "union_find.hpp"

namespace coxsort {

// ---- the symmetric group as a table --------------------------------------

// S_n in Lehmer order with inversion sets as bitmasks over position pairs.
class WeakOrderTable {
public:
    explicit WeakOrderTable(std::size_t n) : n_(n), elements_(all_permutations(n)) {
        if (n > 11) throw std::invalid_argument("weak order table limited to n <= 11");
        masks_.reserve(elements_.size());
        lengths_.reserve(elements_.size());
        for (std::size_t r = 0; r < elements_.size(); ++r) {
            std::uint64_t m = 0;
            const auto& v = elements_[r].values();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (v[i] > v[j]) m |= bit(i, j);
            masks_.push_back(m);
            lengths_.push_back(static_cast<int>(std::popcount(m)));
            by_mask_.emplace(m, r);
        }
    }

    std::size_t n() const { return n_; }
    std::size_t count() const { return elements_.size(); }
    const StdPermutation& element(std::size_t r) const { return elements_[r]; }
    const std::vector<StdPermutation>& elements() const { return elements_; }
    int length(std::size_t r) const { return lengths_[r]; }
    std::uint64_t mask(std::size_t r) const { return masks_[r]; }
    std::size_t rank(const StdPermutation& w) const { return lehmer_rank(w); }
    std::size_t identity() const { return 0; }

    bool leq_left(std::size_t a, std::size_t b) const { return (masks_[a] & ~masks_[b]) == 0; }

    std::size_t meet(std::size_t a, std::size_t b) const {
        std::uint64_t m = masks_[a] & masks_[b];
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t k = i + 2; k < n_; ++k) {
                    if (!(m & bit(i, k))) continue;
                    for (std::size_t j = i + 1; j < k; ++j)
                        if (!(m & bit(i, j)) && !(m & bit(j, k))) {
                            m &= ~bit(i, k);
                            changed = true;
                            break;
                        }
                }
        }
        auto it = by_mask_.find(m);
        ensure(it != by_mask_.end(), "meet produced a non-inversion set");
        return it->second;
    }

    // Upper covers s_i w (value i before i+1), as (i, rank).
    std::vector<std::pair<int, std::size_t>> upper_covers(std::size_t r) const {
        std::vector<std::pair<int, std::size_t>> out;
        auto inv = inverse(elements_[r]);
        for (int i = 1; i < static_cast<int>(n_); ++i)
            if (inv(i) < inv(i + 1)) out.emplace_back(i, lehmer_rank(left_simple(i, elements_[r])));
        return out;
    }

    std::vector<std::pair<int, std::size_t>> lower_covers(std::size_t r) const {
        std::vector<std::pair<int, std::size_t>> out;
        auto inv = inverse(elements_[r]);
        for (int i = 1; i < static_cast<int>(n_); ++i)
            if (inv(i) > inv(i + 1)) out.emplace_back(i, lehmer_rank(left_simple(i, elements_[r])));
        return out;
    }

    static std::shared_ptr<const WeakOrderTable> get(std::size_t n) {
        static std::mutex mu;
        static std::map<std::size_t, std::shared_ptr<const WeakOrderTable>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[n];
        if (!slot) slot = std::make_shared<WeakOrderTable>(n);
        return slot;
    }

private:
    std::uint64_t bit(std::size_t i, std::size_t j) const { return std::uint64_t{1} << (i * n_ + j - (i + 1) * (i + 2) / 2); }

    std::size_t n_;
    std::vector<StdPermutation> elements_;
    std::vector<std::uint64_t> masks_;
    std::vector<int> lengths_;
    std::unordered_map<std::uint64_t, std::size_t> by_mask_;
};

// ---- fences --------------------------------------------------------------

struct FenceLabel {
    int a = 0, b = 0;
    std::uint32_t rest = 0;  // bit p set when p is in R

    std::vector<int> rest_positions() const {
        std::vector<int> out;
        for (int p = a + 1; p < b; ++p)
            if (rest >> p & 1) out.push_back(p);
        return out;
    }
    std::string str() const {
        std::string s = "(" + std::to_string(a) + "," + std::to_string(b) + ";{";
        bool first = true;
        for (int p : rest_positions()) {
            if (!first) s += ",";
            s += std::to_string(p);
            first = false;
        }
        return s + "})";
    }
    friend bool operator==(const FenceLabel&, const FenceLabel&) = default;
    friend auto operator<=>(const FenceLabel&, const FenceLabel&) = default;
};

inline std::uint32_t open_interval_mask(int a, int b) {
    std::uint32_t m = 0;
    for (int p = a + 1; p < b; ++p) m |= std::uint32_t{1} << p;
    return m;
}

inline std::vector<FenceLabel> all_fences(std::size_t n) {
    if (n < 2) throw std::invalid_argument("fences need n >= 2");
    if (n > 20) throw std::invalid_argument("fences limited to n <= 20");
    std::vector<FenceLabel> out;
    const int m = static_cast<int>(n);
    for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b) {
            std::uint32_t span = open_interval_mask(a, b);
            // enumerate subsets of span
            std::uint32_t sub = 0;
            do {
                out.push_back({a, b, sub});
                sub = (sub - span) & span;
            } while (sub != 0);
        }
    return out;
}

inline bool forcing_leq(const FenceLabel& f, const FenceLabel& g) {
    return f.a <= g.a && g.a < g.b && g.b <= f.b && g.rest == (f.rest & open_interval_mask(g.a, g.b));
}

// Label of the cover v < s_i v (value i precedes i+1 in v).
inline FenceLabel edge_label(const StdPermutation& v, int i) {
    auto inv = inverse(v);
    FenceLabel f{inv(i), inv(i + 1), 0};
    if (f.a >= f.b) throw std::invalid_argument("not an upward cover");
    for (int p = f.a + 1; p < f.b; ++p)
        if (v(p) < i) f.rest |= std::uint32_t{1} << p;
    return f;
}

// ---- congruences ---------------------------------------------------------

class Congruence {
public:
    enum class Kind { permutree, fence_ideal, interval, explicit_partition };

    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    Congruence() = default;

    // Build from a class-id per Lehmer rank; minima (and maxima where unique) by length.
    Congruence(std::size_t n, const std::vector<std::size_t>& raw_ids, Kind kind, std::string provenance)
        : n_(n), kind_(kind), provenance_(std::move(provenance)), table_(WeakOrderTable::get(n)) {
        std::unordered_map<std::size_t, std::size_t> renumber;
        class_of_.resize(raw_ids.size());
        for (std::size_t r = 0; r < raw_ids.size(); ++r) {
            auto [it, fresh] = renumber.emplace(raw_ids[r], renumber.size());
            class_of_[r] = it->second;
        }
        const std::size_t k = renumber.size();
        members_.assign(k, {});
        for (std::size_t r = 0; r < class_of_.size(); ++r) members_[class_of_[r]].push_back(r);
        minimum_.assign(k, none);
        maximum_.assign(k, none);
        has_maxima_ = true;
        for (std::size_t c = 0; c < k; ++c) {
            int lo = 1 << 30, hi = -1, lo_count = 0, hi_count = 0;
            for (auto r : members_[c]) {
                int l = table_->length(r);
                if (l < lo) lo = l, lo_count = 0;
                if (l == lo) ++lo_count, minimum_[c] = r;
                if (l > hi) hi = l, hi_count = 0;
                if (l == hi) ++hi_count, maximum_[c] = r;
            }
            ensure(lo_count == 1, "congruence class without a unique minimum");
            if (hi_count != 1) {
                maximum_[c] = none;
                has_maxima_ = false;
            }
        }
    }

    std::size_t n() const { return n_; }
    Kind kind() const { return kind_; }
    const std::string& provenance() const { return provenance_; }
    const WeakOrderTable& table() const { return *table_; }
    std::size_t class_count() const { return members_.size(); }
    std::size_t class_of(std::size_t r) const { return class_of_[r]; }
    std::size_t class_of(const StdPermutation& w) const { return class_of_[table_->rank(w)]; }
    const std::vector<std::size_t>& members(std::size_t c) const { return members_[c]; }
    bool has_maxima() const { return has_maxima_; }
    bool same_class(const StdPermutation& v, const StdPermutation& w) const { return class_of(v) == class_of(w); }

    StdPermutation class_minimum(const StdPermutation& w) const {
        return table_->element(minimum_[class_of(w)]);
    }
    std::optional<StdPermutation> class_maximum(const StdPermutation& w) const {
        auto m = maximum_[class_of(w)];
        if (m == none) return std::nullopt;
        return table_->element(m);
    }
    std::size_t minimum_rank(std::size_t c) const { return minimum_[c]; }

    // Fences of the Hasse edges contracted by this congruence.
    std::vector<FenceLabel> contracted_fences() const {
        std::set<FenceLabel> out;
        for (std::size_t r = 0; r < table_->count(); ++r)
            for (auto [i, up] : table_->upper_covers(r))
                if (class_of_[r] == class_of_[up]) out.insert(edge_label(table_->element(r), i));
        return {out.begin(), out.end()};
    }

    friend bool operator==(const Congruence& a, const Congruence& b) {
        return a.n_ == b.n_ && a.class_of_ == b.class_of_;
    }

private:
    std::size_t n_ = 0;
    Kind kind_ = Kind::explicit_partition;
    std::string provenance_;
    std::shared_ptr<const WeakOrderTable> table_;
    std::vector<std::size_t> class_of_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<std::size_t> minimum_, maximum_;
    bool has_maxima_ = false;
};

inline std::vector<std::size_t> component_ids(UnionFind& uf) {
    std::vector<std::size_t> ids(uf.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = uf.find(i);
    return ids;
}

inline Congruence equality_congruence(std::size_t n) {
    std::vector<std::size_t> ids(factorial(n));
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    return Congruence(n, ids, Congruence::Kind::explicit_partition, "equality");
}

inline Congruence permutree_congruence(const Decoration& delta) {
    auto table = WeakOrderTable::get(delta.size());
    std::map<std::string, std::size_t> key_ids;
    std::vector<std::size_t> ids(table->count());
    for (std::size_t r = 0; r < table->count(); ++r) {
        auto key = insert(table->element(r), delta).skeleton();
        ids[r] = key_ids.emplace(key, key_ids.size()).first->second;
    }
    return Congruence(delta.size(), ids, Congruence::Kind::permutree, "permutree " + delta.str());
}

inline Congruence descent_congruence(std::size_t n) {
    return permutree_congruence(Decoration::uniform(n, Symbol::updown));
}

inline Congruence sylvester_congruence(std::size_t n) {
    return permutree_congruence(Decoration::uniform(n, Symbol::down));
}

inline bool is_order_ideal(const std::vector<FenceLabel>& ideal, std::size_t n) {
    std::set<FenceLabel> in(ideal.begin(), ideal.end());
    auto fences = all_fences(n);
    for (auto& f : ideal) {
        if (std::find(fences.begin(), fences.end(), f) == fences.end()) return false;
        for (auto& g : fences)
            if (forcing_leq(g, f) && !in.count(g)) return false;
    }
    return true;
}

inline std::string describe_ideal(const std::vector<FenceLabel>& ideal) {
    std::string s = "{";
    for (std::size_t i = 0; i < ideal.size(); ++i) s += (i ? " " : "") + ideal[i].str();
    return s + "}";
}

inline Congruence congruence_from_ideal(std::size_t n, const std::vector<FenceLabel>& ideal) {
    if (!is_order_ideal(ideal, n)) throw std::invalid_argument("fence set is not an order ideal");
    std::set<FenceLabel> in(ideal.begin(), ideal.end());
    auto table = WeakOrderTable::get(n);
    UnionFind uf(table->count());
    for (std::size_t r = 0; r < table->count(); ++r)
        for (auto [i, up] : table->upper_covers(r))
            if (in.count(edge_label(table->element(r), i))) uf.unite(r, up);
    return Congruence(n, component_ids(uf), Congruence::Kind::fence_ideal, "fence ideal " + describe_ideal(ideal));
}

inline Congruence refine(const Congruence& c1, const Congruence& c2) {
    if (c1.n() != c2.n()) throw std::invalid_argument("rank mismatch");
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
    std::vector<std::size_t> out(c1.table().count());
    for (std::size_t r = 0; r < out.size(); ++r)
        out[r] = ids.emplace(std::pair{c1.class_of(r), c2.class_of(r)}, ids.size()).first->second;
    auto kind = c1.kind() == c2.kind() ? c1.kind() : Congruence::Kind::explicit_partition;
    return Congruence(c1.n(), out, kind, "refinement of [" + c1.provenance() + "] and [" + c2.provenance() + "]");
}

struct IntervalCongruence {
    Congruence congruence;
    std::size_t iterations = 0;    // passes until the closure stabilized
    std::size_t down_set_size = 0;
};

// Smallest meet-semilattice congruence with [u,v] inside one class. Elements outside
// the down-set of v stay singletons, and for x below v, x ^ y = x ^ (v ^ y), so the
// closure only needs meets inside the down-set.
inline IntervalCongruence congruence_from_interval(const StdPermutation& u, const StdPermutation& v) {
    if (u.size() != v.size()) throw std::invalid_argument("size mismatch");
    if (!leq_left_weak(u, v)) throw std::invalid_argument("u is not below v in left weak order");
    const std::size_t n = u.size();
    auto table = WeakOrderTable::get(n);
    std::vector<std::size_t> down{table->rank(v)};
    std::unordered_map<std::size_t, std::size_t> index{{down[0], 0}};
    for (std::size_t k = 0; k < down.size(); ++k)
        for (auto [i, lower] : table->lower_covers(down[k]))
            if (index.emplace(lower, down.size()).second) down.push_back(lower);
    const std::size_t d = down.size();
    UnionFind uf(d);
    const std::size_t ur = table->rank(u);
    std::size_t anchor = index.at(ur);
    for (std::size_t k = 0; k < d; ++k)
        if (table->leq_left(ur, down[k])) uf.unite(anchor, k);
    std::vector<std::size_t> meet_cache(d * d, Congruence::none);
    auto meet = [&](std::size_t a, std::size_t b) {
        auto& slot = meet_cache[a * d + b];
        if (slot == Congruence::none) slot = index.at(table->meet(down[a], down[b]));
        return slot;
    };
    std::size_t iterations = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        ++iterations;
        std::map<std::size_t, std::vector<std::size_t>> classes;
        for (std::size_t k = 0; k < d; ++k) classes[uf.find(k)].push_back(k);
        for (auto& [root, members] : classes) {
            if (members.size() < 2) continue;
            for (std::size_t m = 1; m < members.size(); ++m)
                for (std::size_t y = 0; y < d; ++y)
                    changed |= uf.unite(meet(members[0], y), meet(members[m], y));
        }
    }
    std::vector<std::size_t> ids(table->count());
    for (std::size_t r = 0; r < ids.size(); ++r) ids[r] = d + r;
    for (std::size_t k = 0; k < d; ++k) ids[down[k]] = uf.find(k);
    Congruence c(n, ids, Congruence::Kind::interval, "interval [" + compact(u) + "," + compact(v) + "]");
    return {std::move(c), iterations, d};
}

// x1 = x2 implies x1 ^ y = x2 ^ y for every y (enough for the two-sided condition by transitivity).
inline bool is_meet_semilattice_congruence(const Congruence& c) {
    const auto& t = c.table();
    for (std::size_t k = 0; k < c.class_count(); ++k) {
        const auto& m = c.members(k);
        for (std::size_t j = 1; j < m.size(); ++j)
            for (std::size_t y = 0; y < t.count(); ++y)
                if (c.class_of(t.meet(m[0], y)) != c.class_of(t.meet(m[j], y))) return false;
    }
    return true;
}

inline bool refines(const Congruence& fine, const Congruence& coarse) {
    for (std::size_t k = 0; k < fine.class_count(); ++k) {
        const auto& m = fine.members(k);
        for (std::size_t j = 1; j < m.size(); ++j)
            if (coarse.class_of(m[j]) != coarse.class_of(m[0])) return false;
    }
    return true;
}

inline bool is_essential(const Congruence& c) {
    bool singleton = c.members(c.class_of(std::size_t{0})).size() == 1;
    bool fine = refines(c, descent_congruence(c.n()));
    ensure(singleton == fine, "essential test disagrees with descent refinement");
    return singleton;
}

inline StdPermutation sort_op(const Congruence& c, const StdPermutation& w) {
    return compose(w, inverse(c.class_minimum(w)));
}

inline StdPermutation up_op(const Congruence& c, const StdPermutation& w) {
    auto top = c.class_maximum(w);
    if (!top) throw std::invalid_argument("congruence has no class maximum here");
    return compose(*top, inverse(w));
}

// Preimage count of every element under sort_op, by Lehmer rank.
inline std::vector<std::uint64_t> preimage_counts(const Congruence& c) {
    const auto& t = c.table();
    std::vector<std::uint64_t> counts(t.count(), 0);
    for (std::size_t r = 0; r < t.count(); ++r) ++counts[t.rank(sort_op(c, t.element(r)))];
    return counts;
}

inline std::size_t max_image_descents(const Congruence& c, StdPermutation* witness = nullptr) {
    const auto& t = c.table();
    std::size_t best = 0;
    if (witness) *witness = StdPermutation::identity(c.n());
    for (std::size_t r = 0; r < t.count(); ++r) {
        auto s = sort_op(c, t.element(r));
        auto d = descents(s).size();
        if (d > best) {
            best = d;
            if (witness) *witness = s;
        }
    }
    return best;
}

// Every order ideal of the forcing order, via include/exclude along a linear extension.
inline std::vector<std::vector<FenceLabel>> all_fence_ideals(std::size_t n) {
    auto fences = all_fences(n);
    // wider fences sit lower in the forcing order
    std::stable_sort(fences.begin(), fences.end(),
                     [](const FenceLabel& x, const FenceLabel& y) { return x.b - x.a > y.b - y.a; });
    const std::size_t m = fences.size();
    std::vector<std::vector<std::size_t>> lower(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && forcing_leq(fences[j], fences[i])) {
                ensure(j < i, "fence order is not a linear extension");
                lower[i].push_back(j);
            }
    std::vector<std::vector<FenceLabel>> out;
    std::vector<char> chosen(m, 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == m) {
            std::vector<FenceLabel> ideal;
            for (std::size_t j = 0; j < m; ++j)
                if (chosen[j]) ideal.push_back(fences[j]);
            std::sort(ideal.begin(), ideal.end());
            out.push_back(std::move(ideal));
            return;
        }
        chosen[i] = 0;
        self(self, i + 1);
        bool allowed = true;
        for (auto j : lower[i]) allowed &= chosen[j] != 0;
        if (allowed) {
            chosen[i] = 1;
            self(self, i + 1);
            chosen[i] = 0;
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// zeta_3 = 231; zeta_{3k+3}: replace the entry 3k by 3k+2, append 3k+1, 3k+3, 3k.
inline StdPermutation zeta(std::size_t n) {
    if (n == 0) return {};
    std::size_t m = (n + 2) / 3;
    std::vector<int> z{2, 3, 1};
    for (std::size_t k = 1; k < m; ++k) {
        int top = static_cast<int>(3 * k);
        for (int& x : z)
            if (x == top) x = top + 2;
        z.push_back(top + 1);
        z.push_back(top + 3);
        z.push_back(top);
    }
    z.resize(n);
    return standardize(Permutation(std::vector<std::int64_t>(z.begin(), z.end())));
}

inline std::size_t lattice_descent_bound(std::size_t n) { return n == 0 ? 0 : 2 * (n - 1) / 3; }

// The pair u <= v whose interval congruence forces n-2 image descents.
inline std::pair<StdPermutation, StdPermutation> semilattice_witness_pair(std::size_t n) {
    const int m = static_cast<int>(n), k = (m + 1) / 2;
    std::vector<int> u(n), v(n);
    for (int i = 1; i <= m; ++i) {
        u[i - 1] = i % 2 ? (i + 1) / 2 : k + i / 2;
        v[i - 1] = i % 2 ? k - (i - 1) / 2 : m + 1 - i / 2;
    }
    return {StdPermutation(u), StdPermutation(v)};
}

struct DescentBoundReport {
    std::size_t n = 0;
    std::size_t bound = 0;                 // floor(2(n-1)/3)
    std::size_t achieved = 0;              // max over essential lattice congruences
    std::size_t ideals = 0, essential_ideals = 0;
    std::string witness_congruence;
    StdPermutation witness_permutation;
    std::size_t zeta_descents = 0;         // descents of pop_stack(zeta_n)
    StdPermutation zeta_image;
    std::size_t semilattice_descents = 0;  // from the interval construction
    StdPermutation semilattice_image;
    std::size_t closure_iterations = 0;
    bool semilattice_checked = false;
};

inline DescentBoundReport verify_descent_bounds(std::size_t n, std::size_t ideal_cap = 4, std::size_t interval_cap = 7) {
    if (n < 2) throw std::invalid_argument("descent bounds need n >= 2");
    if (n > ideal_cap) throw std::invalid_argument("n exceeds the ideal enumeration cap");
    DescentBoundReport rep;
    rep.n = n;
    rep.bound = lattice_descent_bound(n);
    rep.witness_permutation = StdPermutation::identity(n);
    for (auto& ideal : all_fence_ideals(n)) {
        ++rep.ideals;
        auto c = congruence_from_ideal(n, ideal);
        if (!is_essential(c)) continue;
        ++rep.essential_ideals;
        StdPermutation w;
        auto d = max_image_descents(c, &w);
        if (rep.witness_congruence.empty() || d > rep.achieved) {
            rep.achieved = d;
            rep.witness_congruence = describe_ideal(ideal);
            rep.witness_permutation = w;
        }
    }
    rep.zeta_image = pop_stack(zeta(n));
    rep.zeta_descents = descents(rep.zeta_image).size();
    if (n <= interval_cap) {
        auto [u, v] = semilattice_witness_pair(n);
        auto ic = congruence_from_interval(u, v);
        auto c = refine(ic.congruence, descent_congruence(n));
        if (is_essential(c)) {
            rep.semilattice_image = sort_op(c, v);
            rep.semilattice_descents = descents(rep.semilattice_image).size();
            rep.closure_iterations = ic.iterations;
            rep.semilattice_checked = true;
        }
    }
    return rep;
}

}  // namespace coxsort
