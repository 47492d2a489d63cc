#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coxsort {

// Raised when an internal consistency check fails. Never expected on valid input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline void ensure(bool ok, const char* what) {
    if (!ok) throw internal_error(what);
}

constexpr std::int64_t value_limit = std::int64_t{1} << 60;

// One-line notation w(1)...w(k) over an arbitrary set of distinct integers.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::int64_t> values) : values_(std::move(values)) {
        for (auto x : values_)
            if (x > value_limit || x < -value_limit)
                throw std::invalid_argument("permutation value out of range");
        std::vector<std::int64_t> sorted = values_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("permutation values must be distinct");
    }
    Permutation(std::initializer_list<std::int64_t> values)
        : Permutation(std::vector<std::int64_t>(values)) {}

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    // 1-based
    std::int64_t operator()(std::size_t i) const { return values_[i - 1]; }
    const std::vector<std::int64_t>& values() const { return values_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::int64_t> values_;
};

// Rearrangement of 1..n.
class StdPermutation {
public:
    StdPermutation() = default;
    explicit StdPermutation(std::vector<int> values) : values_(std::move(values)) {
        std::vector<char> seen(values_.size() + 1, 0);
        for (int x : values_) {
            if (x < 1 || x > static_cast<int>(values_.size()) || seen[x])
                throw std::invalid_argument("not a permutation of 1..n");
            seen[x] = 1;
        }
    }
    StdPermutation(std::initializer_list<int> values) : StdPermutation(std::vector<int>(values)) {}

    static StdPermutation identity(std::size_t n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return StdPermutation(std::move(v), unchecked{});
    }
    static StdPermutation longest(std::size_t n) {
        std::vector<int> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(n - i);
        return StdPermutation(std::move(v), unchecked{});
    }

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    int operator()(std::size_t i) const { return values_[i - 1]; }
    const std::vector<int>& values() const { return values_; }
    bool is_identity() const {
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i] != static_cast<int>(i + 1)) return false;
        return true;
    }

    Permutation general() const {
        return Permutation(std::vector<std::int64_t>(values_.begin(), values_.end()));
    }

    friend bool operator==(const StdPermutation&, const StdPermutation&) = default;
    friend auto operator<=>(const StdPermutation&, const StdPermutation&) = default;

    struct unchecked {};
    StdPermutation(std::vector<int> values, unchecked) : values_(std::move(values)) {}

private:
    std::vector<int> values_;
};

// ---- text codec ----------------------------------------------------------

inline std::vector<std::int64_t> parse_integer_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::string token;
    std::stringstream in(text);
    while (std::getline(in, token, ',')) {
        auto b = token.find_first_not_of(" \t[]");
        auto e = token.find_last_not_of(" \t[]");
        if (b == std::string::npos) continue;
        token = token.substr(b, e - b + 1);
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer '" + token + "'");
        }
        if (used != token.size()) throw std::invalid_argument("bad integer '" + token + "'");
        out.push_back(x);
    }
    return out;
}

inline Permutation parse_permutation(const std::string& text) {
    return Permutation(parse_integer_list(text));
}

inline StdPermutation parse_std_permutation(const std::string& text) {
    auto raw = parse_integer_list(text);
    std::vector<int> v(raw.begin(), raw.end());
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (raw[i] != v[i]) throw std::invalid_argument("value out of range");
    return StdPermutation(std::move(v));
}

template <class P>
std::string format_one_line(const P& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w.values()[i]);
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const Permutation& w) { return os << format_one_line(w); }
inline std::ostream& operator<<(std::ostream& os, const StdPermutation& w) { return os << format_one_line(w); }

// Compact form used in tests and small-rank tables: 4213567.
inline std::string compact(const StdPermutation& w) {
    std::string s;
    for (int x : w.values()) {
        if (w.size() > 9 && !s.empty()) s += ',';
        s += std::to_string(x);
    }
    return s;
}

inline StdPermutation from_digits(const std::string& digits) {
    std::vector<int> v;
    for (char c : digits) v.push_back(c - '0');
    return StdPermutation(std::move(v));
}

// ---- standardization and stack-sorting -----------------------------------

inline StdPermutation standardize(const Permutation& w) {
    std::vector<std::size_t> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return w.values()[a] < w.values()[b]; });
    std::vector<int> out(w.size());
    for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = static_cast<int>(r + 1);
    return StdPermutation(std::move(out), StdPermutation::unchecked{});
}

// Replace each value i of a standard pattern by the i-th smallest element of `support`.
inline Permutation destandardize(const StdPermutation& pattern, std::vector<std::int64_t> support) {
    std::sort(support.begin(), support.end());
    if (support.size() != pattern.size()) throw std::invalid_argument("support size mismatch");
    std::vector<std::int64_t> out(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) out[i] = support[pattern.values()[i] - 1];
    return Permutation(std::move(out));
}

// Single pass through a stack that must stay increasing from top to bottom.
template <class T>
std::vector<T> stack_sort_values(const std::vector<T>& w) {
    std::vector<T> out, stack;
    out.reserve(w.size());
    for (const T& x : w) {
        while (!stack.empty() && stack.back() < x) {
            out.push_back(stack.back());
            stack.pop_back();
        }
        stack.push_back(x);
    }
    while (!stack.empty()) {
        out.push_back(stack.back());
        stack.pop_back();
    }
    return out;
}

inline Permutation stack_sort(const Permutation& w) { return Permutation(stack_sort_values(w.values())); }

inline StdPermutation stack_sort(const StdPermutation& w) {
    return StdPermutation(stack_sort_values(w.values()), StdPermutation::unchecked{});
}

template <class P>
P stack_sort_power(P w, int t) {
    for (int i = 0; i < t; ++i) w = stack_sort(w);
    return w;
}

// ---- group structure -----------------------------------------------------

// (a*b)(i) = a(b(i))
inline StdPermutation compose(const StdPermutation& a, const StdPermutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.values()[b.values()[i] - 1];
    return StdPermutation(std::move(out), StdPermutation::unchecked{});
}

inline StdPermutation inverse(const StdPermutation& w) {
    std::vector<int> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[w.values()[i] - 1] = static_cast<int>(i + 1);
    return StdPermutation(std::move(out), StdPermutation::unchecked{});
}

// s_i * w: swap the values i and i+1.
inline StdPermutation left_simple(int i, const StdPermutation& w) {
    std::vector<int> out = w.values();
    for (int& x : out) {
        if (x == i) x = i + 1;
        else if (x == i + 1) x = i;
    }
    return StdPermutation(std::move(out), StdPermutation::unchecked{});
}

// w * s_i: swap the entries in positions i and i+1.
inline StdPermutation right_simple(const StdPermutation& w, int i) {
    std::vector<int> out = w.values();
    std::swap(out[i - 1], out[i]);
    return StdPermutation(std::move(out), StdPermutation::unchecked{});
}

inline StdPermutation reverse(const StdPermutation& w) {
    std::vector<int> out(w.values().rbegin(), w.values().rend());
    return StdPermutation(std::move(out), StdPermutation::unchecked{});
}

// w0 * w * w0
inline StdPermutation alpha_conjugate(const StdPermutation& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> out(w.size());
    for (int i = 0; i < n; ++i) out[i] = n + 1 - w.values()[n - 1 - i];
    return StdPermutation(std::move(out), StdPermutation::unchecked{});
}

inline Permutation direct_sum(const Permutation& a, const Permutation& b) {
    std::vector<std::int64_t> out = a.values();
    std::int64_t shift = a.empty() ? 0 : *std::max_element(a.values().begin(), a.values().end());
    std::int64_t low = b.empty() ? 0 : *std::min_element(b.values().begin(), b.values().end());
    for (auto x : b.values()) out.push_back(x - low + 1 + shift);
    return Permutation(std::move(out));
}

inline StdPermutation direct_sum(const StdPermutation& a, const StdPermutation& b) {
    std::vector<int> out = a.values();
    for (int x : b.values()) out.push_back(x + static_cast<int>(a.size()));
    return StdPermutation(std::move(out), StdPermutation::unchecked{});
}

// ---- statistics ----------------------------------------------------------

template <class P>
std::vector<int> descents(const P& w) {
    std::vector<int> out;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w.values()[i - 1] > w.values()[i]) out.push_back(static_cast<int>(i));
    return out;
}

template <class P>
std::vector<std::size_t> left_to_right_maxima(const P& w) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (out.empty() || w.values()[i] > w.values()[out.back() - 1]) out.push_back(i + 1);
    return out;
}

using PairSet = std::set<std::pair<int, int>>;

inline PairSet right_inversions(const StdPermutation& w) {
    PairSet out;
    const int n = static_cast<int>(w.size());
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (w(i) > w(j)) out.emplace(i, j);
    return out;
}

inline PairSet left_inversions(const StdPermutation& w) { return right_inversions(inverse(w)); }

inline std::size_t length(const StdPermutation& w) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w.values()[i] > w.values()[j]) ++count;
    return count;
}

// Right inversions of v contained in those of w.
inline bool leq_left_weak(const StdPermutation& v, const StdPermutation& w) {
    if (v.size() != w.size()) throw std::invalid_argument("size mismatch");
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (v.values()[i] > v.values()[j] && w.values()[i] < w.values()[j]) return false;
    return true;
}

inline bool leq_right_weak(const StdPermutation& v, const StdPermutation& w) {
    return leq_left_weak(inverse(v), inverse(w));
}

// Dense upper-triangular relation on positions; inv[i][j] for i<j (0-based).
using InversionMatrix = std::vector<std::vector<char>>;

inline InversionMatrix inversion_matrix(const StdPermutation& w) {
    const std::size_t n = w.size();
    InversionMatrix m(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m[i][j] = w.values()[i] > w.values()[j];
    return m;
}

// Valid only when `inv` is the inversion set of a permutation.
inline StdPermutation from_inversions(const InversionMatrix& inv) {
    const std::size_t n = inv.size();
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        int smaller = 0;
        for (std::size_t j = 0; j < i; ++j) smaller += !inv[j][i];
        for (std::size_t j = i + 1; j < n; ++j) smaller += inv[i][j];
        out[i] = smaller + 1;
    }
    return StdPermutation(std::move(out));
}

inline StdPermutation meet_left_weak(const StdPermutation& v, const StdPermutation& w) {
    if (v.size() != w.size()) throw std::invalid_argument("size mismatch");
    const std::size_t n = v.size();
    InversionMatrix inv(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            inv[i][j] = v.values()[i] > v.values()[j] && w.values()[i] > w.values()[j];
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 2; k < n; ++k) {
                if (!inv[i][k]) continue;
                for (std::size_t j = i + 1; j < k; ++j)
                    if (!inv[i][j] && !inv[j][k]) {
                        inv[i][k] = 0;
                        changed = true;
                        break;
                    }
            }
    }
    return from_inversions(inv);
}

template <class P>
bool avoids_231(const P& w) {
    // For each middle entry c, need some earlier b < c and later a < b.
    const auto& v = w.values();
    const std::size_t n = v.size();
    for (std::size_t j = 0; j < n; ++j) {
        bool have_b = false;
        auto best_b = v[j];
        for (std::size_t i = 0; i < j; ++i)
            if (v[i] < v[j] && (!have_b || v[i] > best_b)) {
                best_b = v[i];
                have_b = true;
            }
        if (!have_b) continue;
        for (std::size_t k = j + 1; k < n; ++k)
            if (v[k] < best_b) return false;
    }
    return true;
}

// ---- ranking and enumeration ---------------------------------------------

inline std::uint64_t factorial(std::size_t n) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

// Position of w in lexicographic order of S_n.
inline std::size_t lehmer_rank(const StdPermutation& w) {
    const std::size_t n = w.size();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j) smaller += w.values()[j] < w.values()[i];
        rank = rank * (n - i) + smaller;
    }
    return rank;
}

inline StdPermutation lehmer_unrank(std::size_t n, std::size_t rank) {
    std::vector<std::size_t> digits(n);
    for (std::size_t i = n; i-- > 0;) {
        digits[i] = rank % (n - i);
        rank /= (n - i);
    }
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(pool[digits[i]]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
    }
    return StdPermutation(std::move(out), StdPermutation::unchecked{});
}

// All of S_n in lexicographic (= Lehmer rank) order.
inline std::vector<StdPermutation> all_permutations(std::size_t n) {
    std::vector<StdPermutation> out;
    out.reserve(factorial(n));
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
        out.emplace_back(v, StdPermutation::unchecked{});
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

}  // namespace coxsort
