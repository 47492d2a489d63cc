#pragma once

#include <unordered_map>

#include "parallel.hpp"
#include "permutree.hpp"

namespace coxsort {

// Element of B_n stored as its centrally symmetric word in S_2n.
class SignedPermutation {
public:
    SignedPermutation() = default;
    explicit SignedPermutation(StdPermutation word) : word_(std::move(word)) {
        const std::size_t m = word_.size();
        if (m % 2) throw std::invalid_argument("signed permutation needs even length");
        for (std::size_t i = 1; i <= m; ++i)
            if (word_(m + 1 - i) != static_cast<int>(m + 1) - word_(i))
                throw std::invalid_argument("word is not centrally symmetric");
    }

    static SignedPermutation identity(std::size_t n) { return SignedPermutation(StdPermutation::identity(2 * n)); }

    // Signed window [a_1..a_n] with a_i in +-[n]. Positive a sits at n+a, negative a at n+1+a,
    // so -1 and 1 are the two middle values. The window occupies positions n+1..2n.
    static SignedPermutation from_signed_window(const std::vector<int>& window) {
        const int n = static_cast<int>(window.size());
        std::vector<int> w(2 * n);
        for (int i = 1; i <= n; ++i) {
            int a = window[i - 1];
            if (a == 0 || a > n || a < -n) throw std::invalid_argument("signed entry out of range");
            int folded = a > 0 ? n + a : n + 1 + a;
            w[n + i - 1] = folded;
            w[n - i] = 2 * n + 1 - folded;
        }
        return SignedPermutation(StdPermutation(std::move(w)));
    }

    std::vector<int> signed_window() const {
        const int n = static_cast<int>(rank());
        std::vector<int> out;
        for (int i = 1; i <= n; ++i) {
            int v = word_(n + i);
            out.push_back(v > n ? v - n : v - n - 1);
        }
        return out;
    }

    std::size_t rank() const { return word_.size() / 2; }
    const StdPermutation& word() const { return word_; }
    bool is_identity() const { return word_.is_identity(); }

    friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
    friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;

private:
    StdPermutation word_;
};

inline SignedPermutation parse_signed(const std::string& text) {
    auto t = text;
    t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
    if (!t.empty() && t.front() == '[') {
        auto raw = parse_integer_list(t);
        return SignedPermutation::from_signed_window(std::vector<int>(raw.begin(), raw.end()));
    }
    if (t.find(',') == std::string::npos) return SignedPermutation(from_digits(t));
    return SignedPermutation(parse_std_permutation(t));
}

inline std::string format_signed_window(const SignedPermutation& w) {
    std::string s = "[";
    auto win = w.signed_window();
    for (std::size_t i = 0; i < win.size(); ++i) s += (i ? "," : "") + std::to_string(win[i]);
    return s + "]";
}

inline Decoration type_b_decoration(std::size_t n) {
    return Decoration::parse(std::string(n, 'u') + std::string(n, 'd'));
}

inline SignedPermutation stack_b(const SignedPermutation& w) {
    auto image = permutree_sort(type_b_decoration(w.rank()), w.word());
    const std::size_t m = image.size();
    for (std::size_t i = 1; i <= m; ++i)
        ensure(image(m + 1 - i) == static_cast<int>(m + 1) - image(i), "stack_B left B_n");
    return SignedPermutation(std::move(image));
}

inline std::vector<SignedPermutation> orbit_b(const SignedPermutation& w) {
    std::vector<SignedPermutation> out{w};
    while (!out.back().is_identity()) {
        out.push_back(stack_b(out.back()));
        ensure(out.size() <= 2 * w.rank() + 1, "stack_B orbit exceeds the Coxeter number");
    }
    return out;
}

// i in [n] with w(i) > w(i+1); i = n compares the two middle entries.
inline std::vector<int> descents_b(const SignedPermutation& w) {
    std::vector<int> out;
    for (std::size_t i = 1; i <= w.rank(); ++i)
        if (w.word()(i) > w.word()(i + 1)) out.push_back(static_cast<int>(i));
    return out;
}

constexpr std::size_t census_cap_default = 6;

// Sign vectors (outer, as a bitmask) times S_n in lexicographic order.
inline std::vector<SignedPermutation> all_signed(std::size_t n, std::size_t cap = census_cap_default) {
    if (n > cap) throw std::invalid_argument("n exceeds the B_n enumeration cap");
    auto perms = all_permutations(n);
    std::vector<SignedPermutation> out;
    out.reserve(perms.size() << n);
    for (std::size_t signs = 0; signs < (std::size_t{1} << n); ++signs)
        for (auto& p : perms) {
            std::vector<int> win(n);
            for (std::size_t i = 0; i < n; ++i) win[i] = (signs >> i & 1) ? -p.values()[i] : p.values()[i];
            out.push_back(SignedPermutation::from_signed_window(win));
        }
    return out;
}

struct CensusRow {
    SignedPermutation element;
    std::size_t descents = 0;
    std::size_t orbit_size = 0;
    std::uint64_t preimages = 0;
};

// One exhaustive pass: images in parallel, then counts and orbit sizes by memoized chasing.
inline std::vector<CensusRow> preimage_census(std::size_t n, std::size_t cap = census_cap_default) {
    auto elements = all_signed(n, cap);
    std::vector<std::size_t> image(elements.size());
    std::map<SignedPermutation, std::size_t> index;
    for (std::size_t k = 0; k < elements.size(); ++k) index.emplace(elements[k], k);
    parallel_for(elements.size(), [&](std::size_t k) { image[k] = index.at(stack_b(elements[k])); });
    std::vector<CensusRow> rows(elements.size());
    for (std::size_t k = 0; k < elements.size(); ++k) {
        rows[k].element = elements[k];
        rows[k].descents = descents_b(elements[k]).size();
        ++rows[image[k]].preimages;
    }
    const std::size_t e = index.at(SignedPermutation::identity(n));
    rows[e].orbit_size = 1;
    for (std::size_t k = 0; k < elements.size(); ++k) {
        std::vector<std::size_t> chain;
        std::size_t x = k;
        while (rows[x].orbit_size == 0) {
            chain.push_back(x);
            x = image[x];
            ensure(chain.size() <= 2 * n + 1, "stack_B orbit does not terminate");
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) rows[*it].orbit_size = rows[image[*it]].orbit_size + 1;
    }
    return rows;
}

struct TypeBSummary {
    std::size_t n = 0;
    std::size_t elements = 0;
    std::size_t max_orbit = 0;
    std::size_t max_image_descents = 0;
    std::size_t slow_to_sort = 0;  // elements v with stack_B^{n-1}(v) != e
    std::uint64_t preimage_total = 0;
    std::uint64_t total_iterations = 0;  // sum of (orbit size - 1)
    bool all_counts_even = true;
};

inline TypeBSummary summarize(const std::vector<CensusRow>& rows) {
    TypeBSummary s;
    if (rows.empty()) return s;
    s.n = rows.front().element.rank();
    s.elements = rows.size();
    for (auto& r : rows) {
        s.max_orbit = std::max(s.max_orbit, r.orbit_size);
        if (r.preimages > 0) s.max_image_descents = std::max(s.max_image_descents, r.descents);
        s.slow_to_sort += r.orbit_size > s.n;
        s.preimage_total += r.preimages;
        s.total_iterations += r.orbit_size - 1;
        s.all_counts_even &= r.preimages % 2 == 0;
    }
    return s;
}

// u = (2n) 2 3 ... (2n-1) 1, whose orbit has n+1 elements.
inline SignedPermutation long_orbit_witness(std::size_t n) {
    std::vector<int> w(2 * n);
    std::iota(w.begin(), w.end(), 1);
    std::swap(w.front(), w.back());
    return SignedPermutation(StdPermutation(std::move(w)));
}

// v = 1 3 2 5 4 ... (2n-1)(2n-2)(2n) with floor(n/2) descents, and w = v s_1 s_3 ... s_{2n-1}.
inline std::pair<SignedPermutation, SignedPermutation> descent_witness(std::size_t n) {
    std::vector<int> v(2 * n);
    v[0] = 1;
    for (std::size_t i = 1; i + 1 < 2 * n; i += 2) {
        v[i] = static_cast<int>(i + 2);
        v[i + 1] = static_cast<int>(i + 1);
    }
    v[2 * n - 1] = static_cast<int>(2 * n);
    std::vector<int> w = v;
    for (std::size_t i = 0; i + 1 < 2 * n; i += 2) std::swap(w[i], w[i + 1]);
    return {SignedPermutation(StdPermutation(v)), SignedPermutation(StdPermutation(w))};
}

}  // namespace coxsort
