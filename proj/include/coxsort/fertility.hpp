#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <memory>
#include <mutex>

#include "permutation.hpp"

namespace coxsort {

using Count = boost::multiprecision::cpp_int;

inline Count binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Count c = 1;
    for (long i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

inline const Count& catalan(std::size_t r) {
    static std::mutex mu;
    static std::vector<Count> table{1};
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= r) {
        std::size_t m = table.size();
        table.push_back(table.back() * 2 * (2 * m - 1) / (m + 1));
    }
    return table[r];
}

inline Count catalan_product(const std::vector<std::size_t>& parts) {
    Count c = 1;
    for (auto q : parts) c *= catalan(q);
    return c;
}

// Positions are 1-based; values are those of the standardized host.
struct Hook {
    std::size_t sw_position = 0, ne_position = 0;
    int sw_value = 0, ne_value = 0;
    friend bool operator==(const Hook&, const Hook&) = default;
};

struct ValidHookConfiguration {
    std::vector<Hook> hooks;  // one per descent, in descent order
    friend bool operator==(const ValidHookConfiguration&, const ValidHookConfiguration&) = default;
};

namespace detail {

inline bool hook_compatible(const Hook& earlier, std::size_t sw, std::size_t ne) {
    if (earlier.ne_position <= sw) return true;  // disjoint, possibly sharing an endpoint
    return ne < earlier.ne_position;              // nested strictly underneath
}

}  // namespace detail

inline std::vector<ValidHookConfiguration> enumerate_vhcs(const StdPermutation& v) {
    const auto& w = v.values();
    const std::size_t n = w.size();
    auto des = descents(v);
    std::vector<ValidHookConfiguration> out;
    std::vector<Hook> current;
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == des.size()) {
            out.push_back({current});
            return;
        }
        const std::size_t d = static_cast<std::size_t>(des[t]);
        int between = 0;  // max value strictly between d and the candidate
        for (std::size_t j = d + 1; j <= n; ++j) {
            int vj = w[j - 1];
            if (vj > w[d - 1] && vj > between) {
                bool ok = true;
                for (auto& h : current) ok &= detail::hook_compatible(h, d, j);
                if (ok) {
                    current.push_back({d, j, w[d - 1], vj});
                    self(self, t + 1);
                    current.pop_back();
                }
            }
            between = std::max(between, vj);
        }
    };
    rec(rec, 0);
    return out;
}

inline std::vector<ValidHookConfiguration> enumerate_vhcs(const Permutation& v) {
    return enumerate_vhcs(standardize(v));
}

// Definition-level validity check, independent of the enumerator.
inline bool is_valid_hook_configuration(const StdPermutation& v, const ValidHookConfiguration& h) {
    auto des = descents(v);
    if (h.hooks.size() != des.size()) return false;
    for (std::size_t t = 0; t < des.size(); ++t) {
        const auto& k = h.hooks[t];
        if (k.sw_position != static_cast<std::size_t>(des[t])) return false;
        if (k.ne_position <= k.sw_position || k.ne_position > v.size()) return false;
        if (v(k.sw_position) != k.sw_value || v(k.ne_position) != k.ne_value) return false;
        if (k.ne_value <= k.sw_value) return false;
        for (std::size_t p = k.sw_position + 1; p < k.ne_position; ++p)
            if (v(p) > k.ne_value) return false;  // point above the horizontal arm
    }
    for (std::size_t a = 0; a < h.hooks.size(); ++a)
        for (std::size_t b = 0; b < h.hooks.size(); ++b) {
            if (a == b) continue;
            const auto &x = h.hooks[a], &y = h.hooks[b];
            // y starts inside x's span: must end strictly inside too
            if (x.sw_position < y.sw_position && y.sw_position < x.ne_position && y.ne_position >= x.ne_position)
                return false;
        }
    return true;
}

// Each non-northeast point takes the colour of the innermost hook strictly spanning it.
inline std::vector<std::size_t> q_composition(const StdPermutation& v, const ValidHookConfiguration& h) {
    if (!is_valid_hook_configuration(v, h)) throw std::invalid_argument("invalid hook configuration");
    std::vector<std::size_t> q(h.hooks.size() + 1, 0);
    std::vector<char> is_ne(v.size() + 1, 0);
    for (auto& k : h.hooks) is_ne[k.ne_position] = 1;
    for (std::size_t p = 1; p <= v.size(); ++p) {
        if (is_ne[p]) continue;
        std::size_t colour = 0, best_sw = 0;
        for (std::size_t t = 0; t < h.hooks.size(); ++t) {
            const auto& k = h.hooks[t];
            if (k.sw_position < p && p < k.ne_position && k.sw_position >= best_sw) {
                best_sw = k.sw_position;
                colour = t + 1;
            }
        }
        ++q[colour];
    }
    return q;
}

inline Count fertility(const StdPermutation& v) {
    Count total = 0;
    for (auto& h : enumerate_vhcs(v)) total += catalan_product(q_composition(v, h));
    return total;
}

inline Count fertility(const Permutation& v) { return fertility(standardize(v)); }

constexpr std::size_t brute_fertility_cap = 9;

inline std::uint64_t brute_fertility(const StdPermutation& v, std::size_t cap = brute_fertility_cap) {
    if (v.size() > cap) throw std::invalid_argument("brute-force fertility cap exceeded");
    std::uint64_t count = 0;
    for (auto& w : all_permutations(v.size())) count += stack_sort(w) == v;
    return count;
}

inline bool is_uniquely_sorted(const Permutation& v) { return fertility(v) == 1; }

inline std::size_t slmax(const Permutation& u) { return left_to_right_maxima(stack_sort(u)).size(); }

inline bool is_t_stack_sortable(const StdPermutation& w, int t) { return stack_sort_power(w, t).is_identity(); }

// S_k bucketed by stack-sorting image, built once per k.
class PreimageTable {
public:
    explicit PreimageTable(std::size_t k) : k_(k), buckets_(factorial(k)) {
        for (auto& w : all_permutations(k)) buckets_[lehmer_rank(stack_sort(w))].push_back(w);
    }
    const std::vector<StdPermutation>& preimages(const StdPermutation& v) const {
        return buckets_.at(lehmer_rank(v));
    }
    static std::shared_ptr<const PreimageTable> get(std::size_t k) {
        if (k > brute_fertility_cap) throw std::invalid_argument("preimage table cap exceeded");
        static std::mutex mu;
        static std::map<std::size_t, std::shared_ptr<const PreimageTable>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[k];
        if (!slot) slot = std::make_shared<PreimageTable>(k);
        return slot;
    }

private:
    std::size_t k_;
    std::vector<std::vector<StdPermutation>> buckets_;
};

// All w on the same value set with stack_sort(w) = z.
inline std::vector<Permutation> stack_preimages(const Permutation& z) {
    auto table = PreimageTable::get(z.size());
    std::vector<Permutation> out;
    for (auto& p : table->preimages(standardize(z))) out.push_back(destandardize(p, z.values()));
    return out;
}

// Fertilities keyed by standardization; inserts are idempotent so concurrent callers agree.
class FertilityMemo {
public:
    Count operator()(const Permutation& z) {
        auto key = standardize(z);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Count f = fertility(key);
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(key, f);
        return f;
    }

private:
    std::mutex mu_;
    std::map<StdPermutation, Count> memo_;
};

}  // namespace coxsort
