#include <gtest/gtest.h>

#include <random>

#include "coxsort/fertility.hpp"

using namespace coxsort;

namespace {

// Closed forms evaluated with plain integer arithmetic, independent of the library.
std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}
std::uint64_t catalan_number(std::uint64_t n) { return choose(2 * n, n) / (n + 1); }
std::uint64_t two_stack_sortable(std::uint64_t n) { return 2 * choose(3 * n, n) / ((n + 1) * (2 * n + 1)); }
std::uint64_t uniquely_sorted_231(std::uint64_t k) {
    return 2 * choose(4 * k + 1, k + 1) / ((3 * k + 1) * (3 * k + 2));
}

}  // namespace

TEST(Catalan, Values) {
    for (std::size_t n = 0; n <= 20; ++n) EXPECT_EQ(catalan(n), catalan_number(n));
    EXPECT_EQ(catalan(8), 1430);
}

TEST(Vhc, Examples) {
    auto v = from_digits("213");
    auto vhcs = enumerate_vhcs(v);
    ASSERT_EQ(vhcs.size(), 1u);
    EXPECT_EQ(vhcs[0].hooks[0].sw_position, 1u);
    EXPECT_EQ(vhcs[0].hooks[0].ne_position, 3u);
    EXPECT_EQ(q_composition(v, vhcs[0]), (std::vector<std::size_t>{1, 1}));
    for (std::size_t n = 1; n <= 7; ++n) {
        auto id = StdPermutation::identity(n);
        auto e = enumerate_vhcs(id);
        ASSERT_EQ(e.size(), 1u);
        EXPECT_TRUE(e[0].hooks.empty());
        EXPECT_EQ(q_composition(id, e[0]), std::vector<std::size_t>{n});
        if (n >= 2) {
            EXPECT_TRUE(enumerate_vhcs(StdPermutation::longest(n)).empty());
        }
    }
}

TEST(Vhc, SegmentFromAffineExample) {
    // (-1)(-2)23 standardizes to 2134; the hook ending at 3 colours (2,1)
    auto z = standardize(Permutation{-1, -2, 2, 3});
    EXPECT_EQ(z, from_digits("2134"));
    bool found = false;
    for (auto& h : enumerate_vhcs(z))
        if (h.hooks[0].ne_position == 3) {
            found = true;
            auto q = q_composition(z, h);
            EXPECT_EQ(q, (std::vector<std::size_t>{2, 1}));
            EXPECT_EQ(catalan_product(q), 2);
        }
    EXPECT_TRUE(found);
}

TEST(Vhc, EnumeratedConfigurationsSatisfyDefinition) {
    for (std::size_t n = 1; n <= 7; ++n)
        for (auto& v : all_permutations(n))
            for (auto& h : enumerate_vhcs(v)) {
                ASSERT_TRUE(is_valid_hook_configuration(v, h));
                auto q = q_composition(v, h);
                std::size_t sum = 0;
                for (auto x : q) sum += x;
                ASSERT_EQ(sum, n - h.hooks.size());
            }
}

TEST(Vhc, EnumerationIsCompleteAgainstAllHookTuples) {
    // every tuple of hooks with the right SW endpoints, filtered by the definition
    for (std::size_t n = 1; n <= 6; ++n)
        for (auto& v : all_permutations(n)) {
            auto des = descents(v);
            std::size_t brute = 0;
            std::vector<std::size_t> ne(des.size(), 0);
            auto rec = [&](auto&& self, std::size_t t) -> void {
                if (t == des.size()) {
                    ValidHookConfiguration h;
                    for (std::size_t i = 0; i < des.size(); ++i)
                        h.hooks.push_back({static_cast<std::size_t>(des[i]), ne[i], v(des[i]), v(ne[i])});
                    brute += is_valid_hook_configuration(v, h);
                    return;
                }
                for (std::size_t j = des[t] + 1; j <= n; ++j) {
                    ne[t] = j;
                    self(self, t + 1);
                }
            };
            rec(rec, 0);
            ASSERT_EQ(brute, enumerate_vhcs(v).size()) << compact(v);
        }
}

TEST(Fertility, FormulaMatchesBruteForce) {
    for (std::size_t n = 1; n <= 7; ++n) {
        std::vector<std::uint64_t> counts(factorial(n), 0);
        for (auto& w : all_permutations(n)) ++counts[lehmer_rank(stack_sort(w))];
        auto all = all_permutations(n);
        std::uint64_t total = 0;
        for (std::size_t r = 0; r < all.size(); ++r) {
            ASSERT_EQ(fertility(all[r]), counts[r]) << compact(all[r]);
            total += counts[r];
        }
        EXPECT_EQ(total, factorial(n));
    }
}

TEST(Fertility, Examples) {
    EXPECT_EQ(brute_fertility(StdPermutation::identity(4)), 14u);
    EXPECT_EQ(brute_fertility(from_digits("231")), 0u);
    EXPECT_EQ(fertility(from_digits("213")), brute_fertility(from_digits("213")));
    for (std::size_t n = 1; n <= 12; ++n) EXPECT_EQ(fertility(StdPermutation::identity(n)), catalan_number(n));
    EXPECT_EQ(fertility(from_digits("4213567")), brute_fertility(from_digits("4213567")));
    EXPECT_THROW(brute_fertility(StdPermutation::identity(10)), std::invalid_argument);
}

TEST(Fertility, StandardizationInvariant) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> val(-50, 50);
    for (int trial = 0; trial < 300; ++trial) {
        std::set<std::int64_t> s;
        while (s.size() < 6) s.insert(val(rng));
        std::vector<std::int64_t> v(s.begin(), s.end());
        std::shuffle(v.begin(), v.end(), rng);
        Permutation p(v);
        EXPECT_EQ(fertility(p), brute_fertility(standardize(p)));
        EXPECT_EQ(stack_preimages(p).size(), brute_fertility(standardize(p)));
        for (auto& u : stack_preimages(p)) EXPECT_EQ(stack_sort(u), p);
    }
}

TEST(Fertility, MonotoneAlongStackSorting) {
    for (std::size_t n = 1; n <= 7; ++n) {
        std::vector<std::uint64_t> counts(factorial(n), 0);
        auto all = all_permutations(n);
        for (auto& w : all) ++counts[lehmer_rank(stack_sort(w))];
        for (std::size_t r = 0; r < all.size(); ++r)
            ASSERT_LE(counts[r], counts[lehmer_rank(stack_sort(all[r]))]);
    }
}

TEST(UniquelySorted, Structure) {
    for (std::size_t n = 1; n <= 9; ++n) {
        std::size_t avoiding = 0;
        for (auto& v : all_permutations(n)) {
            if (n >= 8 && descents(v).size() * 2 + 1 != n) continue;  // only these can qualify
            if (!is_uniquely_sorted(v.general())) continue;
            ASSERT_EQ(n % 2, 1u);
            ASSERT_EQ(descents(v).size(), (n - 1) / 2);
            ASSERT_EQ(enumerate_vhcs(v).size(), 1u);
            avoiding += avoids_231(v);
        }
        if (n % 2 == 1 && n <= 7) {
            EXPECT_EQ(avoiding, uniquely_sorted_231((n - 1) / 2)) << "n=" << n;
        }
    }
}

TEST(UniquelySorted, FigureExample) {
    auto v = from_digits("3214657");
    EXPECT_TRUE(is_uniquely_sorted(v.general()));
    EXPECT_TRUE(avoids_231(v));
    EXPECT_EQ(enumerate_vhcs(v).size(), 1u);
    EXPECT_EQ(direct_sum(direct_sum(from_digits("3214"), from_digits("21")), from_digits("1")), v);
}

TEST(Slmax, Values) {
    EXPECT_EQ(slmax(Permutation{1}), 1u);
    EXPECT_EQ(slmax(Permutation{}), 0u);
    EXPECT_EQ(slmax(from_digits("4723165").general()), 4u);  // 4213567
}

TEST(TwoStackSortable, ZeilbergerCounts) {
    for (std::size_t n = 1; n <= 7; ++n) {
        std::uint64_t count = 0;
        for (auto& w : all_permutations(n)) count += is_t_stack_sortable(w, 2);
        EXPECT_EQ(count, two_stack_sortable(n)) << "n=" << n;
    }
    EXPECT_EQ(two_stack_sortable(3), 6u);
}
