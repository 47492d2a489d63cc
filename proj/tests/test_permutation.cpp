#include <gtest/gtest.h>

#include <map>
#include <random>

#include "coxsort/permutation.hpp"

using namespace coxsort;

namespace {

// Direct transcription of the recursive definition: L m R -> stack(L) stack(R) m.
std::vector<std::int64_t> stack_recursive(const std::vector<std::int64_t>& w) {
    if (w.empty()) return {};
    auto it = std::max_element(w.begin(), w.end());
    std::vector<std::int64_t> left(w.begin(), it), right(it + 1, w.end());
    auto out = stack_recursive(left);
    auto r = stack_recursive(right);
    out.insert(out.end(), r.begin(), r.end());
    out.push_back(*it);
    return out;
}

StdPermutation brute_meet(const StdPermutation& a, const StdPermutation& b) {
    StdPermutation best = StdPermutation::identity(a.size());
    for (auto& z : all_permutations(a.size()))
        if (leq_left_weak(z, a) && leq_left_weak(z, b) && leq_left_weak(best, z)) best = z;
    return best;
}

std::uint64_t catalan(int n) {
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace

TEST(Standardize, Examples) {
    EXPECT_EQ(standardize(Permutation{7, -6, 4, 6}), from_digits("4123"));
    EXPECT_EQ(standardize(Permutation{}), StdPermutation{});
    EXPECT_EQ(standardize(Permutation{1, 2, 3}), from_digits("123"));
}

TEST(Permutation, RejectsBadInput) {
    EXPECT_THROW(Permutation({1, 1}), std::invalid_argument);
    EXPECT_THROW(Permutation({value_limit + 1}), std::invalid_argument);
    EXPECT_THROW(StdPermutation({1, 3}), std::invalid_argument);
    EXPECT_THROW(parse_permutation("1,x"), std::invalid_argument);
}

TEST(Codec, RoundTrip) {
    auto w = parse_permutation("4,7,2,-3,1,6,5");
    EXPECT_EQ(format_one_line(w), "4,7,2,-3,1,6,5");
    EXPECT_EQ(parse_permutation("[3,-1,2]").values(), (std::vector<std::int64_t>{3, -1, 2}));
}

TEST(StackSort, Examples) {
    EXPECT_EQ(stack_sort(from_digits("4723165")), from_digits("4213567"));
    EXPECT_EQ(stack_sort(Permutation{}), Permutation{});
    EXPECT_EQ(stack_sort(from_digits("231")), from_digits("213"));
}

TEST(StackSort, MatchesRecursiveDefinition) {
    for (std::size_t n = 0; n <= 7; ++n)
        for (auto& w : all_permutations(n)) {
            auto g = w.general();
            ASSERT_EQ(stack_sort(g).values(), stack_recursive(g.values()));
        }
}

TEST(StackSort, CommutesWithStandardization) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> val(-1000, 1000);
    for (std::size_t n = 0; n <= 7; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            std::set<std::int64_t> support;
            while (support.size() < n) support.insert(val(rng));
            std::vector<std::int64_t> v(support.begin(), support.end());
            std::shuffle(v.begin(), v.end(), rng);
            Permutation w(v);
            ASSERT_EQ(stack_sort(standardize(w)), standardize(stack_sort(w)));
        }
}

TEST(StackSort, IdentityPreimagesAreCatalan) {
    for (int n = 1; n <= 8; ++n) {
        std::uint64_t count = 0;
        for (auto& w : all_permutations(n)) count += stack_sort(w).is_identity();
        EXPECT_EQ(count, catalan(n)) << "n=" << n;
    }
}

TEST(StackSort, FixedPointsAreIncreasing) {
    for (std::size_t n = 0; n <= 6; ++n)
        for (auto& w : all_permutations(n)) EXPECT_EQ(stack_sort(w) == w, w.is_identity());
}

TEST(Descents, Examples) {
    EXPECT_EQ(descents(from_digits("231")), std::vector<int>{2});
    EXPECT_TRUE(descents(StdPermutation::identity(5)).empty());
    EXPECT_EQ(descents(from_digits("4213567")), (std::vector<int>{1, 2}));
}

TEST(Inversions, Examples) {
    EXPECT_EQ(right_inversions(from_digits("21")), (PairSet{{1, 2}}));
    EXPECT_TRUE(right_inversions(StdPermutation::identity(4)).empty());
    EXPECT_EQ(right_inversions(from_digits("231")), (PairSet{{1, 3}, {2, 3}}));
}

TEST(Inversions, LengthAgreesWithBothSides) {
    for (std::size_t n = 0; n <= 6; ++n)
        for (auto& w : all_permutations(n)) {
            EXPECT_EQ(length(w), right_inversions(w).size());
            EXPECT_EQ(length(w), left_inversions(w).size());
        }
}

TEST(WeakOrder, Examples) {
    EXPECT_TRUE(leq_left_weak(from_digits("1526374"), from_digits("4736251")));
    for (auto& w : all_permutations(4)) EXPECT_TRUE(leq_left_weak(StdPermutation::identity(4), w));
    EXPECT_FALSE(leq_left_weak(from_digits("231"), from_digits("213")));
    EXPECT_THROW(leq_left_weak(from_digits("12"), from_digits("123")), std::invalid_argument);
}

TEST(WeakOrder, AlphaIsAutomorphism) {
    for (std::size_t n = 1; n <= 5; ++n) {
        auto all = all_permutations(n);
        for (auto& v : all) {
            EXPECT_EQ(alpha_conjugate(alpha_conjugate(v)), v);
            auto w0 = StdPermutation::longest(n);
            EXPECT_EQ(alpha_conjugate(v), compose(compose(w0, v), w0));
            for (auto& w : all) {
                EXPECT_EQ(leq_left_weak(v, w), leq_left_weak(alpha_conjugate(v), alpha_conjugate(w)));
                EXPECT_EQ(leq_right_weak(v, w), leq_right_weak(alpha_conjugate(v), alpha_conjugate(w)));
            }
        }
    }
}

TEST(Alpha, Examples) {
    EXPECT_EQ(alpha_conjugate(StdPermutation::identity(4)), StdPermutation::identity(4));
    EXPECT_EQ(alpha_conjugate(from_digits("231")), from_digits("312"));
    EXPECT_EQ(alpha_conjugate(from_digits("4213567")), from_digits("1235764"));
}

TEST(Meet, Examples) {
    auto w = from_digits("3142");
    EXPECT_EQ(meet_left_weak(w, w), w);
    EXPECT_EQ(meet_left_weak(StdPermutation::identity(4), w), StdPermutation::identity(4));
    EXPECT_EQ(meet_left_weak(from_digits("231"), from_digits("312")), from_digits("123"));
}

TEST(Meet, AgreesWithBruteForce) {
    for (std::size_t n = 1; n <= 5; ++n) {
        auto all = all_permutations(n);
        for (auto& a : all)
            for (auto& b : all) {
                auto m = meet_left_weak(a, b);
                ASSERT_EQ(m, brute_meet(a, b)) << compact(a) << " " << compact(b);
            }
    }
}

TEST(Avoidance, Examples) {
    EXPECT_FALSE(avoids_231(from_digits("231")));
    for (std::size_t n = 0; n <= 2; ++n)
        for (auto& w : all_permutations(n)) EXPECT_TRUE(avoids_231(w));
    int count = 0;
    for (auto& w : all_permutations(4)) count += avoids_231(w);
    EXPECT_EQ(count, 14);
}

TEST(Avoidance, StackSortableIffAvoids231) {
    for (std::size_t n = 0; n <= 7; ++n)
        for (auto& w : all_permutations(n)) ASSERT_EQ(avoids_231(w), stack_sort(w).is_identity());
}

TEST(Ranking, RoundTrip) {
    for (std::size_t n = 0; n <= 6; ++n) {
        auto all = all_permutations(n);
        for (std::size_t r = 0; r < all.size(); ++r) {
            ASSERT_EQ(lehmer_rank(all[r]), r);
            ASSERT_EQ(lehmer_unrank(n, r), all[r]);
        }
    }
}

TEST(Helpers, ComposeInverseDirectSum) {
    for (auto& w : all_permutations(5)) EXPECT_TRUE(compose(w, inverse(w)).is_identity());
    EXPECT_EQ(direct_sum(from_digits("3214"), from_digits("21")), from_digits("321465"));
    EXPECT_EQ(left_to_right_maxima(from_digits("2413")), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(reverse(from_digits("132")), compose(from_digits("132"), StdPermutation::longest(3)));
    // s_i w swaps values, w s_i swaps positions
    EXPECT_EQ(left_simple(1, from_digits("231")), from_digits("132"));
    EXPECT_EQ(right_simple(from_digits("231"), 1), from_digits("321"));
}
