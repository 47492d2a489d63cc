#include <gtest/gtest.h>

#include "coxsort/congruence.hpp"
#include "coxsort/signed.hpp"

using namespace coxsort;

namespace {

SignedPermutation b(const std::string& digits) { return SignedPermutation(from_digits(digits)); }

// B_n by filtering S_2n for central symmetry.
std::vector<StdPermutation> brute_signed(std::size_t n) {
    std::vector<StdPermutation> out;
    for (auto& w : all_permutations(2 * n)) {
        bool ok = true;
        for (std::size_t i = 1; i <= 2 * n; ++i) ok &= w(2 * n + 1 - i) == static_cast<int>(2 * n + 1) - w(i);
        if (ok) out.push_back(w);
    }
    return out;
}

}  // namespace

TEST(Signed, Validation) {
    EXPECT_THROW(b("2134"), std::invalid_argument);
    EXPECT_THROW(b("123"), std::invalid_argument);
    EXPECT_NO_THROW(b("31527486"));
}

TEST(Signed, WindowCodec) {
    auto w = SignedPermutation::from_signed_window({2, -1});
    EXPECT_EQ(w.word(), from_digits("3142"));
    EXPECT_EQ(w.signed_window(), (std::vector<int>{2, -1}));
    EXPECT_EQ(SignedPermutation::from_signed_window({1, 2, 3}), SignedPermutation::identity(3));
    EXPECT_EQ(parse_signed("[2,-1]"), w);
    EXPECT_EQ(format_signed_window(w), "[2,-1]");
    for (auto& x : all_signed(3)) EXPECT_EQ(SignedPermutation::from_signed_window(x.signed_window()), x);
}

TEST(Signed, EnumerationMatchesSymmetricFilter) {
    for (std::size_t n = 1; n <= 4; ++n) {
        std::set<StdPermutation> ours;
        for (auto& x : all_signed(n)) ours.insert(x.word());
        auto brute = brute_signed(n);
        EXPECT_EQ(ours, std::set<StdPermutation>(brute.begin(), brute.end()));
        EXPECT_EQ(ours.size(), factorial(n) << n);
    }
}

TEST(StackB, Examples) {
    EXPECT_EQ(stack_b(b("31527486")), b("13254768"));
    EXPECT_TRUE(stack_b(SignedPermutation::identity(4)).is_identity());
    EXPECT_EQ(stack_b(b("82345671")), b("28345617"));
}

TEST(StackB, AlphaFixedDecorationIsAntisymmetric) {
    for (std::size_t n = 1; n <= 5; ++n) {
        auto d = type_b_decoration(n);
        for (std::size_t i = 1; i <= 2 * n; ++i) EXPECT_EQ(d(2 * n + 1 - i), complement(d(i)));
    }
}

TEST(StackB, WitnessOrbit) {
    auto orbit = orbit_b(b("82345671"));
    ASSERT_EQ(orbit.size(), 5u);
    EXPECT_EQ(orbit[1], b("28345617"));
    EXPECT_EQ(orbit[2], b("23845167"));
    EXPECT_EQ(orbit[3], b("23481567"));
    EXPECT_TRUE(orbit[4].is_identity());
    EXPECT_EQ(orbit_b(SignedPermutation::identity(3)).size(), 1u);
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(orbit_b(long_orbit_witness(n)).size(), n + 1);
}

TEST(StackB, DescentWitness) {
    EXPECT_EQ(descents_b(b("13254768")), (std::vector<int>{2, 4}));
    EXPECT_TRUE(descents_b(SignedPermutation::identity(4)).empty());
    for (std::size_t n = 1; n <= 6; ++n) {
        auto [v, w] = descent_witness(n);
        EXPECT_EQ(stack_b(w), v);
        EXPECT_EQ(descents_b(v).size(), n / 2);
    }
    auto [v4, w4] = descent_witness(4);
    EXPECT_EQ(w4, b("31527486"));
    EXPECT_EQ(v4, b("13254768"));
}

TEST(Census, ExhaustiveInvariants) {
    const std::vector<std::size_t> slow = {1, 2, 6, 32, 200};
    for (std::size_t n = 1; n <= 5; ++n) {
        auto rows = preimage_census(n);
        auto s = summarize(rows);
        EXPECT_EQ(s.preimage_total, factorial(n) << n);
        EXPECT_EQ(s.max_orbit, n + 1);
        EXPECT_LE(s.max_orbit, 2 * n);
        EXPECT_EQ(s.max_image_descents, n / 2);
        EXPECT_EQ(s.slow_to_sort, slow[n - 1]) << "n=" << n;
        for (auto& r : rows) {
            // orbit chase agrees with direct iteration
            ASSERT_EQ(r.orbit_size, orbit_b(r.element).size());
            // type-A descents of the image stay under the symmetric-group bound
            auto img = stack_b(r.element);
            ASSERT_LE(descents(img.word()).size(), lattice_descent_bound(2 * n));
        }
    }
}

TEST(Census, PreimagesMatchDirectScan) {
    auto rows = preimage_census(3);
    std::map<SignedPermutation, std::uint64_t> direct;
    for (auto& x : all_signed(3)) ++direct[stack_b(x)];
    for (auto& r : rows) EXPECT_EQ(r.preimages, direct.count(r.element) ? direct[r.element] : 0u);
}

TEST(Census, SinglePreimageElement) {
    auto rows = preimage_census(4);
    auto target = b("25136847");
    bool seen = false;
    for (auto& r : rows)
        if (r.element == target) {
            seen = true;
            EXPECT_EQ(r.preimages, 1u);
            EXPECT_EQ(r.descents, 1u);
        }
    EXPECT_TRUE(seen);
}

TEST(Census, OddRankCountsEvenAsEvidence) {
    EXPECT_TRUE(summarize(preimage_census(3)).all_counts_even);
    EXPECT_TRUE(summarize(preimage_census(1)).all_counts_even);
}

TEST(Census, CapEnforced) { EXPECT_THROW(all_signed(7), std::invalid_argument); }
