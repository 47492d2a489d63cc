#pragma once

#include <iomanip>
#include <map>
#include <random>

#include "affine.hpp"
#include "congruence.hpp"
#include "report.hpp"
#include "signed.hpp"

namespace coxsort {

namespace suite_detail {

// One descriptive anchor per check id; a missing entry is a programming error.
inline const std::string& anchor(const std::string& id) {
    static const std::map<std::string, std::string> table = {
        {"affine.avoider-count", "231-avoiding affine permutations are counted by binom(2n-1,n)"},
        {"affine.class-count", "uniquely sorted sylvester classes counted by 3 binom(4k,k) - 2 sum binom(4k,i)"},
        {"affine.figure-preimage", "worked example element is a preimage of its image"},
        {"affine.figure-tree", "decreasing affine binary plane tree of the worked example"},
        {"affine.fertility-formulas", "decomposition and hook-configuration fertility formulas agree"},
        {"affine.preimage-count", "constructed preimages number exactly the fertility"},
        {"affine.shift-decomposition", "uniquely sorted example is a shifted embedded direct sum"},
        {"affine.shift-example-unique", "shifted direct sum example is uniquely sorted"},
        {"affine.stack-figure", "affine stack-sorting of the worked example"},
        {"affine.subtree-isomorphism", "preimage sets correspond across a sylvester class"},
        {"affine.two-stack-example", "2-stack-sortable affine example"},
        {"affine.window-sum", "window sum of an affine permutation is n(n+1)/2"},
        {"affine.window-validity", "window notation validity"},
        {"congruence.fen3-forcing-order", "forcing order on the fences of S_3"},
        {"congruence.sylvester-up-op", "upward operator of the sylvester congruence is revstack inverse"},
        {"descent-bound.lattice-ideals", "essential lattice congruences: image descents at most floor(2(n-1)/3), attained"},
        {"descent-bound.semilattice", "essential semilattice congruences: image descents reach n-2"},
        {"fertility.decreasing-no-vhc", "decreasing permutation admits no valid hook configuration"},
        {"fertility.figure-unique", "231-avoiding uniquely sorted example in S_7"},
        {"fertility.figure-unique-vhc", "the example has a single valid hook configuration"},
        {"fertility.identity-catalan", "fertility of the identity is the Catalan number"},
        {"fertility.uniquely-sorted-231", "231-avoiding uniquely sorted permutations counted by 2 binom(4k+1,k+1)/((3k+1)(3k+2))"},
        {"fertility.uniquely-sorted-shape", "uniquely sorted permutations have odd size and (n-1)/2 descents"},
        {"fertility.vhc-figure", "16-point valid hook configuration with colouring (3,4,3,3)"},
        {"permutation.standardization", "standardization of a word"},
        {"permutree.down-stack-sort", "all-down permutree sorting is West stack-sorting"},
        {"permutree.figure-postorder", "postorder reading of the decorated example tree"},
        {"permutree.figure-projection", "class minimum of the decorated example"},
        {"permutree.figure-tree", "insertion of the decorated example and in-order round trip"},
        {"permutree.none-chain", "all-none decoration gives a path ordered by values"},
        {"permutree.none-constant", "all-none sorting sends every permutation to the identity"},
        {"permutree.none-equality", "all-none congruence is the equality congruence"},
        {"permutree.updown-descent-classes", "all-updown congruence is the descent congruence"},
        {"pop-stack.image", "pop-stack sorting reverses descending runs"},
        {"pop-stack.preimages", "pop-stack preimage counts are not monotone along the weak order"},
        {"property.central-symmetry", "stack_B keeps centrally symmetric words symmetric"},
        {"property.compulsive", "sorting operators are compulsive"},
        {"property.fertility-formula", "hook-configuration fertility formula matches brute force"},
        {"property.iota-compatibility", "affine stack-sorting restricts to stack-sorting on embedded S_n"},
        {"property.meet-oracle", "left weak order meets agree with the greatest lower bound"},
        {"property.pi-down-class-minimum", "projection lands on the class minimum"},
        {"property.pi-down-idempotent", "projection is idempotent"},
        {"property.preimage-monotonicity", "preimage counts decrease up the left weak order"},
        {"semilattice.essential", "refined interval congruence is essential"},
        {"semilattice.image", "sorting the top of the interval"},
        {"semilattice.image-descents", "image with n-2 descents"},
        {"semilattice.interval-class", "interval congruence has [u,v] as a class"},
        {"semilattice.meet-congruence", "refined interval congruence respects meets"},
        {"semilattice.refined-class", "refinement by descents keeps [u,v] as a class"},
        {"skyline.figure-contribution", "affine valid hook configuration contributes C_(2,1)"},
        {"skyline.figure-segments", "skyline segments of the worked example"},
        {"stack-b.figure-descents", "right descents of the type B example image"},
        {"stack-b.figure-example", "type B stack-sorting of the example tree"},
        {"stack-b.max-image-descents", "image of stack_B has at most floor(n/2) descents, attained"},
        {"stack-b.max-orbit", "longest stack_B orbit has n+1 elements"},
        {"stack-b.preimage-total", "preimage counts sum to |B_n|"},
        {"stack-b.single-preimage", "element with one preimage and one descent"},
        {"stack-b.single-preimage-descents", "element with one preimage and one descent"},
        {"stack-b.slow-to-sort", "elements not sorted by n-1 passes: 1,2,6,32,200,1566"},
        {"stack-b.witness", "stack_B of the long-orbit witness"},
        {"stack-b.witness-orbit", "orbit of the long-orbit witness"},
        {"stack-sort.identity-preimages", "identity preimages are counted by Catalan numbers"},
        {"stack-sort.image-descents", "image of stack-sorting has at most floor((n-1)/2) descents, attained"},
        {"stack-sort.two-stack-sortable", "2-stack-sortable permutations counted by 2 binom(3n,n)/((n+1)(2n+1))"},
        {"stack-sort.worked-example", "stack-sorting worked example"},
        {"two-stack.composition-sum", "affine 2-stack-sortable count by the composition sum"},
        {"two-stack.fertility-sum", "affine 2-stack-sortable count by summing fertilities of 231-avoiders"},
        {"two-stack.series-identity", "generating function identity for affine 2-stack-sortable counts"},
        {"weak-order.interval-pair", "left weak order comparison"},
        {"zeta.example", "zeta construction"},
        {"zeta.pop-stack", "pop-stack image of zeta_9"},
        {"zeta.tightness", "pop-stack image of zeta_n has floor(2(n-1)/3) descents"},
        {"experiment.db-average", "average number of stack_B passes to sort"},
        {"experiment.parity", "stack_B preimage counts are even for odd n"},
        {"experiment.affine-monotonicity", "affine fertility does not drop along stack-sorting"},
    };
    auto it = table.find(id);
    ensure(it != table.end(), "check id without an anchor");
    return it->second;
}

inline Finding finding(const std::string& id, const std::string& parameters, std::optional<Value> expected,
                       Value observed, std::string note = {}) {
    return {id, anchor(id), parameters, std::move(expected), std::move(observed), std::move(note)};
}

inline std::string param(const char* key, std::size_t v) { return std::string(key) + "=" + std::to_string(v); }

inline std::string set_text(const std::vector<int>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return s + "}";
}

template <class Fn>
void for_each_permutation(std::size_t n, Fn fn) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
        fn(StdPermutation(v, StdPermutation::unchecked{}));
    } while (std::next_permutation(v.begin(), v.end()));
}

// Closed forms, evaluated directly rather than through the library's recurrences.
inline Count catalan_closed(std::size_t m) { return binomial(2 * m, m) / (m + 1); }
inline Count two_stack_closed(std::size_t m) { return 2 * binomial(3 * m, m) / ((m + 1) * (2 * m + 1)); }
inline Count uniquely_sorted_231_closed(std::size_t k) {
    return 2 * binomial(4 * k + 1, k + 1) / ((3 * k + 1) * (3 * k + 2));
}
inline Count class_count_closed(std::size_t k) {
    Count tail = 0;
    for (std::size_t i = 0; i <= k; ++i) tail += binomial(4 * k, i);
    return 3 * binomial(4 * k, k) - 2 * tail;
}

// Random residues in random order, translated by random multiples of n with zero net shift.
inline AffinePermutation random_affine(std::size_t n, std::mt19937_64& rng, int spread) {
    std::vector<std::int64_t> window(n);
    std::iota(window.begin(), window.end(), 1);
    std::shuffle(window.begin(), window.end(), rng);
    std::uniform_int_distribution<int> d(-spread, spread);
    std::int64_t total = 0;
    std::vector<std::int64_t> shifts(n);
    for (auto& s : shifts) total += (s = d(rng));
    shifts[0] -= total;
    for (std::size_t i = 0; i < n; ++i) window[i] += shifts[i] * static_cast<std::int64_t>(n);
    return AffinePermutation(std::move(window));
}

inline std::string segment_text(const Permutation& z) {
    std::string s = "(";
    for (std::size_t i = 0; i < z.size(); ++i) s += (i ? "," : "") + std::to_string(z.values()[i]);
    return s + ")";
}

inline std::string describe_tree(const AffineDecreasingTree& t) {
    std::string s = "branch={";
    for (std::size_t i = 0; i < t.branch().size(); ++i) s += (i ? "," : "") + std::to_string(t.branch()[i]);
    s += "}";
    auto ref = [](const VertexRef& x) { return "(" + std::to_string(x.residue) + "," + std::to_string(x.period) + ")"; };
    for (std::int64_t r = 1; r <= static_cast<std::int64_t>(t.rank()); ++r) {
        const auto& v = t.vertex(r);
        if (!v.left && !v.right) continue;
        s += " " + std::to_string(r) + ":";
        if (v.left) s += "L" + ref(*v.left);
        if (v.right) s += "R" + ref(*v.right);
    }
    return s;
}

inline std::string cap_note(std::size_t cap, bool slow) {
    return "capped at n=" + std::to_string(cap) + (slow ? "" : " without --slow");
}

}  // namespace suite_detail

// ---- type A --------------------------------------------------------------------

inline VerificationReport type_a_suite(const Caps& caps) {
    using namespace suite_detail;
    const std::size_t n = caps.n ? caps.n : 7;
    const std::size_t cap = caps.slow ? 10 : 9;
    CheckList list;

    list.add("stack-sort.worked-example", anchor("stack-sort.worked-example"), "w=4723165", [] {
        return std::pair{Value::of("4213567"), Value::of(compact(stack_sort(from_digits("4723165"))))};
    });
    list.add("permutation.standardization", anchor("permutation.standardization"), "w=7,-6,4,6", [] {
        return std::pair{Value::of("4123"), Value::of(compact(standardize(Permutation{7, -6, 4, 6})))};
    });
    list.add("weak-order.interval-pair", anchor("weak-order.interval-pair"), "u=1526374 v=4736251", [] {
        return std::pair{Value::of(true), Value::of(leq_left_weak(from_digits("1526374"), from_digits("4736251")))};
    });

    list.add_group("pop-stack", "n=5", [] {
        auto d = Decoration::uniform(5, Symbol::updown);
        auto a = from_digits("24135"), b = from_digits("21435");
        std::uint64_t to_a = 0, to_b = 0;
        for_each_permutation(5, [&](const StdPermutation& w) {
            auto s = permutree_sort(d, w);
            to_a += s == a;
            to_b += s == b;
        });
        return std::vector<Finding>{
            finding("pop-stack.image", "w=24135", Value::of("21435"), Value::of(compact(permutree_sort(d, a)))),
            finding("pop-stack.preimages", "v=24135", Value::of(3), Value::of(to_a)),
            finding("pop-stack.preimages", "v=21435", Value::of(2), Value::of(to_b))};
    });

    list.add_group("permutree.figure", "w=1346257 decoration=unbnudd", [] {
        const std::string p = "w=1346257 decoration=unbnudd";
        auto d = Decoration::parse("unbnudd");
        auto w = from_digits("1346257");
        auto t = insert(w, d);
        auto bad = t.violations();
        return std::vector<Finding>{
            finding("permutree.figure-tree", p, Value::of("1346257"),
                    Value::of(bad.empty() ? compact(t.in_order()) : "invalid tree: " + bad)),
            finding("permutree.figure-postorder", p, Value::of("1324657"), Value::of(compact(t.postorder_reading()))),
            finding("permutree.figure-projection", p, Value::of("1245367"),
                    Value::of(compact(pi_down_permutree(d, w))))};
    });

    list.add("congruence.fen3-forcing-order", anchor("congruence.fen3-forcing-order"), "n=3", [] {
        // wide fences sit below the two short fences; the two wide fences are incomparable
        const std::string expected = "4 fences; (1,3;{2})<(1,2;{}) (1,3;{2})<(2,3;{}) (1,3;{})<(1,2;{}) (1,3;{})<(2,3;{})";
        auto fences = all_fences(3);
        std::vector<std::string> relations;
        for (auto& f : fences)
            for (auto& g : fences)
                if (!(f == g) && forcing_leq(f, g)) relations.push_back(f.str() + "<" + g.str());
        std::sort(relations.begin(), relations.end());
        std::string observed = std::to_string(fences.size()) + " fences;";
        for (auto& r : relations) observed += " " + r;
        return std::pair{Value::of(expected), Value::of(observed)};
    });

    list.add_group("fertility.figure", "v=3214657", [] {
        auto v = from_digits("3214657");
        bool unique = fertility(v) == 1 && brute_fertility(v) == 1 && avoids_231(v);
        return std::vector<Finding>{
            finding("fertility.figure-unique", "v=3214657", Value::of(true), Value::of(unique)),
            finding("fertility.figure-unique-vhc", "v=3214657", Value::of(1), Value::of(enumerate_vhcs(v).size()))};
    });
    list.skip("fertility.vhc-figure", anchor("fertility.vhc-figure"), "n=16",
              "the permutation is only drawn, not given in text");

    for (std::size_t m = 1; m <= n; ++m) {
        const auto p = param("n", m);
        if (m > cap) {
            for (auto id : {"stack-sort.identity-preimages", "stack-sort.two-stack-sortable", "stack-sort.image-descents"})
                list.skip(id, anchor(id), p, cap_note(cap, caps.slow));
            continue;
        }
        list.add_group("stack-sort.census", p, [m, p] {
            std::uint64_t to_identity = 0, two = 0;
            std::size_t best = 0;
            for_each_permutation(m, [&](const StdPermutation& w) {
                auto s = stack_sort(w);
                to_identity += s.is_identity();
                two += stack_sort(s).is_identity();
                best = std::max(best, descents(s).size());
            });
            return std::vector<Finding>{
                finding("stack-sort.identity-preimages", p, Value::of(catalan_closed(m)), Value::of(to_identity)),
                finding("stack-sort.two-stack-sortable", p, Value::of(two_stack_closed(m)), Value::of(two)),
                finding("stack-sort.image-descents", p, Value::of((m - 1) / 2), Value::of(best))};
        });
        list.add("fertility.identity-catalan", anchor("fertility.identity-catalan"), p, [m] {
            return std::pair{Value::of(catalan_closed(m)), Value::of(fertility(StdPermutation::identity(m)))};
        });
        if (m >= 2 && m <= 9)
            list.add("fertility.decreasing-no-vhc", anchor("fertility.decreasing-no-vhc"), p, [m] {
                return std::pair{Value::of(0), Value::of(enumerate_vhcs(StdPermutation::longest(m)).size())};
            });
        if (m <= 9)
            list.add_group("fertility.uniquely-sorted", p, [m, p] {
                // preimage counts by one pass of stack-sorting over S_m
                std::vector<std::uint32_t> hits(factorial(m), 0);
                for_each_permutation(m, [&](const StdPermutation& w) { ++hits[lehmer_rank(stack_sort(w))]; });
                std::uint64_t off_shape = 0, avoiding = 0, unique = 0;
                for_each_permutation(m, [&](const StdPermutation& v) {
                    if (hits[lehmer_rank(v)] != 1) return;
                    ++unique;
                    off_shape += m % 2 == 0 || descents(v).size() * 2 + 1 != m;
                    avoiding += avoids_231(v);
                });
                std::vector<Finding> out{finding("fertility.uniquely-sorted-shape", p, Value::of(0), Value::of(off_shape),
                                                 std::to_string(unique) + " uniquely sorted")};
                if (m % 2 == 1)
                    out.push_back(finding("fertility.uniquely-sorted-231", p,
                                          Value::of(uniquely_sorted_231_closed((m - 1) / 2)), Value::of(avoiding)));
                return out;
            });
        if (m <= 6)
            list.add_group("permutree.none", p, [m, p] {
                auto d = Decoration::uniform(m, Symbol::none);
                std::uint64_t not_chain = 0, not_identity = 0;
                for_each_permutation(m, [&](const StdPermutation& w) {
                    auto t = insert(w, d);
                    for (int q = 1; q <= static_cast<int>(m); ++q) {
                        const auto& v = t.vertex(q);
                        int child = v.children[0];
                        bool ok = v.children[1] == 0 && v.parents[1] == 0 &&
                                  (v.label == 1 ? child == 0 : child != 0 && t.vertex(child).label == v.label - 1);
                        if (!ok) {
                            ++not_chain;
                            break;
                        }
                    }
                    not_identity += !permutree_sort(d, w).is_identity();
                });
                return std::vector<Finding>{
                    finding("permutree.none-chain", p, Value::of(0), Value::of(not_chain)),
                    finding("permutree.none-constant", p, Value::of(0), Value::of(not_identity)),
                    finding("permutree.none-equality", p, Value::of(factorial(m)),
                            Value::of(permutree_congruence(d).class_count()))};
            });
        if (m <= 7)
            list.add("permutree.down-stack-sort", anchor("permutree.down-stack-sort"), p, [m] {
                auto d = Decoration::uniform(m, Symbol::down);
                std::uint64_t bad = 0;
                for_each_permutation(m, [&](const StdPermutation& w) {
                    auto t = insert(w, d);
                    bad += permutree_sort(d, w) != stack_sort(w) || t.postorder_reading() != stack_sort(t.in_order());
                });
                return std::pair{Value::of(0), Value::of(bad)};
            });
        if (m <= 5) {
            list.add("permutree.updown-descent-classes", anchor("permutree.updown-descent-classes"), p, [m] {
                auto c = permutree_congruence(Decoration::uniform(m, Symbol::updown));
                auto all = all_permutations(m);
                std::uint64_t bad = 0;
                for (auto& v : all)
                    for (auto& w : all) bad += c.same_class(v, w) != (descents(v) == descents(w));
                return std::pair{Value::of(0), Value::of(bad)};
            });
            list.add("congruence.sylvester-up-op", anchor("congruence.sylvester-up-op"), p, [m] {
                auto c = sylvester_congruence(m);
                std::uint64_t bad = 0;
                for_each_permutation(m, [&](const StdPermutation& w) {
                    bad += up_op(c, w) != inverse(stack_sort(reverse(w)));
                });
                return std::pair{Value::of(0), Value::of(bad)};
            });
        }
    }
    return list.run("type-a");
}

// ---- type B --------------------------------------------------------------------

inline VerificationReport type_b_suite(const Caps& caps) {
    using namespace suite_detail;
    const std::size_t n = caps.n ? caps.n : 5;
    const std::size_t cap = caps.slow ? 6 : 5;
    CheckList list;
    auto word = [](const SignedPermutation& w) { return compact(w.word()); };

    list.add("stack-b.figure-example", anchor("stack-b.figure-example"), "w=31527486", [word] {
        return std::pair{Value::of("13254768"), Value::of(word(stack_b(parse_signed("31527486"))))};
    });
    list.add("stack-b.witness", anchor("stack-b.witness"), "u=82345671", [word] {
        return std::pair{Value::of("28345617"), Value::of(word(stack_b(parse_signed("82345671"))))};
    });
    list.add("stack-b.witness-orbit", anchor("stack-b.witness-orbit"), "u=82345671", [word] {
        std::string observed;
        for (auto& x : orbit_b(parse_signed("82345671"))) observed += (observed.empty() ? "" : ",") + word(x);
        return std::pair{Value::of("82345671,28345617,23845167,23481567,12345678"), Value::of(observed)};
    });
    list.add("stack-b.figure-descents", anchor("stack-b.figure-descents"), "v=13254768", [] {
        return std::pair{Value::of("{2,4}"), Value::of(set_text(descents_b(parse_signed("13254768"))))};
    });
    list.add_group("stack-b.single-preimage", "v=25136847", [] {
        auto target = parse_signed("25136847");
        std::uint64_t hits = 0;
        for (auto& x : all_signed(4)) hits += stack_b(x) == target;
        return std::vector<Finding>{
            finding("stack-b.single-preimage", "v=25136847", Value::of(1), Value::of(hits)),
            finding("stack-b.single-preimage-descents", "v=25136847", Value::of(1),
                    Value::of(descents_b(target).size()))};
    });

    static const std::vector<std::uint64_t> slow_sequence = {1, 2, 6, 32, 200, 1566};
    for (std::size_t m = 1; m <= n; ++m) {
        const auto p = param("n", m);
        if (m > cap) {
            for (auto id : {"stack-b.max-orbit", "stack-b.max-image-descents", "stack-b.slow-to-sort",
                            "stack-b.preimage-total"})
                list.skip(id, anchor(id), p, cap_note(cap, caps.slow));
            continue;
        }
        list.add_group("stack-b.census", p, [m, p, cap] {
            auto s = summarize(preimage_census(m, cap));
            std::optional<Value> slow_expected;
            if (m <= slow_sequence.size()) slow_expected = Value::of(slow_sequence[m - 1]);
            return std::vector<Finding>{
                finding("stack-b.max-orbit", p, Value::of(m + 1), Value::of(s.max_orbit)),
                finding("stack-b.max-image-descents", p, Value::of(m / 2), Value::of(s.max_image_descents)),
                finding("stack-b.slow-to-sort", p, slow_expected, Value::of(s.slow_to_sort)),
                finding("stack-b.preimage-total", p, Value::of(factorial(m) << m), Value::of(s.preimage_total))};
        });
    }
    return list.run("type-b");
}

// ---- affine --------------------------------------------------------------------

inline VerificationReport affine_suite(const Caps& caps) {
    using namespace suite_detail;
    const std::size_t n = caps.n ? caps.n : 4;
    const std::size_t count_cap = caps.slow ? 5 : 4;
    const std::size_t avoider_cap = caps.slow ? 6 : 5;
    const std::size_t class_cap = caps.slow ? 3 : 2;
    CheckList list;
    const AffinePermutation w({3, -1, 2, -2, 7, 12});
    const AffinePermutation v({-2, 2, 3, 6, 7, 5});

    list.add_group("affine.window", "w=[3,-1,2,-2,7,12]", [] {
        const std::string p = "w=[3,-1,2,-2,7,12]";
        std::vector<std::int64_t> window{3, -1, 2, -2, 7, 12};
        bool valid = true;
        try {
            AffinePermutation check(window);
        } catch (const std::invalid_argument&) {
            valid = false;
        }
        return std::vector<Finding>{
            finding("affine.window-validity", p, Value::of(true), Value::of(valid)),
            finding("affine.window-sum", p, Value::of(21),
                    Value::of(std::accumulate(window.begin(), window.end(), std::int64_t{0})))};
    });
    list.add("affine.figure-tree", anchor("affine.figure-tree"), "w=[3,-1,2,-2,7,12]", [w] {
        auto t = affine_tree(w);
        std::string observed = describe_tree(t);
        if (t.in_order() != w) observed += " (in-order mismatch)";
        return std::pair{Value::of("branch={5,6} 1:R(3,0) 3:L(2,0)R(4,0) 5:L(6,-1) 6:L(5,0)R(1,1)"), Value::of(observed)};
    });
    list.add("affine.stack-figure", anchor("affine.stack-figure"), "w=[3,-1,2,-2,7,12]", [w] {
        return std::pair{Value::of("[-2,2,3,6,7,5]"), Value::of(format_window(affine_stack(w)))};
    });
    list.add("affine.two-stack-example", anchor("affine.two-stack-example"), "w=[0,3,2,-1,8,4,12]", [] {
        AffinePermutation x({0, 3, 2, -1, 8, 4, 12});
        bool two = !affine_stack(x).is_identity() && affine_stack_power(x, 2).is_identity();
        return std::pair{Value::of(true), Value::of(two)};
    });
    list.add("skyline.figure-segments", anchor("skyline.figure-segments"), "v=[-2,2,3,6,7,5] maxima=1,6", [v] {
        std::string observed;
        for (auto& z : segments(make_skyline(v, {4, 5}))) observed += segment_text(z);
        return std::pair{Value::of("(-1,-2,2,3)()"), Value::of(observed)};
    });
    list.add("skyline.figure-contribution", anchor("skyline.figure-contribution"), "v=[-2,2,3,6,7,5]", [v] {
        Count term = 0;
        for (auto& h : enumerate_affine_vhcs(v))
            if (h.skyline.residues == std::vector<std::int64_t>{4, 5} && h.parts[0].hooks.size() == 1 &&
                h.parts[0].hooks[0].ne_position == 3)
                term = catalan_product(q_composition(h));
        return std::pair{Value::of(2), Value::of(term)};
    });
    list.add("affine.figure-preimage", anchor("affine.figure-preimage"), "v=[-2,2,3,6,7,5]", [v, w] {
        auto pre = affine_preimages(v);
        return std::pair{Value::of(true), Value::of(std::find(pre.begin(), pre.end(), w) != pre.end())};
    });
    list.add_group("affine.shift", "u=3214+21", [] {
        const std::string p = "u=3214+21";
        auto u = direct_sum(from_digits("3214"), from_digits("21"));
        auto x = shift(shift(shift(iota(u))));
        return std::vector<Finding>{
            finding("affine.shift-decomposition", p, Value::of("[1,3,2,6,5,4]"), Value::of(format_window(x))),
            finding("affine.shift-example-unique", p, Value::of(true), Value::of(is_uniquely_sorted_affine(x)))};
    });
    list.add("affine.subtree-isomorphism", anchor("affine.subtree-isomorphism"),
             "samples=" + std::to_string(caps.samples) + " seed=" + std::to_string(caps.seed), [caps] {
                 std::mt19937_64 rng(caps.seed);
                 std::uint64_t bad = 0, checked = 0;
                 for (std::size_t trial = 0; trial < caps.samples; ++trial) {
                     std::size_t rank = 2 + trial % 3;
                     auto z = random_affine(rank, rng, 2);
                     for (std::size_t i = 1; i <= rank; ++i) {
                         auto sz = left_simple(i, z);
                         if (!same_affine_class(z, sz)) continue;
                         ++checked;
                         auto a = affine_preimages(z), b = affine_preimages(sz);
                         std::set<AffinePermutation> moved;
                         for (auto& x : a) moved.insert(left_simple(i, x));
                         bad += moved != std::set<AffinePermutation>(b.begin(), b.end());
                     }
                 }
                 return std::pair{Value::of(0), Value::of(bad)};
             });

    std::vector<Count> composition_sums;
    for (std::size_t m = 1; m <= n; ++m) {
        const auto p = param("n", m);
        if (m > avoider_cap)
            list.skip("affine.avoider-count", anchor("affine.avoider-count"), p, cap_note(avoider_cap, caps.slow));
        else
            list.add("affine.avoider-count", anchor("affine.avoider-count"), p, [m, avoider_cap] {
                auto e = enumerate_231_avoiders(m, avoider_cap);
                return std::pair{Value::of(binomial(2 * m - 1, m)), Value::of(e.avoiders.size())};
            });
        if (m > count_cap) {
            for (auto id : {"affine.fertility-formulas", "affine.preimage-count", "two-stack.fertility-sum"})
                list.skip(id, anchor(id), p, cap_note(count_cap, caps.slow));
        } else {
            list.add_group("affine.fertility", p, [m, p] {
                std::uint64_t disagree = 0, wrong_preimages = 0;
                Count total = 0;
                for (auto& a : enumerate_231_avoiders(m).avoiders) {
                    auto f = fertility_by_hook_configurations(a);
                    disagree += fertility_by_decomposition(a) != f;
                    wrong_preimages += Count(affine_preimages(a).size()) != f;
                    total += f;
                }
                return std::vector<Finding>{
                    finding("affine.fertility-formulas", p, Value::of(0), Value::of(disagree)),
                    finding("affine.preimage-count", p, Value::of(0), Value::of(wrong_preimages)),
                    finding("two-stack.fertility-sum", p, Value::of(count_2ss_by_series(m)), Value::of(total))};
            });
        }
        list.add("two-stack.composition-sum", anchor("two-stack.composition-sum"), p, [m] {
            return std::pair{Value::of(count_2ss_by_series(m)), Value::of(count_2ss_by_compositions(m))};
        });
    }
    list.add("two-stack.series-identity", anchor("two-stack.series-identity"), param("order", n), [n] {
        // the series routine checks (S+1) I (I-1) = q I' coefficientwise up to the order
        auto s = affine_two_stack_series(n);
        std::string expected, observed;
        for (std::size_t k = 1; k <= n; ++k) {
            expected += (k > 1 ? "," : "") + count_2ss_by_compositions(k).str();
            observed += (k > 1 ? "," : "") + s[k].str();
        }
        return std::pair{Value::of(expected), Value::of(observed)};
    });
    for (std::size_t k = 1; k <= std::max<std::size_t>(1, n / 2); ++k) {
        const auto p = param("k", k);
        if (k > class_cap) {
            list.skip("affine.class-count", anchor("affine.class-count"), p, "capped at k=" + std::to_string(class_cap) +
                                                                                  (caps.slow ? "" : " without --slow"));
            continue;
        }
        list.add("affine.class-count", anchor("affine.class-count"), p, [k] {
            auto avoiders = enumerate_231_avoiders(2 * k, std::max(avoider_cap_default, 2 * k)).avoiders;
            std::vector<char> unique(avoiders.size(), 0);
            for (std::size_t t = 0; t < avoiders.size(); ++t) unique[t] = affine_fertility(avoiders[t]) == 1;
            auto count = static_cast<std::uint64_t>(std::count(unique.begin(), unique.end(), 1));
            return std::pair{Value::of(class_count_closed(k)), Value::of(count)};
        });
    }
    return list.run("affine");
}

// ---- descent bounds -------------------------------------------------------------

inline VerificationReport descent_bounds_suite(const Caps& caps) {
    using namespace suite_detail;
    const std::size_t n = caps.n ? caps.n : 4;
    const std::size_t ideal_cap = 4;
    CheckList list;

    for (std::size_t m = 2; m <= n; ++m) {
        const auto p = param("n", m);
        if (m > ideal_cap) {
            list.skip("descent-bound.lattice-ideals", anchor("descent-bound.lattice-ideals"), p,
                      "order ideals enumerated up to n=4");
            continue;
        }
        list.add_group("descent-bound", p, [m, p] {
            auto rep = verify_descent_bounds(m);
            std::vector<Finding> out{finding(
                "descent-bound.lattice-ideals", p, Value::of(2 * (m - 1) / 3), Value::of(rep.achieved),
                std::to_string(rep.ideals) + " ideals, " + std::to_string(rep.essential_ideals) + " essential, witness " +
                    compact(rep.witness_permutation))};
            if (rep.semilattice_checked)
                out.push_back(finding("descent-bound.semilattice", p, Value::of(m - 2), Value::of(rep.semilattice_descents)));
            return out;
        });
    }

    list.add_group("zeta", "n=3,6,9", [] {
        return std::vector<Finding>{
            finding("zeta.example", "n=3", Value::of("231"), Value::of(compact(zeta(3)))),
            finding("zeta.example", "n=6", Value::of("251463"), Value::of(compact(zeta(6)))),
            finding("zeta.example", "n=9", Value::of("251483796"), Value::of(compact(zeta(9)))),
            finding("zeta.pop-stack", "n=9", Value::of("215438769"), Value::of(compact(pop_stack(zeta(9)))))};
    });
    for (std::size_t m = 3; m <= 9; ++m)
        list.add("zeta.tightness", anchor("zeta.tightness"), param("n", m), [m] {
            return std::pair{Value::of(2 * (m - 1) / 3), Value::of(descents(pop_stack(zeta(m))).size())};
        });

    list.add_group("semilattice", "u=1526374 v=4736251", [] {
        const std::string p = "u=1526374 v=4736251";
        auto u = from_digits("1526374"), v = from_digits("4736251");
        std::set<StdPermutation> interval;
        for_each_permutation(7, [&](const StdPermutation& z) {
            if (leq_left_weak(u, z) && leq_left_weak(z, v)) interval.insert(z);
        });
        auto class_of_u = [&](const Congruence& c) {
            std::set<StdPermutation> got;
            for (auto r : c.members(c.class_of(u))) got.insert(c.table().element(r));
            return got == interval;
        };
        auto ic = congruence_from_interval(u, v);
        auto c = refine(ic.congruence, descent_congruence(7));
        auto image = sort_op(c, v);
        const std::string note = "closure iterations " + std::to_string(ic.iterations) + ", down-set size " +
                                 std::to_string(ic.down_set_size) + ", interval size " + std::to_string(interval.size());
        return std::vector<Finding>{
            finding("semilattice.interval-class", p, Value::of(true), Value::of(class_of_u(ic.congruence)), note),
            finding("semilattice.refined-class", p, Value::of(true), Value::of(class_of_u(c))),
            finding("semilattice.essential", p, Value::of(true), Value::of(is_essential(c))),
            finding("semilattice.meet-congruence", p, Value::of(true), Value::of(is_meet_semilattice_congruence(c))),
            finding("semilattice.image", p, Value::of("4321765"), Value::of(compact(image))),
            finding("semilattice.image-descents", p, Value::of(5), Value::of(descents(image).size()))};
    });
    return list.run("descent-bounds");
}

// ---- properties -------------------------------------------------------------------

inline VerificationReport properties_suite(const Caps& caps) {
    using namespace suite_detail;
    CheckList list;

    for (std::size_t m = 1; m <= 5; ++m)
        list.add("property.meet-oracle", anchor("property.meet-oracle"), param("n", m), [m] {
            const auto& t = *WeakOrderTable::get(m);
            std::uint64_t bad = 0;
            for (std::size_t a = 0; a < t.count(); ++a)
                for (std::size_t b = 0; b < t.count(); ++b) {
                    // greatest common lower bound straight from the definition
                    std::size_t best = 0;
                    for (std::size_t z = 0; z < t.count(); ++z)
                        if (leq_left_weak(t.element(z), t.element(a)) && leq_left_weak(t.element(z), t.element(b)) &&
                            t.length(z) > t.length(best))
                            best = z;
                    bool greatest = true;
                    for (std::size_t z = 0; z < t.count(); ++z)
                        if (leq_left_weak(t.element(z), t.element(a)) && leq_left_weak(t.element(z), t.element(b)))
                            greatest &= leq_left_weak(t.element(z), t.element(best));
                    bad += !greatest || t.meet(a, b) != best ||
                           meet_left_weak(t.element(a), t.element(b)) != t.element(best);
                }
            return std::pair{Value::of(0), Value::of(bad)};
        });

    for (std::size_t m = 1; m <= 7; ++m)
        list.add("property.fertility-formula", anchor("property.fertility-formula"), param("n", m), [m] {
            std::vector<std::uint64_t> hits(factorial(m), 0);
            for_each_permutation(m, [&](const StdPermutation& w) { ++hits[lehmer_rank(stack_sort(w))]; });
            std::uint64_t bad = 0;
            for_each_permutation(m, [&](const StdPermutation& v) { bad += fertility(v) != hits[lehmer_rank(v)]; });
            return std::pair{Value::of(0), Value::of(bad)};
        });

    for (std::size_t m = 1; m <= 4; ++m)
        list.add_group("property.pi-down", param("n", m), [m] {
            std::uint64_t not_idempotent = 0, not_minimum = 0;
            auto all = all_permutations(m);
            for (auto& d : Decoration::all(m)) {
                // classes by tree skeleton, minimum by length
                std::map<std::string, StdPermutation> minima;
                for (auto& w : all) {
                    auto key = insert(w, d).skeleton();
                    auto it = minima.find(key);
                    if (it == minima.end() || length(w) < length(it->second)) minima[key] = w;
                }
                for (auto& w : all) {
                    auto pi = pi_down_permutree(d, w);
                    not_idempotent += pi_down_permutree(d, pi) != pi;
                    not_minimum += pi != minima.at(insert(w, d).skeleton());
                }
            }
            const auto p = param("n", m);
            return std::vector<Finding>{
                finding("property.pi-down-idempotent", p, Value::of(0), Value::of(not_idempotent),
                        std::to_string(std::size_t{1} << (2 * m)) + " decorations"),
                finding("property.pi-down-class-minimum", p, Value::of(0), Value::of(not_minimum))};
        });

    for (std::size_t m = 1; m <= 5; ++m)
        list.add("property.compulsive", anchor("property.compulsive"), param("n", m), [m] {
            std::uint64_t bad = 0;
            auto all = all_permutations(m);
            for (auto& d : Decoration::all(m))
                for (auto& w : all) {
                    auto s = permutree_sort(d, w);
                    bad += !leq_right_weak(s, w);
                    for (int i : descents(w)) bad += !leq_right_weak(s, right_simple(w, i));
                }
            return std::pair{Value::of(0), Value::of(bad)};
        });

    for (std::size_t m = 2; m <= 5; ++m)
        list.add("property.preimage-monotonicity", anchor("property.preimage-monotonicity"),
                 param("n", m) + " seed=" + std::to_string(caps.seed), [m, seed = caps.seed] {
                     auto monotone = [](const Congruence& c) {
                         auto counts = preimage_counts(c);
                         const auto& t = c.table();
                         for (std::size_t r = 0; r < t.count(); ++r)
                             for (auto [i, up] : t.upper_covers(r))
                                 if (counts[r] < counts[up]) return false;
                         return true;
                     };
                     std::uint64_t bad = 0;
                     for (auto& d : Decoration::all(m)) bad += !monotone(permutree_congruence(d));
                     // interval congruences refined by descents, sampled
                     std::mt19937_64 rng(seed + m);
                     auto all = all_permutations(m);
                     std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
                     auto des = descent_congruence(m);
                     for (int found = 0, tries = 0; found < 12 && tries < 10000; ++tries) {
                         auto &u = all[pick(rng)], &v = all[pick(rng)];
                         if (u == v || !leq_left_weak(u, v)) continue;
                         ++found;
                         auto c = refine(congruence_from_interval(u, v).congruence, des);
                         bad += !is_essential(c) || !monotone(c);
                     }
                     return std::pair{Value::of(0), Value::of(bad)};
                 });

    for (std::size_t m = 1; m <= 5; ++m)
        list.add("property.central-symmetry", anchor("property.central-symmetry"), param("n", m), [m] {
            auto d = type_b_decoration(m);
            std::uint64_t bad = 0;
            for (auto& x : all_signed(m)) {
                auto image = permutree_sort(d, x.word());
                const std::size_t len = image.size();
                for (std::size_t i = 1; i <= len; ++i)
                    if (image(len + 1 - i) != static_cast<int>(len + 1) - image(i)) {
                        ++bad;
                        break;
                    }
            }
            return std::pair{Value::of(0), Value::of(bad)};
        });

    for (std::size_t m = 1; m <= 6; ++m)
        list.add("property.iota-compatibility", anchor("property.iota-compatibility"), param("n", m), [m] {
            std::uint64_t bad = 0;
            for_each_permutation(m, [&](const StdPermutation& u) { bad += affine_stack(iota(u)) != iota(stack_sort(u)); });
            return std::pair{Value::of(0), Value::of(bad)};
        });
    return list.run("properties");
}

// ---- dispatch ------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"type-a", "type-b", "affine", "descent-bounds", "properties"};
    return names;
}

inline VerificationReport run_suite(const std::string& name, const Caps& caps) {
    if (name == "type-a") return type_a_suite(caps);
    if (name == "type-b") return type_b_suite(caps);
    if (name == "affine") return affine_suite(caps);
    if (name == "descent-bounds") return descent_bounds_suite(caps);
    if (name == "properties") return properties_suite(caps);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

// ---- experiments (evidence only) ---------------------------------------------------

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"parity", "db-average", "affine-monotonicity"};
    return names;
}

inline std::string fraction_text(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline VerificationReport experiment(const std::string& name, const Caps& caps) {
    using namespace suite_detail;
    CheckList list;
    if (name == "parity" || name == "db-average") {
        const std::size_t n = caps.n ? caps.n : 5;
        const std::size_t cap = caps.slow ? 6 : 5;
        const std::string id = "experiment." + name;
        for (std::size_t m = 1; m <= n; ++m) {
            const auto p = param("n", m);
            if (m > cap) {
                list.skip(id, anchor(id), p, cap_note(cap, caps.slow));
                continue;
            }
            list.add_group(id, p, [m, p, cap, id, parity = name == "parity"] {
                auto rows = preimage_census(m, cap);
                if (parity) {
                    std::uint64_t odd = 0;
                    for (auto& r : rows) odd += r.preimages % 2;
                    std::optional<Value> expected;
                    if (m % 2 == 1) expected = Value::of(0);
                    return std::vector<Finding>{
                        finding(id, p, expected, Value::of(odd), "elements with an odd preimage count")};
                }
                auto s = summarize(rows);
                Rational avg(Count(s.total_iterations), Count(s.elements));
                std::ostringstream approx;
                approx << std::fixed << std::setprecision(6) << avg.convert_to<double>();
                return std::vector<Finding>{finding(id, p, std::nullopt, Value::of(fraction_text(avg)), "~" + approx.str())};
            });
        }
    } else if (name == "affine-monotonicity") {
        const std::size_t n = caps.n ? caps.n : 4;
        const std::string id = "experiment.affine-monotonicity";
        for (std::size_t m = 2; m <= n; ++m) {
            const auto p = param("n", m) + " samples=" + std::to_string(caps.samples) + " seed=" + std::to_string(caps.seed);
            list.add_group(id, p, [m, p, id, caps] {
                std::mt19937_64 rng(caps.seed * 1000003 + m);
                std::uint64_t violations = 0;
                Count largest = 0;
                for (std::size_t t = 0; t < caps.samples; ++t) {
                    auto x = random_affine(m, rng, 2);
                    auto before = affine_fertility(x), after = affine_fertility(affine_stack(x));
                    violations += before > after;
                    largest = std::max(largest, after);
                }
                return std::vector<Finding>{
                    finding(id, p, Value::of(0), Value::of(violations), "largest image fertility " + largest.str())};
            });
        }
    } else {
        throw std::invalid_argument("unknown experiment '" + name + "'");
    }
    return list.run("experiment " + name);
}

}  // namespace coxsort
