// One PASS/FAIL line per acceptance criterion. Every comparison is exact (integer or
// permutation equality); the only tolerance is the wall-clock budget of each criterion.

#include <chrono>
#include <functional>
#include <iostream>

#include "coxsort/suites.hpp"

using namespace coxsort;

namespace {

constexpr double exact_tolerance = 0.0;

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

// Observed value of a report record, or "<missing>".
std::string observed(const VerificationReport& r, const std::string& id, const std::string& params) {
    auto* c = r.find(id, params);
    if (!c) return "<missing>";
    if (c->status != Status::pass) return "<" + std::string(status_name(c->status)) + ">";
    return c->observed.str();
}

int run(int number, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(seconds <= budget_seconds, "over the " + std::to_string(budget_seconds) + " s budget");
    std::cout << (out.ok ? "PASS " : "FAIL ") << number << " " << title << " (" << std::fixed
              << std::setprecision(2) << seconds << " s of " << budget_seconds << " s, tolerance "
              << exact_tolerance << ")";
    if (!out.detail.empty()) std::cout << ": " << out.detail;
    std::cout << "\n";
    return out.ok ? 0 : 1;
}

}  // namespace

int main() {
    int failures = 0;

    failures += run(1, "stack_sort(4723165) = 4213567", 1, [] {
        Outcome o;
        auto image = stack_sort(from_digits("4723165"));
        o.require(image == from_digits("4213567"), "got " + compact(image));
        return o;
    });

    failures += run(2, "identity preimages are Catalan for n = 1..8", 30, [] {
        Outcome o;
        for (std::size_t n = 1; n <= 8; ++n) {
            std::uint64_t count = 0;
            for (auto& w : all_permutations(n)) count += stack_sort(w).is_identity();
            std::uint64_t catalan = choose(2 * n, n) / (n + 1);
            o.require(count == catalan, "n=" + std::to_string(n) + " got " + std::to_string(count));
        }
        o.require(choose(16, 8) / 9 == 1430, "C_8 != 1430");
        return o;
    });

    failures += run(3, "2-stack-sortable counts for n = 1..7", 60, [] {
        Outcome o;
        for (std::size_t n = 1; n <= 7; ++n) {
            std::uint64_t count = 0;
            for (auto& w : all_permutations(n)) count += stack_sort(stack_sort(w)).is_identity();
            std::uint64_t formula = 2 * choose(3 * n, n) / ((n + 1) * (2 * n + 1));
            o.require(count == formula, "n=" + std::to_string(n) + " got " + std::to_string(count));
        }
        return o;
    });

    failures += run(4, "pop-stack: 24135 -> 21435, preimage counts 3 and 2 in S_5", 1, [] {
        Outcome o;
        auto d = Decoration::uniform(5, Symbol::updown);
        auto a = from_digits("24135"), b = from_digits("21435");
        o.require(permutree_sort(d, a) == b, "image of 24135 is " + compact(permutree_sort(d, a)));
        std::uint64_t to_a = 0, to_b = 0;
        for (auto& w : all_permutations(5)) {
            auto s = permutree_sort(d, w);
            to_a += s == a;
            to_b += s == b;
        }
        o.require(to_a == 3, "preimages of 24135: " + std::to_string(to_a));
        o.require(to_b == 2, "preimages of 21435: " + std::to_string(to_b));
        return o;
    });

    failures += run(5, "lattice descent bound: Fen_4 ideals give 2; pop_stack(zeta_n) tight for n = 3..9", 120, [] {
        Outcome o;
        auto rep = verify_descent_bounds(4);
        o.require(rep.achieved == 2 && 2 * (4 - 1) / 3 == 2, "max over Fen_4 ideals is " + std::to_string(rep.achieved));
        o.require(rep.ideals == all_fence_ideals(4).size(), "ideal count mismatch");
        for (std::size_t n = 3; n <= 9; ++n) {
            auto d = descents(pop_stack(zeta(n))).size();
            o.require(d == 2 * (n - 1) / 3, "zeta_" + std::to_string(n) + " gives " + std::to_string(d));
        }
        o.require(pop_stack(zeta(9)) == from_digits("215438769"), "pop_stack(zeta_9) = " + compact(pop_stack(zeta(9))));
        return o;
    });

    failures += run(6, "semilattice bound: interval [1526374, 4736251] in S_7 yields 5 descents", 120, [] {
        Outcome o;
        auto u = from_digits("1526374"), v = from_digits("4736251");
        o.require(leq_left_weak(u, v), "u is not below v");
        auto ic = congruence_from_interval(u, v);
        auto c = refine(ic.congruence, descent_congruence(7));
        o.require(is_essential(c), "not essential");
        o.require(is_meet_semilattice_congruence(c), "not a meet-semilattice congruence");
        std::size_t interval = 0, in_class = c.members(c.class_of(u)).size();
        for (auto& z : all_permutations(7)) interval += leq_left_weak(u, z) && leq_left_weak(z, v);
        o.require(interval == in_class, "[u,v] is not the class of u");
        auto image = sort_op(c, v);
        o.require(descents(image).size() == 5, "image " + compact(image) + " has " +
                                                   std::to_string(descents(image).size()) + " descents");
        return o;
    });

    failures += run(7, "type B: figure example, orbit n+1, descents floor(n/2), 1,2,6,32,200", 180, [] {
        Outcome o;
        Caps caps;
        caps.n = 5;
        auto r = run_suite("type-b", caps);
        o.require(r.passed(), "type-b suite has failures");
        o.require(observed(r, "stack-b.figure-example", "w=31527486") == "13254768", "figure example");
        const std::vector<std::string> sequence = {"1", "2", "6", "32", "200"};
        for (std::size_t n = 1; n <= 5; ++n) {
            auto p = "n=" + std::to_string(n);
            o.require(observed(r, "stack-b.max-orbit", p) == std::to_string(n + 1), "max orbit " + p);
            o.require(observed(r, "stack-b.max-image-descents", p) == std::to_string(n / 2), "max descents " + p);
            o.require(observed(r, "stack-b.slow-to-sort", p) == sequence[n - 1], "sequence " + p);
        }
        return o;
    });

    failures += run(8, "affine: figure example, avoiders 3,10,35,126, classes 2,10, ADL = AFF, count_2ss agree", 300, [] {
        Outcome o;
        Caps caps;
        caps.n = 5;
        auto r = run_suite("affine", caps);
        o.require(r.passed(), "affine suite has failures");
        o.require(observed(r, "affine.stack-figure", "w=[3,-1,2,-2,7,12]") == "[-2,2,3,6,7,5]", "figure example");
        const std::vector<std::string> avoiders = {"3", "10", "35", "126"};
        for (std::size_t n = 2; n <= 5; ++n)
            o.require(observed(r, "affine.avoider-count", "n=" + std::to_string(n)) == avoiders[n - 2],
                      "avoiders n=" + std::to_string(n));
        o.require(observed(r, "affine.class-count", "k=1") == "2", "classes k=1");
        o.require(observed(r, "affine.class-count", "k=2") == "10", "classes k=2");
        for (std::size_t n = 1; n <= 4; ++n) {
            auto p = "n=" + std::to_string(n);
            o.require(observed(r, "affine.fertility-formulas", p) == "0", "ADL vs AFF " + p);
            auto series = std::to_string(count_2ss_by_series(n).convert_to<std::uint64_t>());
            o.require(observed(r, "two-stack.fertility-sum", p) == series, "fertility sum " + p);
            o.require(observed(r, "two-stack.composition-sum", p) == series, "composition sum " + p);
        }
        return o;
    });

    failures += run(9, "property suites: meets, fertility, projections, compulsive, monotone, symmetry, iota", 300, [] {
        Outcome o;
        auto r = run_suite("properties", Caps{});
        o.require(r.passed(), "properties suite has failures");
        const std::vector<std::pair<std::string, std::size_t>> families = {
            {"property.meet-oracle", 5},        {"property.fertility-formula", 7},
            {"property.pi-down-idempotent", 4}, {"property.pi-down-class-minimum", 4},
            {"property.compulsive", 5},         {"property.central-symmetry", 5},
            {"property.iota-compatibility", 6}};
        for (auto& [id, top] : families)
            for (std::size_t n = 1; n <= top; ++n)
                o.require(observed(r, id, "n=" + std::to_string(n)) == "0", id + " n=" + std::to_string(n));
        std::size_t monotone = 0;
        for (auto& c : r.checks) monotone += c.id == "property.preimage-monotonicity" && c.status == Status::pass;
        o.require(monotone == 4, "preimage monotonicity n=2..5");
        return o;
    });

    return failures == 0 ? 0 : 1;
}
