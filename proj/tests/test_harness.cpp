#include <gtest/gtest.h>

#include <cstdlib>

#include "coxsort/suites.hpp"

using namespace coxsort;

namespace {

std::vector<VerificationReport> all_default_suites() {
    std::vector<VerificationReport> out;
    for (auto& s : suite_names()) out.push_back(run_suite(s, Caps{}));
    return out;
}

bool has_passing(const std::vector<VerificationReport>& reports, const std::string& id) {
    for (auto& r : reports)
        for (auto& c : r.checks)
            if (c.id == id && c.status == Status::pass) return true;
    return false;
}

}  // namespace

TEST(Value, JsonKeepsLargeIntegersExact) {
    Count big = Count(1) << 53;
    EXPECT_TRUE(value_json(Value::of(big)).is_number_integer());
    EXPECT_TRUE(value_json(Value::of(Count(big + 1))).is_string());
    EXPECT_EQ(value_json(Value::of(Count(big + 1))).get<std::string>(), "9007199254740993");
    EXPECT_TRUE(value_json(Value::of(Count(-big - 1))).is_string());
    EXPECT_EQ(value_json(Value::of("{2,4}")).get<std::string>(), "{2,4}");
    EXPECT_EQ(binomial(100, 50).str(), "100891344545564193334812497256");
}

TEST(Value, IntegerAndTextNeverCompareEqual) {
    EXPECT_EQ(Value::of(3), Value::of(std::uint64_t{3}));
    EXPECT_FALSE(Value::of(3) == Value::of("3"));
    EXPECT_EQ(Value::of(true), Value::of("true"));
}

TEST(CheckList, StatusesAndOrdering) {
    CheckList list;
    list.add("b.second", "", "x=1", [] { return std::pair{Value::of(1), Value::of(1)}; });
    list.add("a.first", "", "x=1", [] { return std::pair{Value::of(1), Value::of(2)}; });
    list.add("c.third", "", "x=1", []() -> std::pair<Value, Value> { throw std::runtime_error("boom"); });
    list.skip("a.first", "", "x=2", "cap");
    auto rep = list.run("demo");
    ASSERT_EQ(rep.checks.size(), 4u);
    EXPECT_EQ(rep.checks[0].id, "a.first");
    EXPECT_EQ(rep.checks[0].status, Status::fail);
    EXPECT_EQ(rep.checks[1].status, Status::skipped);
    EXPECT_EQ(rep.checks[2].status, Status::pass);
    EXPECT_EQ(rep.checks[3].status, Status::fail);
    EXPECT_EQ(rep.checks[3].note, "boom");
    EXPECT_FALSE(rep.passed());
    EXPECT_EQ(rep.count(Status::fail), 2u);
}

TEST(Report, UnknownNamesThrow) {
    EXPECT_THROW(run_suite("nope", Caps{}), std::invalid_argument);
    EXPECT_THROW(experiment("nope", Caps{}), std::invalid_argument);
    EXPECT_THROW(format_reports({}, "xml", false), std::invalid_argument);
}

TEST(Report, DefaultSuitesPass) {
    for (auto& r : all_default_suites()) {
        EXPECT_TRUE(r.passed()) << format_reports({r}, "table", false);
        EXPECT_GT(r.count(Status::pass), 0u) << r.suite;
    }
}

TEST(Report, ByteIdenticalAcrossRunsAndWorkerCounts) {
    Caps caps;
    caps.n = 4;
    setenv("COXSORT_THREADS", "1", 1);
    auto one = format_reports({run_suite("affine", caps), run_suite("type-b", caps)}, "json", false);
    setenv("COXSORT_THREADS", "4", 1);
    auto four = format_reports({run_suite("affine", caps), run_suite("type-b", caps)}, "json", false);
    unsetenv("COXSORT_THREADS");
    EXPECT_EQ(one, four);
    EXPECT_EQ(one.find("runtime_ms"), std::string::npos);
    auto timed = format_reports({run_suite("descent-bounds", caps)}, "json", true);
    EXPECT_NE(timed.find("runtime_ms"), std::string::npos);
}

TEST(Report, RecordsAreSortedById) {
    for (auto& r : all_default_suites())
        for (std::size_t i = 1; i < r.checks.size(); ++i) EXPECT_LE(r.checks[i - 1].id, r.checks[i].id);
}

TEST(Report, TypeBCapsAndSlowMode) {
    Caps caps;
    caps.n = 6;
    auto capped = run_suite("type-b", caps);
    auto* rec = capped.find("stack-b.slow-to-sort", "n=6");
    ASSERT_NE(rec, nullptr);
    EXPECT_EQ(rec->status, Status::skipped);
    caps.slow = true;
    auto slow = run_suite("type-b", caps);
    rec = slow.find("stack-b.slow-to-sort", "n=6");
    ASSERT_NE(rec, nullptr);
    EXPECT_EQ(rec->status, Status::pass);
    EXPECT_EQ(rec->observed, Value::of(1566));
}

TEST(Report, TypeBAtRankFour) {
    Caps caps;
    caps.n = 4;
    auto r = run_suite("type-b", caps);
    EXPECT_EQ(r.find("stack-b.max-orbit", "n=4")->observed, Value::of(5));
    EXPECT_EQ(r.find("stack-b.max-image-descents", "n=4")->observed, Value::of(2));
    EXPECT_EQ(r.find("stack-b.slow-to-sort", "n=4")->observed, Value::of(32));
}

TEST(Report, AffineAtRankFour) {
    Caps caps;
    caps.n = 4;
    auto r = run_suite("affine", caps);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.find("affine.avoider-count", "n=4")->observed, Value::of(35));
    EXPECT_EQ(r.find("affine.class-count", "k=2")->observed, Value::of(10));
    EXPECT_EQ(r.find("two-stack.series-identity", "order=4")->observed, Value::of("1,5,25,133"));
    caps.n = 5;
    auto five = run_suite("affine", caps);
    EXPECT_EQ(five.find("two-stack.fertility-sum", "n=5")->status, Status::skipped);
    EXPECT_EQ(five.find("affine.avoider-count", "n=5")->observed, Value::of(126));
}

TEST(Report, EveryWorkedExampleHasACheck) {
    auto reports = all_default_suites();
    for (const char* id :
         {"stack-sort.worked-example", "permutation.standardization", "weak-order.interval-pair",
          "permutree.figure-tree", "permutree.figure-postorder", "permutree.figure-projection", "permutree.none-chain",
          "permutree.none-constant", "permutree.none-equality", "permutree.down-stack-sort",
          "permutree.updown-descent-classes", "pop-stack.image", "pop-stack.preimages", "congruence.fen3-forcing-order",
          "congruence.sylvester-up-op", "semilattice.interval-class", "semilattice.refined-class", "semilattice.image",
          "zeta.example", "zeta.pop-stack", "stack-b.figure-example", "stack-b.witness", "stack-b.witness-orbit",
          "stack-b.max-orbit", "stack-b.figure-descents", "stack-b.max-image-descents", "stack-b.single-preimage",
          "stack-b.slow-to-sort", "fertility.decreasing-no-vhc", "fertility.identity-catalan",
          "fertility.uniquely-sorted-shape", "fertility.figure-unique", "affine.window-validity", "affine.figure-tree",
          "affine.stack-figure", "affine.two-stack-example", "skyline.figure-segments", "skyline.figure-contribution",
          "affine.figure-preimage", "affine.class-count", "affine.subtree-isomorphism", "affine.shift-decomposition"})
        EXPECT_TRUE(has_passing(reports, id)) << id;
    // the only example that cannot be run is reported as skipped
    auto a = run_suite("type-a", Caps{});
    auto* fig = a.find("fertility.vhc-figure", "n=16");
    ASSERT_NE(fig, nullptr);
    EXPECT_EQ(fig->status, Status::skipped);
}

TEST(Experiments, EvidenceOnly) {
    Caps caps;
    caps.n = 5;
    auto parity = experiment("parity", caps);
    EXPECT_EQ(parity.find("experiment.parity", "n=3")->observed, Value::of(0));
    EXPECT_FALSE(parity.find("experiment.parity", "n=2")->expected.has_value());
    auto avg = experiment("db-average", caps);
    // n = 1: e takes 0 passes, the other element 1
    EXPECT_EQ(avg.find("experiment.db-average", "n=1")->observed, Value::of("1/2"));
    for (auto& c : avg.checks) EXPECT_FALSE(c.expected.has_value());
    caps.n = 3;
    caps.samples = 40;
    auto mono = experiment("affine-monotonicity", caps);
    EXPECT_EQ(mono.checks.size(), 2u);
    EXPECT_EQ(format_reports({mono}, "csv", false), format_reports({experiment("affine-monotonicity", caps)}, "csv", false));
}

TEST(Output, CsvQuotingAndTable) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
    Caps caps;
    caps.n = 2;
    auto r = run_suite("descent-bounds", caps);
    auto table = format_reports({r}, "table", false);
    EXPECT_NE(table.find("suite descent-bounds"), std::string::npos);
    EXPECT_NE(table.find(" 0 fail"), std::string::npos);
    auto csv = format_reports({r}, "csv", false);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "suite,id,anchor,parameters,expected,observed,status,note");
    auto json = nlohmann::json::parse(format_reports({r}, "json", false));
    EXPECT_EQ(json[0]["suite"], "descent-bounds");
    EXPECT_EQ(json[0]["summary"]["fail"], 0);
}
