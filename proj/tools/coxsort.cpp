#include <CLI11.hpp>
#include <iostream>

#include "coxsort/suites.hpp"

using namespace coxsort;
using nlohmann::ordered_json;

namespace {

struct Options {
    std::size_t n = 0, k = 0;
    int t = 2, power = 1;
    std::string decoration;
    std::string out = "table";
    std::string emit;
    bool slow = false, timing = false, brute = false;
    std::uint64_t seed = 1;
    std::size_t samples = 200;
};

// 4723165 is read digit by digit; anything with a comma is a list of integers.
Permutation read_word(const std::string& text) {
    bool digits = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (digits && text.find(',') == std::string::npos) {
        std::vector<std::int64_t> v;
        for (char c : text) v.push_back(c - '0');
        return Permutation(std::move(v));
    }
    return parse_permutation(text);
}

StdPermutation read_std(const std::string& text) {
    auto w = read_word(text);
    auto s = standardize(w);
    if (s.general() != w) throw std::invalid_argument("expected a permutation of 1..n");
    return s;
}

std::string show(const Permutation& w) {
    bool small = w.size() <= 9 && std::all_of(w.values().begin(), w.values().end(), [](auto x) { return x >= 1 && x <= 9; });
    if (!small) return format_one_line(w);
    std::string s;
    for (auto x : w.values()) s += static_cast<char>('0' + x);
    return s;
}
std::string show(const StdPermutation& w) { return show(w.general()); }

ordered_json count_json(const Count& c) { return value_json(Value::of(c)); }

// Prints `rows` (first row is the header) as a table or csv, or `json` as JSON.
void emit(const Options& o, const ordered_json& json, const std::vector<std::vector<std::string>>& rows) {
    if (o.out == "json") {
        std::cout << json.dump(2) << "\n";
        return;
    }
    if (o.out == "csv") {
        for (auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_field(r[i]);
            std::cout << "\n";
        }
        return;
    }
    if (o.out != "table") throw std::invalid_argument("unknown output format '" + o.out + "'");
    std::vector<std::size_t> width;
    for (auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    for (auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::cout << r[i];
            if (i + 1 < r.size()) std::cout << std::string(width[i] + 2 - r[i].size(), ' ');
        }
        std::cout << "\n";
    }
}

Caps caps_of(const Options& o) { return Caps{o.n, o.slow, o.seed, o.samples}; }

// ---- type A ------------------------------------------------------------------

int cmd_sort(const Options& o, const std::string& input) {
    std::string image;
    if (o.decoration.empty()) {
        auto w = read_word(input);
        image = show(stack_sort_power(w, o.power));
    } else {
        auto w = read_std(input);
        auto d = Decoration::parse(o.decoration);
        for (int i = 0; i < o.power; ++i) w = permutree_sort(d, w);
        image = show(w);
    }
    ordered_json j{{"input", input}, {"decoration", o.decoration.empty() ? "d*" : o.decoration},
                   {"power", o.power}, {"image", image}};
    emit(o, j, {{"input", "image"}, {input, image}});
    return 0;
}

int cmd_orbit(const Options& o, const std::string& input) {
    auto w = read_std(input);
    std::vector<StdPermutation> orbit;
    if (o.decoration.empty()) {
        orbit = forward_orbit(w, [](const StdPermutation& x) { return stack_sort(x); });
    } else {
        auto d = Decoration::parse(o.decoration);
        orbit = forward_orbit(w, [&](const StdPermutation& x) { return permutree_sort(d, x); });
    }
    ordered_json j{{"input", input}, {"size", orbit.size()}, {"orbit", ordered_json::array()}};
    std::vector<std::vector<std::string>> rows{{"step", "element", "descents"}};
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        j["orbit"].push_back(show(orbit[i]));
        rows.push_back({std::to_string(i), show(orbit[i]), std::to_string(descents(orbit[i]).size())});
    }
    emit(o, j, rows);
    return 0;
}

int cmd_fertility(const Options& o, const std::string& input) {
    auto v = standardize(read_word(input));
    Count f = fertility(v);
    ordered_json j{{"input", input}, {"fertility", count_json(f)}, {"hook_configurations", enumerate_vhcs(v).size()}};
    std::vector<std::vector<std::string>> rows{{"input", "fertility", "hook_configurations"},
                                               {input, f.str(), std::to_string(enumerate_vhcs(v).size())}};
    if (o.brute) {
        auto b = brute_fertility(v);
        j["brute_force"] = b;
        rows[0].push_back("brute_force");
        rows[1].push_back(std::to_string(b));
    }
    emit(o, j, rows);
    return 0;
}

int cmd_preimages(const Options& o, const std::string& input) {
    auto pre = stack_preimages(read_word(input));
    std::sort(pre.begin(), pre.end());
    ordered_json j{{"input", input}, {"count", pre.size()}, {"preimages", ordered_json::array()}};
    std::vector<std::vector<std::string>> rows{{"preimage"}};
    for (auto& p : pre) {
        j["preimages"].push_back(show(p));
        rows.push_back({show(p)});
    }
    emit(o, j, rows);
    return 0;
}

int cmd_vhc(const Options& o, const std::string& input) {
    auto v = standardize(read_word(input));
    auto all = enumerate_vhcs(v);
    ordered_json j{{"input", input}, {"count", all.size()}, {"configurations", ordered_json::array()}};
    std::vector<std::vector<std::string>> rows{{"hooks", "colouring", "catalan_product"}};
    for (auto& h : all) {
        auto q = q_composition(v, h);
        ordered_json hooks = ordered_json::array();
        std::string hook_text, q_text;
        for (auto& x : h.hooks) {
            hooks.push_back({{"sw", x.sw_position}, {"ne", x.ne_position}});
            hook_text += (hook_text.empty() ? "" : " ") + std::to_string(x.sw_position) + "->" + std::to_string(x.ne_position);
        }
        for (auto x : q) q_text += (q_text.empty() ? "" : ",") + std::to_string(x);
        j["configurations"].push_back({{"hooks", hooks}, {"q", q}, {"catalan_product", count_json(catalan_product(q))}});
        rows.push_back({hook_text.empty() ? "-" : hook_text, q_text, catalan_product(q).str()});
    }
    Options shown = o;
    if (!o.emit.empty()) shown.out = o.emit;
    emit(shown, j, rows);
    return 0;
}

int cmd_enumerate(const Options& o, const std::string& family) {
    const std::size_t n = o.n ? o.n : 4;
    std::vector<std::string> items;
    if (family == "t-stack-sortable" || family == "uniquely-sorted" || family == "231-avoiding") {
        if (n > 10) throw std::invalid_argument("enumeration over S_n is capped at n=10");
        for (auto& w : all_permutations(n)) {
            bool keep = family == "t-stack-sortable" ? is_t_stack_sortable(w, o.t)
                        : family == "uniquely-sorted" ? fertility(w) == 1
                                                      : avoids_231(w);
            if (keep) items.push_back(show(w));
        }
    } else if (family == "fences") {
        for (auto& f : all_fences(n)) items.push_back(f.str());
    } else if (family == "ideals") {
        for (auto& ideal : all_fence_ideals(n)) items.push_back(describe_ideal(ideal));
    } else if (family == "affine-231-avoiding") {
        for (auto& a : enumerate_231_avoiders(n, o.slow ? 6 : avoider_cap_default).avoiders) items.push_back(format_window(a));
    } else {
        throw std::invalid_argument("unknown family '" + family +
                                    "' (t-stack-sortable, uniquely-sorted, 231-avoiding, fences, ideals, affine-231-avoiding)");
    }
    ordered_json j{{"family", family}, {"n", n}, {"count", items.size()}, {"items", items}};
    if (family == "t-stack-sortable") j["t"] = o.t;
    std::vector<std::vector<std::string>> rows{{family}};
    for (auto& s : items) rows.push_back({s});
    emit(o, j, rows);
    return 0;
}

int print_reports(const Options& o, const std::vector<VerificationReport>& reports) {
    std::cout << format_reports(reports, o.out, o.timing);
    return 0;
}

int cmd_verify(const Options& o, const std::string& suite) {
    std::vector<VerificationReport> reports;
    if (suite == "all") {
        for (auto& s : suite_names()) reports.push_back(run_suite(s, caps_of(o)));
    } else {
        reports.push_back(run_suite(suite, caps_of(o)));
    }
    print_reports(o, reports);
    for (auto& r : reports)
        if (!r.passed()) return 1;
    return 0;
}

int cmd_experiment(const Options& o, const std::string& name) {
    return print_reports(o, {experiment(name, caps_of(o))});
}

// ---- type B ------------------------------------------------------------------

std::string show_signed(const SignedPermutation& w) { return format_signed_window(w); }

int cmd_sort_b(const Options& o, const std::string& input) {
    auto w = parse_signed(input);
    for (int i = 0; i < o.power; ++i) w = stack_b(w);
    ordered_json j{{"input", input}, {"power", o.power}, {"image", show_signed(w)}, {"word", show(w.word())}};
    emit(o, j, {{"input", "image", "word"}, {input, show_signed(w), show(w.word())}});
    return 0;
}

int cmd_orbit_b(const Options& o, const std::string& input) {
    auto orbit = orbit_b(parse_signed(input));
    ordered_json j{{"input", input}, {"size", orbit.size()}, {"orbit", ordered_json::array()}};
    std::vector<std::vector<std::string>> rows{{"step", "element", "word", "descents"}};
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        j["orbit"].push_back(show_signed(orbit[i]));
        rows.push_back({std::to_string(i), show_signed(orbit[i]), show(orbit[i].word()),
                        std::to_string(descents_b(orbit[i]).size())});
    }
    emit(o, j, rows);
    return 0;
}

int cmd_census_b(const Options& o) {
    const std::size_t n = o.n ? o.n : 3;
    const std::size_t cap = o.slow ? census_cap_default : 5;
    if (n > cap) throw std::invalid_argument("census-b is capped at n=" + std::to_string(cap) + (o.slow ? "" : " without --slow"));
    auto rows = preimage_census(n, cap);
    ordered_json j = ordered_json::array();
    std::vector<std::vector<std::string>> table{{"element", "descents", "orbit_size", "preimages"}};
    for (auto& r : rows) {
        j.push_back({{"element", show_signed(r.element)},
                     {"descents", r.descents},
                     {"orbit_size", r.orbit_size},
                     {"preimages", r.preimages}});
        table.push_back({show_signed(r.element), std::to_string(r.descents), std::to_string(r.orbit_size),
                         std::to_string(r.preimages)});
    }
    emit(o, j, table);
    return 0;
}

// ---- affine ------------------------------------------------------------------

int cmd_affine_sort(const Options& o, const std::string& input) {
    auto w = parse_affine(input);
    auto image = format_window(affine_stack_power(w, o.power));
    ordered_json j{{"input", format_window(w)}, {"power", o.power}, {"image", image}};
    emit(o, j, {{"input", "image"}, {format_window(w), image}});
    return 0;
}

int cmd_affine_fertility(const Options& o, const std::string& input) {
    auto v = parse_affine(input);
    Count f = affine_fertility(v);
    ordered_json j{{"input", format_window(v)}, {"fertility", count_json(f)}};
    emit(o, j, {{"input", "fertility"}, {format_window(v), f.str()}});
    return 0;
}

int cmd_affine_preimages(const Options& o, const std::string& input) {
    auto v = parse_affine(input);
    auto pre = affine_preimages(v);
    std::sort(pre.begin(), pre.end());
    ordered_json j{{"input", format_window(v)}, {"count", pre.size()}, {"preimages", ordered_json::array()}};
    std::vector<std::vector<std::string>> rows{{"preimage"}};
    for (auto& p : pre) {
        j["preimages"].push_back(format_window(p));
        rows.push_back({format_window(p)});
    }
    emit(o, j, rows);
    return 0;
}

int cmd_affine_count_2ss(const Options& o) {
    const std::size_t n = o.n ? o.n : 4;
    const std::size_t cap = o.slow ? count_2ss_cap_default : 4;
    ordered_json j = ordered_json::array();
    std::vector<std::vector<std::string>> rows{{"n", "by_fertility", "by_compositions", "by_series"}};
    for (std::size_t m = 1; m <= n; ++m) {
        std::string fert = "-";
        Count comp = count_2ss_by_compositions(m), series = count_2ss_by_series(m);
        ordered_json row{{"n", m}};
        if (m <= cap) {
            Count f = count_2ss_by_fertility(m, cap);
            fert = f.str();
            row["by_fertility"] = count_json(f);
        } else {
            row["by_fertility"] = nullptr;
        }
        row["by_compositions"] = count_json(comp);
        row["by_series"] = count_json(series);
        j.push_back(row);
        rows.push_back({std::to_string(m), fert, comp.str(), series.str()});
    }
    emit(o, j, rows);
    return 0;
}

int cmd_affine_classes(const Options& o) {
    const std::size_t k = o.k ? o.k : 2;
    const std::size_t cap = o.slow ? class_count_cap_default : 2;
    ordered_json j = ordered_json::array();
    std::vector<std::vector<std::string>> rows{{"k", "classes", "formula"}};
    for (std::size_t i = 1; i <= k; ++i) {
        Count formula = uniquely_sorted_class_formula(static_cast<long>(i));
        std::string count = "-";
        ordered_json row{{"k", i}};
        if (i <= cap) {
            Count c = uniquely_sorted_class_count(i, cap);
            count = c.str();
            row["classes"] = count_json(c);
        } else {
            row["classes"] = nullptr;
        }
        row["formula"] = count_json(formula);
        j.push_back(row);
        rows.push_back({std::to_string(i), count, formula.str()});
    }
    emit(o, j, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coxeter stack-sorting toolkit"};
    app.require_subcommand(1);
    Options o;
    int status = 0;
    std::string arg;

    app.add_option("--n", o.n, "rank or size");
    app.add_option("--k", o.k, "half-rank for uniquely sorted classes");
    app.add_option("--t", o.t, "number of passes for t-stack-sortable");
    app.add_option("--power", o.power, "apply the operator this many times")->check(CLI::NonNegativeNumber);
    app.add_option("--decoration", o.decoration, "decoration word over n,u,d,b");
    app.add_option("--out", o.out, "output format")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_flag("--slow", o.slow, "unlock larger caps");
    app.add_option("--seed", o.seed, "seed for sampled checks");
    app.add_option("--samples", o.samples, "sample count for sampled checks");
    app.add_flag("--timing", o.timing, "include per-check runtime in reports");
    app.add_flag("--brute", o.brute, "also count preimages by brute force");
    app.fallthrough();

    auto with_arg = [&](CLI::App* parent, const char* name, const char* help, const char* what,
                        std::function<int(const Options&, const std::string&)> run) {
        auto* sub = parent->add_subcommand(name, help);
        sub->add_option(what, arg, what)->required();
        sub->fallthrough();
        if (std::string(name) == "vhc")
            sub->add_option("--emit", o.emit, "output format for this command")->check(CLI::IsMember({"table", "json", "csv"}));
        sub->callback([&, run] { status = run(o, arg); });
        return sub;
    };
    auto plain = [&](CLI::App* parent, const char* name, const char* help, std::function<int(const Options&)> run) {
        auto* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        sub->callback([&, run] { status = run(o); });
        return sub;
    };

    with_arg(&app, "sort", "stack-sort (or permutree-sort with --decoration)", "permutation", cmd_sort);
    with_arg(&app, "orbit", "forward orbit down to the identity", "permutation", cmd_orbit);
    with_arg(&app, "fertility", "number of stack-sorting preimages", "permutation", cmd_fertility);
    with_arg(&app, "preimages", "list stack-sorting preimages", "permutation", cmd_preimages);
    with_arg(&app, "vhc", "valid hook configurations and colourings", "permutation", cmd_vhc);
    with_arg(&app, "enumerate", "list a family at size --n", "family", cmd_enumerate);
    with_arg(&app, "verify", "run a verification suite (type-a, type-b, affine, descent-bounds, properties, all)",
             "suite", cmd_verify);
    with_arg(&app, "experiment", "run an evidence-only experiment (parity, db-average, affine-monotonicity)", "name",
             cmd_experiment);
    with_arg(&app, "sort-b", "type B stack-sorting of a signed permutation", "element", cmd_sort_b);
    with_arg(&app, "orbit-b", "type B forward orbit", "element", cmd_orbit_b);
    plain(&app, "census-b", "preimage census of B_n", cmd_census_b);

    auto* affine = app.add_subcommand("affine", "affine symmetric group commands");
    affine->require_subcommand(1);
    affine->fallthrough();
    with_arg(affine, "sort", "affine stack-sorting of a window", "window", cmd_affine_sort);
    with_arg(affine, "fertility", "affine fertility of a window", "window", cmd_affine_fertility);
    with_arg(affine, "preimages", "affine stack-sorting preimages", "window", cmd_affine_preimages);
    plain(affine, "count-2ss", "2-stack-sortable counts by three methods", cmd_affine_count_2ss);
    plain(affine, "uniquely-sorted-classes", "uniquely sorted sylvester class counts", cmd_affine_classes);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return status;
}
