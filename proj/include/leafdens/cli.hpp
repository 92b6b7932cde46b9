#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "closed_forms.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "report.hpp"
#include "simplex.hpp"
#include "tree.hpp"

// Command-line front end. `parse_args` fills a RunConfig; `run` validates it
// and writes one table to the configured output.
namespace leafdens::cli {

enum ExitCode : int { kOk = 0, kPrecondition = 2, kBudget = 3, kIo = 4 };

inline constexpr const char* kCacheDirEnv = "LEAFDENS_CACHE_DIR";

// A tree given either as a code string or through one of the builders.
struct TreeSpec {
    std::optional<std::string> code;
    std::vector<unsigned> complete;     // d,h
    std::vector<unsigned> caterpillar;  // r,k
    std::optional<std::uint64_t> even;  // n

    bool given() const { return code || !complete.empty() || !caterpillar.empty() || even; }

    std::string describe() const {
        if (code) return *code;
        if (!complete.empty()) return "complete:" + std::to_string(complete[0]) + "," + std::to_string(complete[1]);
        if (!caterpillar.empty())
            return "caterpillar:" + std::to_string(caterpillar[0]) + "," + std::to_string(caterpillar[1]);
        if (even) return "even:" + std::to_string(*even);
        return "";
    }

    void validate(const std::string& what) const {
        int n = (code ? 1 : 0) + (!complete.empty()) + (!caterpillar.empty()) + (even ? 1 : 0);
        if (n != 1) throw DomainError("exactly one " + what + " source must be given");
        if (!complete.empty() && complete.size() != 2) throw DomainError(what + " complete builder takes d,h");
        if (!caterpillar.empty() && caterpillar.size() != 2)
            throw DomainError(what + " caterpillar builder takes r,k");
    }

    Tree build() const {
        if (code) return parse_tree(*code);
        if (!complete.empty()) return make_complete(complete[0], complete[1]);
        if (!caterpillar.empty()) return make_caterpillar(caterpillar[0], caterpillar[1]);
        return make_even_binary(*even);
    }
};

struct RunConfig {
    std::string subcommand;
    TreeSpec pattern;
    TreeSpec tree;
    unsigned d = 2;
    unsigned k = 3;
    std::optional<unsigned> k_max;
    unsigned r = 2;
    std::uint64_t n = 0;
    std::optional<std::uint64_t> n_min;
    std::optional<std::uint64_t> n_max;
    bool strict = false;
    bool brute = false;
    bool allow_large = false;
    bool general_d = false;
    std::string method = "exhaustive";
    std::string mode = "min";
    std::uint64_t budget = kDefaultTreeBudget;
    std::size_t frontier_cap = kDefaultFrontierCap;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000;
    unsigned t_max = 20;
    std::optional<std::string> cache_path;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::csv;
};

namespace detail {

inline std::vector<std::string> fraction_cells(const ExactRatio& v) {
    return {v.get_num().get_str(), v.get_den().get_str(), to_decimal(v)};
}

inline std::string point_cell(const std::vector<ExactRatio>& x) {
    std::vector<std::string> parts;
    for (const auto& v : x) parts.push_back(v.get_str());
    return join(parts, ";");
}

inline std::string real_cell(const Real& v, int digits = 20) { return v.str(digits, std::ios_base::scientific); }

inline std::optional<std::filesystem::path> frontier_cache(const RunConfig& cfg) {
    if (cfg.cache_path) return std::filesystem::path(*cfg.cache_path);
    if (const char* dir = std::getenv(kCacheDirEnv); dir && *dir) {
        std::filesystem::create_directories(dir);
        return std::filesystem::path(dir) /
               ("frontier_d" + std::to_string(cfg.d) + "_k" + std::to_string(cfg.k) + ".jsonl");
    }
    return std::nullopt;
}

inline void require(bool ok, const std::string& constraint) {
    if (!ok) throw DomainError("precondition violated: " + constraint);
}

}  // namespace detail

// Checks every parameter the chosen subcommand uses. Throws DomainError
// naming the first violated constraint.
inline void validate(const RunConfig& cfg) {
    using detail::require;
    const auto& s = cfg.subcommand;
    if (s == "count" || s == "density") {
        cfg.pattern.validate("pattern");
        cfg.tree.validate("tree");
    } else if (s == "enumerate") {
        require(cfg.n >= 1, "n >= 1");
        require(cfg.d >= 2, "d >= 2");
        require(!cfg.strict || (cfg.n - 1) % (cfg.d - 1) == 0, "strict trees need n = 1 (mod d-1)");
    } else if (s == "limits") {
        require(cfg.d >= 2, "d >= 2");
        require(cfg.k >= 2, "k >= 2");
        require(!cfg.k_max || *cfg.k_max >= cfg.k, "k-max >= k");
        require(cfg.r >= 2 && cfg.r <= cfg.d, "2 <= r <= d");
        require(cfg.r == 2 || cfg.k_max || ((cfg.k - 1) % (cfg.r - 1) == 0 && cfg.k >= cfg.r),
                "k >= r and k = 1 (mod r-1)");
    } else if (s == "search-min") {
        require(cfg.d >= 2, "d >= 2");
        require(cfg.k >= 2, "k >= 2");
        require(cfg.method == "exhaustive" || cfg.method == "pareto", "method is exhaustive or pareto");
        const std::uint64_t lo = cfg.n_min.value_or(cfg.n);
        const std::uint64_t hi = cfg.n_max.value_or(lo);
        require(lo >= cfg.k, "n >= k");
        require(hi >= lo, "n-max >= n");
        if (cfg.method == "pareto") {
            require(cfg.k >= 3, "pareto search needs k >= 3");
            require(cfg.d == 2 || cfg.general_d, "pareto search with d > 2 needs --general-d");
        }
    } else if (s == "conjecture") {
        require(cfg.d == 2, "conjecture concerns binary trees (d = 2)");
        require(cfg.k >= 3, "k >= 3");
        require(cfg.n_max && *cfg.n_max >= cfg.k, "n-max >= k");
    } else if (s == "monotone") {
        require(cfg.d >= 2, "d >= 2");
        require(cfg.k >= 2, "k >= 2");
        require(cfg.n_max && *cfg.n_max >= cfg.k, "n-max >= k");
    } else if (s == "simplex") {
        require(cfg.d >= 2, "d >= 2");
        require(cfg.k >= 3, "k >= 3");
        require(cfg.mode == "min" || cfg.mode == "sup" || cfg.mode == "bound-sample" || cfg.mode == "muirhead",
                "mode is one of min, sup, bound-sample, muirhead");
        require(cfg.mode != "muirhead" || cfg.d <= 8, "muirhead mode needs d <= 8");
        require(cfg.t_max >= 1, "t-max >= 1");
    } else if (s == "cache") {
        require(cfg.k >= 3, "k >= 3");
        require(cfg.d == 2 || cfg.general_d, "d > 2 needs --general-d");
        require(cfg.n_max && *cfg.n_max >= 1, "n-max >= 1");
        require(detail::frontier_cache(cfg).has_value(),
                std::string("a cache path (--cache or ") + kCacheDirEnv + ")");
    } else {
        throw DomainError("unknown subcommand '" + s + "'");
    }
}

// Runs a validated configuration and returns the table it produces.
inline Table execute(const RunConfig& cfg) {
    const auto& s = cfg.subcommand;
    Table t;
    if (s == "count" || s == "density") {
        const Tree pattern = cfg.pattern.build();
        const Tree tree = cfg.tree.build();
        if (tree.leaf_count() < pattern.leaf_count())
            throw DomainError("precondition violated: |tree| >= |pattern|");
        BigCount c = cfg.brute ? count_copies_brute(pattern, tree, cfg.allow_large) : count_copies(pattern, tree);
        ExactRatio dens(c, binomial(tree.leaf_count(), pattern.leaf_count()));
        dens.canonicalize();
        if (s == "count") {
            t.columns = {"pattern", "tree", "tree_leaves", "count", "density_num", "density_den", "density_decimal"};
            std::vector<std::string> row = {pattern.code(), cfg.tree.describe(), std::to_string(tree.leaf_count()),
                                            c.get_str()};
            for (auto& cell : detail::fraction_cells(dens)) row.push_back(cell);
            t.add(std::move(row));
        } else {
            t.columns = {"pattern", "tree", "tree_leaves", "density_num", "density_den", "density_decimal"};
            std::vector<std::string> row = {pattern.code(), cfg.tree.describe(), std::to_string(tree.leaf_count())};
            for (auto& cell : detail::fraction_cells(dens)) row.push_back(cell);
            t.add(std::move(row));
        }
    } else if (s == "enumerate") {
        BigCount total = count_trees(cfg.n, cfg.d, cfg.strict);
        if (total > BigCount(std::to_string(cfg.budget)))
            throw BudgetError("enumeration would produce " + total.get_str() + " trees (budget " +
                              std::to_string(cfg.budget) + ")");
        t.columns = {"index", "leaves", "code"};
        std::uint64_t i = 0;
        for (const auto& tree : enumerate_trees(cfg.n, cfg.d, cfg.strict))
            t.add({std::to_string(i++), std::to_string(tree.leaf_count()), tree.code()});
    } else if (s == "limits") {
        t.columns = {"d", "k", "r", "value", "decimal"};
        for (unsigned k = cfg.k; k <= cfg.k_max.value_or(cfg.k); ++k) {
            if (cfg.r > 2 && (k < cfg.r || (k - 1) % (cfg.r - 1) != 0)) continue;
            ExactRatio v = cfg.r == 2 ? liminf_density(cfg.d, k) : limit_density_complete(cfg.r, k, cfg.d);
            t.add({std::to_string(cfg.d), std::to_string(k), std::to_string(cfg.r), v.get_str(), to_decimal(v)});
        }
    } else if (s == "search-min") {
        const std::uint64_t lo = cfg.n_min.value_or(cfg.n);
        const std::uint64_t hi = cfg.n_max.value_or(lo);
        SearchReport rep;
        if (cfg.method == "pareto") {
            ParetoSearch::Options opts;
            opts.frontier_cap = cfg.frontier_cap;
            opts.general_d = cfg.general_d;
            opts.cache_path = detail::frontier_cache(cfg);
            rep = pareto_min_counts(hi, cfg.k, cfg.d, opts, lo);
        } else {
            for (std::uint64_t n = lo; n <= hi; ++n) leafdens::detail::check_budget(n, cfg.d, false, cfg.budget);
            TreeEnumerator any(cfg.d, false), strict(cfg.d, true);
            for (std::uint64_t n = lo; n <= hi; ++n)
                rep.rows.push_back(min_density_row(n, cfg.k, any, &strict, cfg.budget));
        }
        t = search_table(rep);
    } else if (s == "conjecture") {
        ParetoSearch::Options opts;
        opts.frontier_cap = cfg.frontier_cap;
        opts.cache_path = detail::frontier_cache(cfg);
        t = search_table(verify_even_conjecture(cfg.k, *cfg.n_max, opts));
    } else if (s == "monotone") {
        t = search_table(verify_monotone_min(cfg.d, cfg.k, *cfg.n_max, cfg.budget));
    } else if (s == "cache") {
        ParetoSearch::Options opts;
        opts.frontier_cap = cfg.frontier_cap;
        opts.general_d = cfg.general_d;
        opts.cache_path = detail::frontier_cache(cfg);
        ParetoSearch search(cfg.k, cfg.d, opts);
        search.extend_to(*cfg.n_max);
        t.columns = {"n", "frontier_size", "min_count", "witness"};
        for (std::uint64_t n = 1; n <= *cfg.n_max; ++n) {
            auto [count, witness] = search.minimum(n);
            t.add({std::to_string(n), std::to_string(search.frontier(n).size()), std::to_string(count),
                   witness.code()});
        }
    } else if (s == "simplex") {
        if (cfg.mode == "min") {
            MinimizeOptions opts;
            opts.seed = cfg.seed;
            auto res = minimize_F(cfg.d, cfg.k, opts);
            t.columns = {"d", "k", "point", "value", "uniform_value", "stationarity_residual", "evaluations",
                         "converged"};
            std::vector<std::string> coords;
            for (const auto& v : res.point) coords.push_back(detail::real_cell(v));
            const ExactRatio target = F_uniform_value(cfg.d, cfg.k);
            t.add({std::to_string(cfg.d), std::to_string(cfg.k), join(coords, ";"), detail::real_cell(res.value),
                   target.get_str(), detail::real_cell(res.stationarity_residual, 6),
                   std::to_string(res.evaluations), res.converged ? "true" : "false"});
        } else if (cfg.mode == "sup") {
            t.columns = {"eps", "value", "decimal", "gap_to_inverse_k"};
            auto eps = dyadic_schedule(cfg.t_max);
            auto vals = sup_boundary_scan(cfg.d, cfg.k, eps);
            const ExactRatio bound(1, cfg.k);
            for (std::size_t i = 0; i < eps.size(); ++i) {
                ExactRatio gap = bound - vals[i];
                gap.canonicalize();
                t.add({eps[i].get_str(), vals[i].get_str(), to_decimal(vals[i]), to_decimal(gap)});
            }
        } else if (cfg.mode == "bound-sample") {
            t.columns = {"sample", "point", "value", "decimal", "within_bounds"};
            std::mt19937_64 rng(cfg.seed);
            const ExactRatio upper(1, cfg.k);
            const ExactRatio lower = F_uniform_value(cfg.d, cfg.k);
            for (std::uint64_t i = 0; i < cfg.samples; ++i) {
                auto p = random_rational_point(cfg.d, rng);
                auto v = eval_F(cfg.d, cfg.k, p);
                const bool ok = v <= upper && v >= lower;
                t.add({std::to_string(i), detail::point_cell(p.coords()), v.get_str(), to_decimal(v),
                       ok ? "true" : "false"});
            }
        } else {
            t.columns = {"a", "b", "samples", "holds"};
            std::mt19937_64 rng(cfg.seed);
            std::vector<unsigned> a(cfg.d, 0);
            a[0] = cfg.k - 1;
            a[1] = 1;
            std::vector<std::vector<ExactRatio>> points;
            for (std::uint64_t i = 0; i < cfg.samples; ++i) points.push_back(random_rational_point(cfg.d, rng).coords());
            auto vec_cell = [](const std::vector<unsigned>& v) {
                std::vector<std::string> parts;
                for (auto e : v) parts.push_back(std::to_string(e));
                return join(parts, ";");
            };
            for (const auto& b : sorted_exponent_tuples(cfg.d, cfg.k)) {
                MajorizationPair pair(a, b);
                std::uint64_t holds = 0;
                for (const auto& x : points) holds += muirhead_check(pair, x) ? 1 : 0;
                t.add({vec_cell(a), vec_cell(b), std::to_string(points.size()), std::to_string(holds)});
            }
        }
    }
    return t;
}

// Parses argv into a RunConfig. Returns an exit code when parsing ends the
// run (help requested or invalid arguments).
inline std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                               std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Leaf-induced caterpillar counts, densities and extremal searches"};
    app.require_subcommand(1);
    std::string format = "csv";
    std::map<std::string, OutputFormat> formats{
        {"csv", OutputFormat::csv}, {"jsonl", OutputFormat::jsonl}, {"pretty", OutputFormat::pretty}};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "jsonl", "pretty"}));
        sub->add_option("--out", cfg.output_path, "Write the table to this file instead of stdout");
    };
    auto tree_opts = [&](CLI::App* sub, TreeSpec& spec, const std::string& prefix) {
        sub->add_option("--" + prefix, spec.code, "Canonical code of the " + prefix);
        sub->add_option("--" + prefix + "-complete", spec.complete, "Complete tree d,h")->delimiter(',')->expected(2);
        sub->add_option("--" + prefix + "-caterpillar", spec.caterpillar, "Caterpillar r,k")
            ->delimiter(',')
            ->expected(2);
        sub->add_option("--" + prefix + "-even", spec.even, "Even binary tree with n leaves");
    };

    for (const char* name : {"count", "density"}) {
        auto* sub = app.add_subcommand(name, std::string(name) + " of a pattern in a tree");
        tree_opts(sub, cfg.pattern, "pattern");
        tree_opts(sub, cfg.tree, "tree");
        sub->add_flag("--brute", cfg.brute, "Use subset enumeration instead of the recursion");
        sub->add_flag("--allow-large", cfg.allow_large, "Lift the brute-force subset cap");
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("enumerate", "List d-ary trees with n leaves");
        sub->add_option("--n", cfg.n)->required();
        sub->add_option("--d", cfg.d);
        sub->add_flag("--strict", cfg.strict, "Strictly d-ary trees only");
        sub->add_option("--budget", cfg.budget);
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("limits", "Exact limiting densities");
        sub->add_option("--d", cfg.d)->required();
        sub->add_option("--k", cfg.k)->required();
        sub->add_option("--k-max", cfg.k_max);
        sub->add_option("--r", cfg.r, "Caterpillar arity (2 = binary)");
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("search-min", "Minimum caterpillar density per leaf count");
        sub->add_option("--n", cfg.n_min)->required();
        sub->add_option("--n-max", cfg.n_max);
        sub->add_option("--d", cfg.d);
        sub->add_option("--k", cfg.k)->required();
        sub->add_option("--method", cfg.method)->check(CLI::IsMember({"exhaustive", "pareto"}));
        sub->add_option("--budget", cfg.budget);
        sub->add_option("--frontier-cap", cfg.frontier_cap);
        sub->add_flag("--general-d", cfg.general_d);
        sub->add_option("--cache", cfg.cache_path);
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("conjecture", "Check that even binary trees minimize caterpillar copies");
        sub->add_option("--k", cfg.k)->required();
        sub->add_option("--n-max", cfg.n_max)->required();
        sub->add_option("--frontier-cap", cfg.frontier_cap);
        sub->add_option("--cache", cfg.cache_path);
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("monotone", "Check that the minimum density is nondecreasing in n");
        sub->add_option("--d", cfg.d)->required();
        sub->add_option("--k", cfg.k)->required();
        sub->add_option("--n-max", cfg.n_max)->required();
        sub->add_option("--budget", cfg.budget);
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("simplex", "Evaluate and optimize F_{d,k} on the simplex");
        sub->add_option("--d", cfg.d)->required();
        sub->add_option("--k", cfg.k)->required();
        sub->add_option("--mode", cfg.mode)->check(CLI::IsMember({"min", "sup", "bound-sample", "muirhead"}));
        sub->add_option("--seed", cfg.seed);
        sub->add_option("--samples", cfg.samples);
        sub->add_option("--t-max", cfg.t_max, "Boundary scan uses eps = 2^-1 .. 2^-t");
        common(sub);
    }
    {
        auto* sub = app.add_subcommand("cache", "Build or extend the Pareto frontier cache");
        sub->add_option("--d", cfg.d);
        sub->add_option("--k", cfg.k)->required();
        sub->add_option("--n-max", cfg.n_max)->required();
        sub->add_option("--frontier-cap", cfg.frontier_cap);
        sub->add_flag("--general-d", cfg.general_d);
        sub->add_option("--cache", cfg.cache_path);
        common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kPrecondition;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.format = formats.at(format);
    if (cfg.subcommand == "search-min") cfg.n = *cfg.n_min;
    return cfg;
}

// Validates, executes and emits. Errors are reported on `err` and mapped to
// exit codes: 2 precondition, 3 budget, 4 I/O.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Table table;
    try {
        validate(cfg);
        table = execute(cfg);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kPrecondition;
    } catch (const BudgetError& e) {
        err << "refused: " << e.what() << '\n';
        return kBudget;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed cache: " << e.what() << '\n';
        return kPrecondition;
    } catch (const std::runtime_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    }

    try {
        if (cfg.output_path) {
            std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
            if (!file) throw std::runtime_error("cannot open " + *cfg.output_path + " for writing");
            emit_report(table, cfg.format, file);
        } else {
            emit_report(table, cfg.format, out);
        }
    } catch (const std::exception& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    }
    return kOk;
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    auto parsed = parse_args(argc, argv, out, err);
    if (auto* code = std::get_if<int>(&parsed)) return *code;
    return run(std::get<RunConfig>(parsed), out, err);
}

}  // namespace leafdens::cli
