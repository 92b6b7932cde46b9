#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "closed_forms.hpp"
#include "counting.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "tree.hpp"

// Enumeration of d-ary trees and exact minimum-density searches for binary
// caterpillars: exhaustive over all trees, or via a Pareto-frontier DP over
// caterpillar count vectors.
namespace leafdens {

inline constexpr std::uint64_t kDefaultTreeBudget = 1'000'000;
inline constexpr std::size_t kDefaultFrontierCap = 1'000'000;

// Number of d-ary trees (strict or not) with 1..n_max leaves, up to
// isomorphism. Entry 0 is unused.
inline std::vector<BigCount> count_trees_table(std::uint64_t n_max, unsigned d, bool strict) {
    if (d < 2) throw DomainError("d must be >= 2");
    std::vector<BigCount> a(n_max + 1, 0);
    if (n_max == 0) return a;
    a[1] = 1;
    // forests[p][t]: multisets of p trees with t leaves in total, built from
    // the sizes processed so far.
    std::vector<std::vector<BigCount>> forests(d + 1, std::vector<BigCount>(n_max + 1, 0));
    forests[0][0] = 1;
    const unsigned min_parts = strict ? d : 2;
    auto absorb = [&](std::uint64_t s) {
        if (a[s] == 0) return;
        for (unsigned p = d; p >= 1; --p) {
            for (std::uint64_t t = n_max; t >= 1; --t) {
                BigCount add = 0;
                for (unsigned j = 1; j <= p && j * s <= t; ++j) {
                    const auto& base = forests[p - j][t - j * s];
                    if (base != 0) add += base * binomial(BigCount(a[s] + j - 1), j);
                }
                forests[p][t] += add;
            }
        }
    };
    absorb(1);
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        for (unsigned p = min_parts; p <= d; ++p) a[n] += forests[p][n];
        absorb(n);
    }
    return a;
}

inline BigCount count_trees(std::uint64_t n, unsigned d, bool strict) {
    if (n == 0) return 0;
    return count_trees_table(n, d, strict)[n];
}

// Generates every d-ary tree with a given number of leaves exactly once.
// Results for smaller sizes are cached, so one enumerator should be reused
// across a range of n.
class TreeEnumerator {
public:
    TreeEnumerator(unsigned d, bool strict) : d_(d), strict_(strict) {
        if (d < 2) throw DomainError("d must be >= 2");
    }

    unsigned d() const noexcept { return d_; }
    bool strict() const noexcept { return strict_; }

    // All trees with n leaves, sorted by canonical code.
    const std::vector<Tree>& trees(std::uint64_t n) {
        if (n == 0) throw DomainError("trees need n >= 1 leaves");
        if (strict_ && (n - 1) % (d_ - 1) != 0)
            throw DomainError("strictly " + std::to_string(d_) + "-ary trees need n = 1 (mod " +
                              std::to_string(d_ - 1) + "), got n = " + std::to_string(n));
        return build(n);
    }

private:
    const std::vector<Tree>& build(std::uint64_t n) {
        if (cache_.size() <= n) cache_.resize(n + 1);
        if (cache_[n]) return *cache_[n];
        std::vector<Tree> out;
        if (n == 1) {
            out.push_back(Tree::leaf());
        } else if (!strict_ || (n - 1) % (d_ - 1) == 0) {
            for (std::uint64_t s = 1; s < n; ++s) build(s);
            std::vector<std::pair<std::uint64_t, std::size_t>> parts;
            choose(n, 1, 0, parts, out);
            std::sort(out.begin(), out.end(), TreeCodeLess{});
        }
        cache_[n] = std::move(out);
        return *cache_[n];
    }

    // Branches are picked in nondecreasing (size, index) order so every
    // multiset is produced once.
    void choose(std::uint64_t rem, std::uint64_t min_size, std::size_t min_idx,
                std::vector<std::pair<std::uint64_t, std::size_t>>& parts, std::vector<Tree>& out) {
        const unsigned min_parts = strict_ ? d_ : 2;
        if (rem == 0) {
            if (parts.size() >= min_parts) {
                std::vector<Tree> kids;
                kids.reserve(parts.size());
                for (auto [s, i] : parts) kids.push_back((*cache_[s])[i]);
                out.push_back(Tree::internal(std::move(kids)));
            }
            return;
        }
        if (parts.size() == d_) return;
        for (std::uint64_t s = min_size; s <= rem; ++s) {
            const std::uint64_t after = rem - s;
            const std::size_t slots_left = d_ - parts.size() - 1;
            if (after != 0 && (after < s || slots_left == 0)) continue;
            // Remaining parts are >= s each and there must be enough of them.
            const std::size_t still_needed = parts.size() + 1 < min_parts ? min_parts - parts.size() - 1 : 0;
            if (after < s * still_needed) continue;
            const auto& pool = *cache_[s];
            for (std::size_t i = (s == min_size ? min_idx : 0); i < pool.size(); ++i) {
                parts.emplace_back(s, i);
                choose(after, s, i, parts, out);
                parts.pop_back();
            }
        }
    }

    unsigned d_;
    bool strict_;
    std::vector<std::optional<std::vector<Tree>>> cache_;
};

inline std::vector<Tree> enumerate_trees(std::uint64_t n, unsigned d, bool strict) {
    TreeEnumerator e(d, strict);
    return e.trees(n);
}

// Exhaustive and DP search results. Rows are per leaf count.
struct SearchRow {
    std::uint64_t n = 0;
    BigCount min_count;
    ExactRatio min_density;
    std::vector<CanonicalCode> argmin;
    // Minimum over strictly d-ary trees, when any exist at this n.
    std::optional<BigCount> strict_min_count;
    std::optional<ExactRatio> strict_min_density;
    // c(F^2_k, E^2_n) for conjecture runs.
    std::optional<BigCount> even_count;
    std::optional<bool> verdict;
};

struct SearchReport {
    std::string mode;
    unsigned d = 2;
    unsigned k = 0;
    std::uint64_t n_min = 0;
    std::uint64_t n_max = 0;
    std::vector<SearchRow> rows;
    // Verdicts of the checks attached to this run (empty when none apply).
    std::map<std::string, bool> checks;
    double wall_seconds = 0;

    bool all_checks_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& kv) { return kv.second; });
    }
};

namespace detail {

inline void check_budget(std::uint64_t n, unsigned d, bool strict, std::uint64_t budget) {
    BigCount total = count_trees(n, d, strict);
    if (total > BigCount(std::to_string(budget)))
        throw BudgetError("exhaustive search over " + total.get_str() + " " + std::to_string(d) +
                          "-ary trees with " + std::to_string(n) + " leaves exceeds budget " +
                          std::to_string(budget));
}

// Minimum of c(F^2_k, .) over `pool`, with every argmin.
inline void scan_minimum(const std::vector<Tree>& pool, unsigned k, std::optional<BigCount>& best,
                         std::vector<CanonicalCode>* argmin) {
    for (const auto& t : pool) {
        BigCount c = caterpillar_counts(t, k)[k];
        if (!best || c < *best) {
            best = c;
            if (argmin) argmin->assign(1, t.code());
        } else if (argmin && c == *best) {
            argmin->push_back(t.code());
        }
    }
}

inline ExactRatio as_density(const BigCount& count, std::uint64_t n, unsigned k) {
    ExactRatio r(count, binomial(n, k));
    r.canonicalize();
    return r;
}

}  // namespace detail

// Exact min over all d-ary n-leaf trees of gamma(F^2_k, T), with every
// minimizer. Uses and fills the enumerators' caches.
inline SearchRow min_density_row(std::uint64_t n, unsigned k, TreeEnumerator& any,
                                 TreeEnumerator* strict_enum,
                                 std::uint64_t budget = kDefaultTreeBudget) {
    const unsigned d = any.d();
    if (k < 2) throw DomainError("k must be >= 2");
    if (n < k) throw DomainError("minimum density needs n >= k (n = " + std::to_string(n) +
                                 ", k = " + std::to_string(k) + ")");
    detail::check_budget(n, d, false, budget);
    SearchRow row;
    row.n = n;
    std::optional<BigCount> best;
    detail::scan_minimum(any.trees(n), k, best, &row.argmin);
    row.min_count = *best;
    row.min_density = detail::as_density(*best, n, k);
    if (strict_enum && (n - 1) % (d - 1) == 0) {
        std::optional<BigCount> sbest;
        detail::scan_minimum(strict_enum->trees(n), k, sbest, nullptr);
        row.strict_min_count = *sbest;
        row.strict_min_density = detail::as_density(*sbest, n, k);
    }
    return row;
}

inline SearchReport min_density_exhaustive(std::uint64_t n, unsigned d, unsigned k,
                                           std::uint64_t budget = kDefaultTreeBudget) {
    const auto start = std::chrono::steady_clock::now();
    TreeEnumerator any(d, false), strict(d, true);
    SearchReport rep;
    rep.mode = "exhaustive";
    rep.d = d;
    rep.k = k;
    rep.n_min = rep.n_max = n;
    rep.rows.push_back(min_density_row(n, k, any, &strict, budget));
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// One point of a Pareto frontier: the vector (c(F^2_3,T), ..., c(F^2_k,T))
// of some n-leaf tree T, and T itself.
struct FrontierEntry {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> vector;
    Tree witness;
};

// Bottom-up Pareto DP for min c(F^2_k, T) over d-ary trees. The caterpillar
// combiner is monotone in every branch coordinate, so only non-dominated
// count vectors of each size can lead to a minimum.
class ParetoSearch {
public:
    static constexpr unsigned kMaxParts = 8;

    struct Options {
        std::size_t frontier_cap = kDefaultFrontierCap;
        // Permit d > 2. Binary search is the default; other d combine
        // frontiers over all compositions into 2..d parts.
        bool general_d = false;
        // Optional JSON-lines cache file (one line per frontier entry).
        std::optional<std::filesystem::path> cache_path;
    };

    ParetoSearch(unsigned k, unsigned d) : ParetoSearch(k, d, Options{}) {}

    ParetoSearch(unsigned k, unsigned d, Options opts) : k_(k), d_(d), opts_(std::move(opts)) {
        if (k < 3) throw DomainError("Pareto search needs k >= 3");
        if (d < 2) throw DomainError("d must be >= 2");
        if (d > 2 && !opts_.general_d)
            throw DomainError("Pareto search for d > 2 requires the general-d option");
        if (d > kMaxParts) throw DomainError("Pareto search supports d <= " + std::to_string(kMaxParts));
        frontiers_.push_back({});
        frontiers_.push_back({FrontierEntry{1, std::vector<std::uint64_t>(dim(), 0), Tree::leaf()}});
        if (opts_.cache_path) load_cache();
    }

    unsigned k() const noexcept { return k_; }
    unsigned d() const noexcept { return d_; }
    std::size_t dim() const noexcept { return k_ - 2; }
    std::uint64_t computed_up_to() const noexcept { return frontiers_.size() - 1; }

    const std::vector<FrontierEntry>& frontier(std::uint64_t n) {
        extend_to(n);
        return frontiers_.at(n);
    }

    // Minimum c(F^2_k) over n-leaf trees and one tree attaining it.
    std::pair<std::uint64_t, Tree> minimum(std::uint64_t n) {
        const auto& f = frontier(n);
        const FrontierEntry* best = &f.front();
        for (const auto& e : f)
            if (e.vector.back() < best->vector.back()) best = &e;
        return {best->vector.back(), best->witness};
    }

    void extend_to(std::uint64_t n_max) {
        if (n_max == 0) throw DomainError("n must be >= 1");
        check_overflow(n_max);
        while (computed_up_to() < n_max) {
            const std::uint64_t n = computed_up_to() + 1;
            frontiers_.push_back(build(n));
            if (opts_.cache_path) append_cache(n);
        }
    }

private:
    struct Candidate {
        std::vector<std::uint64_t> vec;
        std::uint8_t parts = 0;
        std::array<std::uint32_t, kMaxParts> size{};
        std::array<std::uint32_t, kMaxParts> index{};

        auto ref_key() const {
            return std::tie(parts, size, index);
        }
    };

    // Intermediate products stay below n * C(n, k) * d; refuse anything that
    // could overflow 64 bits.
    void check_overflow(std::uint64_t n_max) const {
        BigCount bound = BigCount(std::to_string(n_max)) * binomial(n_max, k_ - 1) * (d_ + 1) +
                         binomial(n_max, k_) * (d_ + 1);
        if (bound >= ipow(BigCount(2), 63))
            throw BudgetError("Pareto search counts for n = " + std::to_string(n_max) + ", k = " +
                              std::to_string(k_) + " would overflow 64-bit arithmetic");
    }

    // c_1..c_k of a frontier entry of size s, with c_1 = s and c_2 = C(s,2).
    std::uint64_t coord(const FrontierEntry& e, unsigned j) const {
        if (j == 1) return e.n;
        if (j == 2) return e.n * (e.n - 1) / 2;
        return e.vector[j - 3];
    }

    std::vector<FrontierEntry> build(std::uint64_t n) {
        std::vector<Candidate> pool;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> parts;
        const std::size_t flush_at = std::max<std::size_t>(1 << 16, 2 * opts_.frontier_cap);

        // Sums over the chosen branches: own[j] = sum c_j, crossed[j] = sum n_i c_j.
        auto emit = [&] {
            Candidate c;
            c.vec.assign(dim(), 0);
            c.parts = static_cast<std::uint8_t>(parts.size());
            for (std::size_t p = 0; p < parts.size(); ++p) {
                c.size[p] = parts[p].first;
                c.index[p] = parts[p].second;
            }
            for (unsigned j = 3; j <= k_; ++j) {
                std::uint64_t own = 0, cross_total = 0, diag = 0;
                for (auto [s, i] : parts) {
                    const auto& e = frontiers_[s][i];
                    own += coord(e, j);
                    cross_total += coord(e, j - 1);
                    diag += e.n * coord(e, j - 1);
                }
                c.vec[j - 3] = own + n * cross_total - diag;
            }
            pool.push_back(std::move(c));
            if (pool.size() >= flush_at) prune(pool);
        };

        auto choose = [&](auto&& self, std::uint64_t rem, std::uint64_t min_size, std::size_t min_idx) -> void {
            if (rem == 0) {
                if (parts.size() >= 2) emit();
                return;
            }
            if (parts.size() == d_) return;
            for (std::uint64_t s = min_size; s <= rem && s < n; ++s) {
                const std::uint64_t after = rem - s;
                const std::size_t slots_left = d_ - parts.size() - 1;
                if (after != 0 && (after < s || slots_left == 0)) continue;
                if (parts.empty() && after == 0) continue;
                const auto& f = frontiers_[s];
                for (std::size_t i = (s == min_size ? min_idx : 0); i < f.size(); ++i) {
                    parts.emplace_back(static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(i));
                    self(self, after, s, i);
                    parts.pop_back();
                }
            }
        };
        choose(choose, n, 1, 0);
        prune(pool);

        if (pool.size() > opts_.frontier_cap)
            throw BudgetError("Pareto frontier at n = " + std::to_string(n) + " has " +
                              std::to_string(pool.size()) + " entries (cap " +
                              std::to_string(opts_.frontier_cap) + "); previous frontier sizes: " +
                              size_history());

        std::vector<FrontierEntry> out;
        out.reserve(pool.size());
        for (auto& c : pool) {
            std::vector<Tree> kids;
            for (std::uint8_t p = 0; p < c.parts; ++p) kids.push_back(frontiers_[c.size[p]][c.index[p]].witness);
            out.push_back(FrontierEntry{n, std::move(c.vec), Tree::internal(std::move(kids))});
        }
        return out;
    }

    // Weak-dominance pruning. Among equal vectors the one with the smallest
    // branch reference survives, so the result is deterministic.
    static void prune(std::vector<Candidate>& pool) {
        std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
            if (a.vec != b.vec) return a.vec < b.vec;
            return a.ref_key() < b.ref_key();
        });
        std::vector<Candidate> kept;
        if (pool.empty()) return;
        const std::size_t dim = pool.front().vec.size();
        if (dim == 1) {
            kept.push_back(std::move(pool.front()));
        } else if (dim == 2) {
            for (auto& c : pool)
                if (kept.empty() || c.vec[1] < kept.back().vec[1]) kept.push_back(std::move(c));
        } else if (dim == 3) {
            // Points arrive with nondecreasing x, so dominance reduces to a
            // (y, z) staircase query. Stair entries superseded by a new point
            // stay in `kept`; they are only dropped from future queries.
            std::map<std::uint64_t, std::uint64_t> stairs;
            for (auto& c : pool) {
                const std::uint64_t y = c.vec[1], z = c.vec[2];
                auto it = stairs.upper_bound(y);
                if (it != stairs.begin() && std::prev(it)->second <= z) continue;
                while (it != stairs.end() && it->second >= z) it = stairs.erase(it);
                stairs[y] = z;
                kept.push_back(std::move(c));
            }
        } else {
            for (auto& c : pool) {
                bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Candidate& o) {
                    for (std::size_t i = 0; i < dim; ++i)
                        if (o.vec[i] > c.vec[i]) return false;
                    return true;
                });
                if (!dominated) kept.push_back(std::move(c));
            }
        }
        pool = std::move(kept);
    }

    std::string size_history() const {
        std::string s;
        const std::uint64_t from = frontiers_.size() > 6 ? frontiers_.size() - 5 : 1;
        for (std::uint64_t i = from; i < frontiers_.size(); ++i) {
            if (!s.empty()) s += ", ";
            s += "n=" + std::to_string(i) + ":" + std::to_string(frontiers_[i].size());
        }
        return s;
    }

    void load_cache() {
        std::ifstream in(*opts_.cache_path);
        if (!in) return;
        std::map<std::uint64_t, std::vector<FrontierEntry>> groups;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw DomainError("frontier cache line " + std::to_string(lineno) + ": " + e.what());
            }
            FrontierEntry e;
            e.n = j.at("n").get<std::uint64_t>();
            e.vector = j.at("vector").get<std::vector<std::uint64_t>>();
            e.witness = parse_tree(j.at("witness").get<std::string>());
            if (e.vector.size() != dim() || e.witness.leaf_count() != e.n || !is_d_ary(e.witness, d_))
                throw DomainError("frontier cache line " + std::to_string(lineno) + " does not match d = " +
                                  std::to_string(d_) + ", k = " + std::to_string(k_));
            auto counts = caterpillar_counts(e.witness, k_);
            for (unsigned jj = 3; jj <= k_; ++jj)
                if (counts[jj] != BigCount(std::to_string(e.vector[jj - 3])))
                    throw DomainError("frontier cache line " + std::to_string(lineno) +
                                      ": witness does not reproduce its vector");
            groups[e.n].push_back(std::move(e));
        }
        // Only a contiguous prefix is usable; the last group may have been cut
        // short by an interrupted run, so it is recomputed.
        std::uint64_t expect = 2;
        std::vector<std::vector<FrontierEntry>> loaded;
        for (auto& [n, entries] : groups) {
            if (n == 1) continue;
            if (n != expect) break;
            loaded.push_back(std::move(entries));
            ++expect;
        }
        if (!loaded.empty()) loaded.pop_back();
        for (auto& f : loaded) frontiers_.push_back(std::move(f));
        // Rewrite so the file holds exactly the trusted prefix.
        std::ofstream out(*opts_.cache_path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write frontier cache " + opts_.cache_path->string());
        for (std::uint64_t n = 1; n < frontiers_.size(); ++n) write_group(out, n);
    }

    void append_cache(std::uint64_t n) {
        std::ofstream out(*opts_.cache_path, std::ios::app);
        if (!out) throw std::runtime_error("cannot write frontier cache " + opts_.cache_path->string());
        if (n == 2 && std::filesystem::file_size(*opts_.cache_path) == 0) write_group(out, 1);
        write_group(out, n);
    }

    void write_group(std::ostream& out, std::uint64_t n) const {
        for (const auto& e : frontiers_[n]) {
            nlohmann::ordered_json j;
            j["n"] = e.n;
            j["vector"] = e.vector;
            j["witness"] = e.witness.code();
            out << j.dump() << '\n';
        }
        out.flush();
    }

    unsigned k_;
    unsigned d_;
    Options opts_;
    std::vector<std::vector<FrontierEntry>> frontiers_;
};

// Minimum c(F^2_k) per n by the Pareto DP, for n = n_min..n_max.
inline SearchReport pareto_min_counts(std::uint64_t n_max, unsigned k, unsigned d = 2,
                                      ParetoSearch::Options opts = {}, std::uint64_t n_min = 0) {
    const auto start = std::chrono::steady_clock::now();
    if (n_min == 0) n_min = k;
    ParetoSearch search(k, d, std::move(opts));
    search.extend_to(n_max);
    SearchReport rep;
    rep.mode = "pareto";
    rep.d = d;
    rep.k = k;
    rep.n_min = n_min;
    rep.n_max = n_max;
    for (std::uint64_t n = n_min; n <= n_max; ++n) {
        auto [count, witness] = search.minimum(n);
        SearchRow row;
        row.n = n;
        row.min_count = BigCount(std::to_string(count));
        row.min_density = detail::as_density(row.min_count, n, k);
        row.argmin.push_back(witness.code());
        rep.rows.push_back(std::move(row));
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// Checks, for k <= n <= n_max, whether the even binary tree attains the
// minimum number of F^2_k copies among binary trees with n leaves.
inline SearchReport verify_even_conjecture(unsigned k, std::uint64_t n_max, ParetoSearch::Options opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (k < 3) throw DomainError("conjecture check needs k >= 3");
    if (n_max < k) throw DomainError("conjecture check needs n_max >= k");
    opts.general_d = false;
    ParetoSearch search(k, 2, std::move(opts));
    search.extend_to(n_max);
    SearchReport rep;
    rep.mode = "conjecture";
    rep.d = 2;
    rep.k = k;
    rep.n_min = k;
    rep.n_max = n_max;
    bool all = true;
    for (std::uint64_t n = k; n <= n_max; ++n) {
        auto [count, witness] = search.minimum(n);
        SearchRow row;
        row.n = n;
        row.min_count = BigCount(std::to_string(count));
        row.min_density = detail::as_density(row.min_count, n, k);
        row.argmin.push_back(witness.code());
        row.even_count = caterpillar_counts(make_even_binary(n), k)[k];
        row.verdict = *row.even_count == row.min_count;
        all = all && *row.verdict;
        rep.rows.push_back(std::move(row));
    }
    rep.checks["even_tree_attains_minimum"] = all;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// Exhaustive minima for k <= n <= n_max; checks that the minimum density is
// nondecreasing in n and never exceeds the limiting value.
inline SearchReport verify_monotone_min(unsigned d, unsigned k, std::uint64_t n_max,
                                        std::uint64_t budget = kDefaultTreeBudget) {
    const auto start = std::chrono::steady_clock::now();
    if (k < 2) throw DomainError("k must be >= 2");
    if (n_max < k) throw DomainError("monotonicity check needs n_max >= k");
    for (std::uint64_t n = k; n <= n_max; ++n) detail::check_budget(n, d, false, budget);
    const ExactRatio limit = liminf_density(d, k);
    TreeEnumerator any(d, false), strict(d, true);
    SearchReport rep;
    rep.mode = "monotone";
    rep.d = d;
    rep.k = k;
    rep.n_min = k;
    rep.n_max = n_max;
    bool monotone = true, bounded = true;
    for (std::uint64_t n = k; n <= n_max; ++n) {
        SearchRow row = min_density_row(n, k, any, &strict, budget);
        bool ok = row.min_density <= limit;
        if (!rep.rows.empty()) ok = ok && rep.rows.back().min_density <= row.min_density;
        if (!rep.rows.empty() && rep.rows.back().min_density > row.min_density) monotone = false;
        if (row.min_density > limit) bounded = false;
        row.verdict = ok;
        rep.rows.push_back(std::move(row));
    }
    rep.checks["nondecreasing"] = monotone;
    rep.checks["bounded_by_liminf"] = bounded;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace leafdens
