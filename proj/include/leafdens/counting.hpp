#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"
#include "tree.hpp"

namespace leafdens {

// Subtree of `t` induced by the given leaves (indices into the depth-first
// leaf order of the canonical orientation), with outdegree-1 vertices
// suppressed.
inline Tree induced_subtree(const Tree& t, std::span<const std::uint64_t> leaves) {
    if (leaves.empty()) throw DomainError("induced subtree needs a nonempty leaf set");
    std::vector<bool> selected(t.leaf_count(), false);
    for (auto l : leaves) {
        if (l >= t.leaf_count())
            throw DomainError("leaf index " + std::to_string(l) + " out of range for a tree with " +
                              std::to_string(t.leaf_count()) + " leaves");
        if (selected[l]) throw DomainError("leaf index " + std::to_string(l) + " repeated");
        selected[l] = true;
    }
    std::uint64_t next_leaf = 0;
    auto walk = [&](auto&& self, const Tree& node) -> std::optional<Tree> {
        if (node.is_leaf()) {
            if (selected[next_leaf++]) return Tree::leaf();
            return std::nullopt;
        }
        std::vector<Tree> kept;
        for (const auto& c : node.children())
            if (auto sub = self(self, c)) kept.push_back(std::move(*sub));
        if (kept.empty()) return std::nullopt;
        if (kept.size() == 1) return std::move(kept.front());
        return Tree::internal(std::move(kept));
    };
    return *walk(walk, t);
}

inline constexpr std::uint64_t kBruteForceSubsetCap = 100'000'000;

namespace detail {

// Calls `visit(indices)` for every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_combination(std::uint64_t n, std::uint64_t k, Visit&& visit) {
    if (k > n) return;
    std::vector<std::uint64_t> idx(k);
    for (std::uint64_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        visit(std::span<const std::uint64_t>(idx));
        std::int64_t i = static_cast<std::int64_t>(k) - 1;
        while (i >= 0 && idx[i] == n - k + static_cast<std::uint64_t>(i)) --i;
        if (i < 0) return;
        ++idx[i];
        for (std::uint64_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline void check_subset_budget(std::uint64_t n, std::uint64_t k, bool allow_large) {
    if (allow_large || k > n) return;
    BigCount subsets = binomial(n, k);
    if (subsets > BigCount(std::to_string(kBruteForceSubsetCap)))
        throw BudgetError("brute force would enumerate " + subsets.get_str() +
                          " leaf subsets (cap " + std::to_string(kBruteForceSubsetCap) + ")");
}

}  // namespace detail

// c(D,T) by enumerating every |D|-subset of T's leaves. This is the oracle
// the recursive engine is checked against.
inline BigCount count_copies_brute(const Tree& pattern, const Tree& t, bool allow_large = false) {
    const auto k = pattern.leaf_count();
    const auto n = t.leaf_count();
    if (k > n) return 0;
    detail::check_subset_budget(n, k, allow_large);
    std::uint64_t hits = 0;
    detail::for_each_combination(n, k, [&](std::span<const std::uint64_t> subset) {
        if (induced_subtree(t, subset).code() == pattern.code()) ++hits;
    });
    return BigCount(std::to_string(hits));
}

// Brute-force histogram: canonical code -> number of k-subsets inducing it.
inline std::map<CanonicalCode, BigCount> induced_shape_counts(const Tree& t, std::uint64_t k,
                                                              bool allow_large = false) {
    std::map<CanonicalCode, std::uint64_t> raw;
    if (k == 0) throw DomainError("shape histogram needs k >= 1");
    detail::check_subset_budget(t.leaf_count(), k, allow_large);
    detail::for_each_combination(t.leaf_count(), k, [&](std::span<const std::uint64_t> subset) {
        ++raw[induced_subtree(t, subset).code()];
    });
    std::map<CanonicalCode, BigCount> out;
    for (const auto& [code, c] : raw) out.emplace(code, BigCount(std::to_string(c)));
    return out;
}

// Recursive copy counter. Memoizes on the pair of canonical codes; the memo
// lives as long as the engine and is shared by all queries. Queries may run
// concurrently from several threads.
class CountingEngine {
public:
    BigCount count(const Tree& pattern, const Tree& t) {
        if (pattern.is_leaf()) return BigCount(std::to_string(t.leaf_count()));
        if (pattern.leaf_count() > t.leaf_count() || t.is_leaf()) return 0;
        if (pattern.leaf_count() == t.leaf_count()) return pattern == t ? 1 : 0;

        const Key key{intern(pattern.code()), intern(t.code())};
        {
            std::shared_lock lock(mutex_);
            if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        }

        BigCount total = 0;
        for (const auto& branch : t.children()) total += count(pattern, branch);
        total += count_rooted(pattern, t);

        std::unique_lock lock(mutex_);
        return memo_.try_emplace(key, std::move(total)).first->second;
    }

    std::size_t memo_size() const {
        std::shared_lock lock(mutex_);
        return memo_.size();
    }

private:
    struct Key {
        std::uint32_t pattern, tree;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return (static_cast<std::size_t>(k.pattern) << 32) ^ k.tree;
        }
    };

    std::uint32_t intern(const CanonicalCode& code) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = ids_.find(code); it != ids_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        return ids_.try_emplace(code, static_cast<std::uint32_t>(ids_.size())).first->second;
    }

    // Copies whose leaves meet at least two branches of t, so that the root of
    // the copy is the root of t. The pattern's r branches go to r distinct
    // branches of t; equal pattern branches are handled by iterating distinct
    // sequences of branch classes instead of all r! permutations.
    BigCount count_rooted(const Tree& pattern, const Tree& t) {
        const auto pkids = pattern.children();
        const auto tkids = t.children();
        const std::size_t r = pkids.size();
        const std::size_t m = tkids.size();
        if (r > m) return 0;

        // Children are canonically sorted, so isomorphic branches are adjacent.
        std::vector<std::size_t> cls(r);
        std::vector<Tree> reps;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == 0 || !(pkids[i] == pkids[i - 1])) reps.push_back(pkids[i]);
            cls[i] = reps.size() - 1;
        }

        std::vector<std::vector<BigCount>> table(reps.size(), std::vector<BigCount>(m));
        for (std::size_t c = 0; c < reps.size(); ++c)
            for (std::size_t b = 0; b < m; ++b) table[c][b] = count(reps[c], tkids[b]);

        BigCount total = 0;
        BigCount product;
        detail::for_each_combination(m, r, [&](std::span<const std::uint64_t> chosen) {
            std::vector<std::size_t> seq = cls;
            do {
                product = 1;
                for (std::size_t j = 0; j < r && product != 0; ++j) product *= table[seq[j]][chosen[j]];
                total += product;
            } while (std::next_permutation(seq.begin(), seq.end()));
        });
        return total;
    }

    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::unordered_map<Key, BigCount, KeyHash> memo_;
};

// c(D,T) through a fresh engine.
inline BigCount count_copies(const Tree& pattern, const Tree& t) {
    CountingEngine engine;
    return engine.count(pattern, t);
}

// gamma(D,T) = c(D,T) / C(|T|, |D|).
inline ExactRatio density(const Tree& pattern, const Tree& t, CountingEngine& engine) {
    if (t.leaf_count() < pattern.leaf_count())
        throw DomainError("density needs |T| >= |D| (|T| = " + std::to_string(t.leaf_count()) +
                          ", |D| = " + std::to_string(pattern.leaf_count()) + ")");
    ExactRatio r(engine.count(pattern, t), binomial(t.leaf_count(), pattern.leaf_count()));
    r.canonicalize();
    return r;
}

inline ExactRatio density(const Tree& pattern, const Tree& t) {
    CountingEngine engine;
    return density(pattern, t, engine);
}

// Copy counts of the binary caterpillars F^2_2..F^2_k in one tree.
struct CountVector {
    std::uint64_t n = 0;
    // counts[j] = c(F^2_j, T) for 1 <= j <= k; counts[1] = n, counts[0] unused.
    std::vector<BigCount> counts;

    unsigned k() const noexcept { return static_cast<unsigned>(counts.size()) - 1; }
    const BigCount& operator[](unsigned j) const { return counts.at(j); }
};

// Caterpillar counts for every F^2_j, j <= k, in one bottom-up pass. For a
// vertex with branches T_1..T_m:
//   c(F^2_j, T) = sum_i c(F^2_j, T_i) + sum_{i != l} |T_i| c(F^2_{j-1}, T_l),  j >= 3
// and c(F^2_2, T) = C(|T|, 2).
inline CountVector caterpillar_counts(const Tree& t, unsigned k) {
    if (k < 2) throw DomainError("caterpillar_counts needs k >= 2");
    std::unordered_map<std::string_view, std::vector<BigCount>> memo;

    auto visit = [&](auto&& self, const Tree& node) -> const std::vector<BigCount>& {
        if (auto it = memo.find(node.code()); it != memo.end()) return it->second;
        const std::uint64_t n = node.leaf_count();
        std::vector<BigCount> c(k + 1, 0);
        c[1] = BigCount(std::to_string(n));
        c[2] = binomial(n, 2);
        if (!node.is_leaf() && k >= 3) {
            std::vector<const std::vector<BigCount>*> kids;
            for (const auto& ch : node.children()) kids.push_back(&self(self, ch));
            for (unsigned j = 3; j <= k; ++j) {
                // sum_{i != l} n_i c_{j-1}(T_l) = n * S_{j-1} - sum_l n_l c_{j-1}(T_l)
                BigCount own = 0, cross_total = 0, diag = 0;
                for (const auto* kc : kids) {
                    own += (*kc)[j];
                    cross_total += (*kc)[j - 1];
                    diag += (*kc)[1] * (*kc)[j - 1];
                }
                c[j] = own + c[1] * cross_total - diag;
            }
        }
        return memo.emplace(node.code(), std::move(c)).first->second;
    };

    CountVector out;
    out.n = t.leaf_count();
    out.counts = visit(visit, t);
    return out;
}

}  // namespace leafdens
