#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <leafdens/tree.hpp>

namespace leafdens::testing {

// Random tree with n leaves and outdegrees in [2, d].
template <class Rng>
Tree random_tree(std::uint64_t n, unsigned d, Rng& rng) {
    if (n == 1) return Tree::leaf();
    const unsigned max_parts = static_cast<unsigned>(std::min<std::uint64_t>(d, n));
    const unsigned parts = 2 + static_cast<unsigned>(rng() % (max_parts - 1));
    // Random composition of n into `parts` positive sizes.
    std::vector<std::uint64_t> cuts;
    std::vector<std::uint64_t> pool(n - 1);
    for (std::uint64_t i = 0; i < n - 1; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    cuts.assign(pool.begin(), pool.begin() + (parts - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Tree> kids;
    std::uint64_t prev = 0;
    for (auto c : cuts) {
        kids.push_back(random_tree(c - prev, d, rng));
        prev = c;
    }
    kids.push_back(random_tree(n - prev, d, rng));
    return Tree::internal(std::move(kids));
}

// Code text of t with the children of every vertex in a random order.
template <class Rng>
std::string shuffled_code(const Tree& t, Rng& rng) {
    if (t.is_leaf()) return "*";
    std::vector<std::string> parts;
    for (const auto& c : t.children()) parts.push_back(shuffled_code(c, rng));
    std::shuffle(parts.begin(), parts.end(), rng);
    std::string s = "(";
    for (const auto& p : parts) s += p;
    return s + ")";
}

// Wedderburn-Etherington numbers via
// a(n) = sum_{i < n/2} a(i) a(n-i) + [n even] C(a(n/2) + 1, 2).
inline std::vector<std::uint64_t> wedderburn_etherington(unsigned n_max) {
    std::vector<std::uint64_t> a(n_max + 1, 0);
    if (n_max >= 1) a[1] = 1;
    for (unsigned n = 2; n <= n_max; ++n) {
        std::uint64_t s = 0;
        for (unsigned i = 1; 2 * i < n; ++i) s += a[i] * a[n - i];
        if (n % 2 == 0) s += a[n / 2] * (a[n / 2] + 1) / 2;
        a[n] = s;
    }
    return a;
}

}  // namespace leafdens::testing
