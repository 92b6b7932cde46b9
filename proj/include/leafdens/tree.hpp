#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace leafdens {

// Canonical code of a rooted tree over the alphabet {'(', ')', '*'}.
// A leaf is "*"; an internal vertex is "(" + children codes + ")" with the
// children sorted ascending by (length, lexicographic).
using CanonicalCode = std::string;

// Total order used to sort sibling codes.
inline bool code_less(std::string_view a, std::string_view b) noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Immutable rooted tree with unordered children. Every internal vertex has
// outdegree >= 2 and children are kept in canonical order, so two trees are
// equal exactly when they are isomorphic as rooted trees. Copies share
// structure and are safe to pass between threads.
class Tree {
public:
    // The single-leaf tree.
    Tree() : node_(leaf_node()) {}

    static Tree leaf() { return Tree(); }

    // Internal vertex over `children` (any order). Throws DomainError for
    // fewer than two children.
    static Tree internal(std::vector<Tree> children) {
        if (children.size() < 2)
            throw DomainError("internal vertex needs at least 2 children, got " +
                              std::to_string(children.size()));
        std::sort(children.begin(), children.end(),
                  [](const Tree& a, const Tree& b) { return code_less(a.code(), b.code()); });

        auto node = std::make_shared<Node>();
        std::size_t len = 2;
        for (const auto& c : children) len += c.code().size();
        node->code.reserve(len);
        node->code.push_back('(');
        node->min_outdegree = children.size();
        node->max_outdegree = children.size();
        for (const auto& c : children) {
            node->code += c.code();
            node->leaf_count += c.leaf_count();
            if (!c.is_leaf()) {
                node->min_outdegree = std::min(node->min_outdegree, c.node_->min_outdegree);
                node->max_outdegree = std::max(node->max_outdegree, c.node_->max_outdegree);
            }
        }
        node->code.push_back(')');
        node->children = std::move(children);
        return Tree(std::move(node));
    }

    bool is_leaf() const noexcept { return node_->children.empty(); }
    std::uint64_t leaf_count() const noexcept { return node_->leaf_count; }
    std::size_t outdegree() const noexcept { return node_->children.size(); }
    std::span<const Tree> children() const noexcept { return node_->children; }
    const CanonicalCode& code() const noexcept { return node_->code; }

    // Largest / smallest outdegree over internal vertices (0 for a leaf).
    std::size_t max_outdegree() const noexcept { return node_->max_outdegree; }
    std::size_t min_outdegree() const noexcept { return node_->min_outdegree; }

    friend bool operator==(const Tree& a, const Tree& b) noexcept {
        return a.node_ == b.node_ || a.code() == b.code();
    }

private:
    struct Node {
        std::vector<Tree> children;
        std::uint64_t leaf_count = 0;
        std::size_t min_outdegree = 0;
        std::size_t max_outdegree = 0;
        CanonicalCode code;
    };

    explicit Tree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<const Node> leaf_node() {
        static const std::shared_ptr<const Node> leaf = [] {
            auto n = std::make_shared<Node>();
            n->leaf_count = 1;
            n->code = "*";
            return n;
        }();
        return leaf;
    }

    std::shared_ptr<const Node> node_;
};

struct TreeCodeLess {
    bool operator()(const Tree& a, const Tree& b) const noexcept {
        return code_less(a.code(), b.code());
    }
};

inline const CanonicalCode& serialize(const Tree& t) noexcept { return t.code(); }

// Parses a code string. Children may appear in any order; the result is
// canonical. Non-recursive, so deep caterpillars are fine.
inline Tree parse_tree(std::string_view text) {
    if (text.empty()) throw ParseError("empty tree text", 0);

    struct Frame {
        std::size_t open_offset;
        std::vector<Tree> children;
    };
    std::vector<Frame> stack;
    Tree result;
    bool done = false;

    auto finish = [&](Tree t, std::size_t pos) {
        if (stack.empty()) {
            result = std::move(t);
            done = true;
            if (pos + 1 != text.size())
                throw ParseError("trailing characters after complete tree", pos + 1);
        } else {
            stack.back().children.push_back(std::move(t));
        }
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        if (done) throw ParseError("trailing characters after complete tree", i);
        switch (text[i]) {
            case '*':
                finish(Tree::leaf(), i);
                break;
            case '(':
                stack.push_back(Frame{i, {}});
                break;
            case ')': {
                if (stack.empty()) throw ParseError("unbalanced ')'", i);
                Frame f = std::move(stack.back());
                stack.pop_back();
                if (f.children.empty()) throw ParseError("vertex with no children", f.open_offset);
                if (f.children.size() == 1)
                    throw StructureError("internal vertex with exactly 1 child", f.open_offset);
                finish(Tree::internal(std::move(f.children)), i);
                break;
            }
            default:
                throw ParseError(std::string("unexpected character '") + text[i] + "'", i);
        }
    }
    if (!done) throw ParseError("unterminated tree", text.size());
    return result;
}

inline bool is_d_ary(const Tree& t, unsigned d) noexcept {
    return t.is_leaf() || t.max_outdegree() <= d;
}

inline bool is_strictly_d_ary(const Tree& t, unsigned d) noexcept {
    return t.is_leaf() || (t.max_outdegree() == d && t.min_outdegree() == d);
}

// The r-ary caterpillar with k leaves. k = 1 gives the single leaf.
inline Tree make_caterpillar(unsigned r, std::uint64_t k) {
    if (r < 2) throw DomainError("caterpillar arity r must be >= 2");
    if (k == 0) throw DomainError("caterpillar needs k >= 1 leaves");
    if (k == 1) return Tree::leaf();
    if (k < r || (k - 1) % (r - 1) != 0)
        throw DomainError("caterpillar F^" + std::to_string(r) + "_" + std::to_string(k) +
                          " requires k >= r and k = 1 (mod r-1)");
    Tree t = Tree::internal(std::vector<Tree>(r, Tree::leaf()));
    for (std::uint64_t n = r; n < k; n += r - 1) {
        std::vector<Tree> kids(r - 1, Tree::leaf());
        kids.push_back(t);
        t = Tree::internal(std::move(kids));
    }
    return t;
}

inline constexpr std::uint64_t kDefaultLeafCap = 10'000'000;

// The complete d-ary tree of height h (d^h leaves).
inline Tree make_complete(unsigned d, unsigned h, std::uint64_t leaf_cap = kDefaultLeafCap) {
    if (d < 2) throw DomainError("complete tree needs d >= 2");
    std::uint64_t leaves = 1;
    for (unsigned i = 0; i < h; ++i) {
        if (leaves > leaf_cap / d)
            throw BudgetError("complete tree CD^" + std::to_string(d) + "_" + std::to_string(h) +
                              " exceeds leaf cap " + std::to_string(leaf_cap));
        leaves *= d;
    }
    Tree t = Tree::leaf();
    for (unsigned i = 0; i < h; ++i) t = Tree::internal(std::vector<Tree>(d, t));
    return t;
}

// The even binary tree with n leaves: every vertex splits its leaves
// ceil(m/2) / floor(m/2).
inline Tree make_even_binary(std::uint64_t n) {
    if (n == 0) throw DomainError("even binary tree needs n >= 1 leaves");
    if (n == 1) return Tree::leaf();
    // At most two distinct sizes per depth, so a tiny cache keeps this linear in depth.
    std::vector<std::pair<std::uint64_t, Tree>> cache;
    auto build = [&](auto&& self, std::uint64_t m) -> Tree {
        if (m == 1) return Tree::leaf();
        for (const auto& [size, t] : cache)
            if (size == m) return t;
        Tree t = Tree::internal({self(self, (m + 1) / 2), self(self, m / 2)});
        cache.emplace_back(m, t);
        return t;
    };
    return build(build, n);
}

}  // namespace leafdens
