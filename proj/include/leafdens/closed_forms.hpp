#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"
#include "numeric.hpp"

// Exact evaluation of the closed-form copy counts and limiting densities of
// caterpillars in complete trees. Everything here is rational arithmetic.
namespace leafdens {

// A limiting density together with the parameters it was evaluated at.
struct LimitValue {
    unsigned d = 0;
    unsigned k = 0;
    unsigned r = 0;
    ExactRatio value;
};

namespace detail {

inline void check_caterpillar_params(unsigned r, unsigned k, unsigned d) {
    if (r < 2) throw DomainError("r must be >= 2");
    if (r > d) throw DomainError("r must not exceed d (r = " + std::to_string(r) +
                                 ", d = " + std::to_string(d) + ")");
    if (k < r || (k - 1) % (r - 1) != 0)
        throw DomainError("F^" + std::to_string(r) + "_" + std::to_string(k) +
                          " needs k >= r and k = 1 (mod r-1)");
}

inline BigCount require_integer(const ExactRatio& v, const char* what) {
    if (v.get_den() != 1) throw std::logic_error(std::string(what) + " is not an integer: " + v.get_str());
    return v.get_num();
}

inline ExactRatio ratio(const BigCount& num, const BigCount& den) {
    ExactRatio q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace detail

// c(CD^r_1, CD^d_h) = C(d,r) / (d^r - d) * (d^{rh} - d^h).
inline BigCount star_copies(unsigned r, unsigned d, unsigned h) {
    if (r < 2) throw DomainError("star needs r >= 2");
    if (r > d) throw DomainError("star with r = " + std::to_string(r) + " leaves cannot occur in a " +
                                 std::to_string(d) + "-ary tree");
    if (h < 1) throw DomainError("star count needs h >= 1");
    const BigCount D(d);
    ExactRatio v = detail::ratio(binomial(d, r), ipow(D, r) - D) *
                   ExactRatio(ipow(D, static_cast<unsigned long>(r) * h) - ipow(D, h));
    return detail::require_integer(v, "star count");
}

// c(F^r_k, CD^d_h) via the product formula
//   C(d,r)^{(k-1)/(r-1)} (r/d)^{(k-r)/(r-1)} d^{h-1}
//     prod_{i=1}^{(k-1)/(r-1)} (d^{h(r-1)} - d^{(i-1)(r-1)}) / (d^{i(r-1)} - 1).
inline BigCount caterpillar_copies_complete(unsigned r, unsigned k, unsigned d, unsigned h) {
    detail::check_caterpillar_params(r, k, d);
    if (h < 1) throw DomainError("caterpillar count in CD^d_h needs h >= 1");
    const BigCount D(d);
    const unsigned steps = (k - 1) / (r - 1);
    const unsigned s = r - 1;

    ExactRatio v = ExactRatio(ipow(binomial(d, r), steps));
    v *= ipow(detail::ratio(BigCount(r), D), steps - 1);
    v *= ExactRatio(ipow(D, h - 1));
    const BigCount top = ipow(D, static_cast<unsigned long>(h) * s);
    for (unsigned i = 1; i <= steps; ++i)
        v *= detail::ratio(top - ipow(D, static_cast<unsigned long>(i - 1) * s),
                           ipow(D, static_cast<unsigned long>(i) * s) - 1);
    return detail::require_integer(v, "caterpillar count");
}

// lim_{h->inf} gamma(F^r_k, CD^d_h)
//   = (k!/d) C(d,r)^{(k-1)/(r-1)} (r/d)^{(k-r)/(r-1)} prod_{j=1}^{(k-1)/(r-1)} (d^{(r-1)j} - 1)^{-1}.
inline ExactRatio limit_density_complete(unsigned r, unsigned k, unsigned d) {
    detail::check_caterpillar_params(r, k, d);
    const BigCount D(d);
    const unsigned steps = (k - 1) / (r - 1);
    ExactRatio v = detail::ratio(factorial(k), D);
    v *= ExactRatio(ipow(binomial(d, r), steps));
    v *= ipow(detail::ratio(BigCount(r), D), steps - 1);
    for (unsigned j = 1; j <= steps; ++j)
        v /= ExactRatio(ipow(D, static_cast<unsigned long>(r - 1) * j) - 1);
    v.canonicalize();
    return v;
}

// b_k = (1/2) (d-1)^{k-1} prod_{j=1}^{k-1} (d^j - 1)^{-1}.
inline ExactRatio caterpillar_constant(unsigned d, unsigned k) {
    if (d < 2) throw DomainError("d must be >= 2");
    if (k < 1) throw DomainError("k must be >= 1");
    const BigCount D(d);
    ExactRatio v = detail::ratio(ipow(BigCount(D - 1), k - 1), BigCount(2));
    for (unsigned j = 1; j < k; ++j) v /= ExactRatio(ipow(D, j) - 1);
    v.canonicalize();
    return v;
}

// Minimum asymptotic density of F^2_k in d-ary trees:
//   (k!/2) (d-1)^{k-1} prod_{j=1}^{k-1} (d^j - 1)^{-1}.
inline ExactRatio liminf_density(unsigned d, unsigned k) {
    if (k < 2) throw DomainError("liminf density needs k >= 2");
    ExactRatio v = ExactRatio(factorial(k)) * caterpillar_constant(d, k);
    v.canonicalize();
    return v;
}

inline LimitValue liminf_limit(unsigned d, unsigned k) { return {d, k, 2, liminf_density(d, k)}; }

// b_k n^k - n^{k-1} / (k-1)!, a lower bound on c(F^2_k, T) for strictly d-ary T.
inline ExactRatio bk_lower_bound(unsigned d, unsigned k, std::uint64_t n) {
    if (k < 2) throw DomainError("lower bound needs k >= 2");
    const BigCount N(std::to_string(n));
    ExactRatio v = caterpillar_constant(d, k) * ExactRatio(ipow(N, k)) -
                   detail::ratio(ipow(N, k - 1), factorial(k - 1));
    v.canonicalize();
    return v;
}

// Leading term (n^k / 2) (d-1)^{k-1} prod_{j=1}^{k-1} (d^j - 1)^{-1} of the
// minimum copy count of F^2_k over n-leaf d-ary trees.
inline ExactRatio asymptotic_min_copies(unsigned d, unsigned k, std::uint64_t n) {
    if (k < 2) throw DomainError("asymptotic minimum needs k >= 2");
    ExactRatio v = caterpillar_constant(d, k) * ExactRatio(ipow(BigCount(std::to_string(n)), k));
    v.canonicalize();
    return v;
}

}  // namespace leafdens
