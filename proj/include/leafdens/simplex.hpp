#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "errors.hpp"
#include "numeric.hpp"

// The rational function
//   F_{d,k}(x) = sum_{i<j} (x_i x_j^{k-1} + x_j x_i^{k-1}) / (1 - sum_i x_i^k)
// on the probability simplex: exact evaluation, bound sampling, a
// derivative-free minimizer, the boundary path towards the supremum 1/k, and
// Muirhead's inequality.
namespace leafdens {

// 113-bit mantissa, used by the optimizer.
using Real = boost::multiprecision::cpp_bin_float_quad;

namespace detail {

template <class S>
S pow_k(const S& x, unsigned k) {
    S r = 1;
    for (unsigned i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace detail

template <class Scalar>
class SimplexPoint {
public:
    explicit SimplexPoint(std::vector<Scalar> coords) : x_(std::move(coords)) {
        if (x_.size() < 2) throw DomainError("simplex point needs at least 2 coordinates");
        Scalar sum = 0;
        for (const auto& v : x_) {
            if (v < 0) throw DomainError("simplex coordinates must be nonnegative");
            sum += v;
        }
        if constexpr (std::is_same_v<Scalar, ExactRatio>) {
            if (sum != 1) throw DomainError("simplex coordinates must sum to 1, got " + sum.get_str());
        } else {
            using std::abs;
            if (abs(sum - 1) > Scalar(1e-14)) throw DomainError("simplex coordinates must sum to 1");
        }
    }

    std::size_t dim() const noexcept { return x_.size(); }
    const std::vector<Scalar>& coords() const noexcept { return x_; }
    const Scalar& operator[](std::size_t i) const { return x_.at(i); }

    bool interior() const {
        return std::all_of(x_.begin(), x_.end(), [](const Scalar& v) { return v > 0; });
    }

    static SimplexPoint uniform(std::size_t d) {
        if constexpr (std::is_same_v<Scalar, ExactRatio>) {
            return SimplexPoint(std::vector<Scalar>(d, ExactRatio(1, d)));
        } else {
            // Last coordinate absorbs rounding so the sum is as close to 1 as possible.
            std::vector<Scalar> x(d, Scalar(1) / Scalar(d));
            Scalar rest = 1;
            for (std::size_t i = 0; i + 1 < d; ++i) rest -= x[i];
            x.back() = rest;
            return SimplexPoint(std::move(x));
        }
    }

private:
    std::vector<Scalar> x_;
};

using RationalPoint = SimplexPoint<ExactRatio>;
using RealPoint = SimplexPoint<Real>;

// Numerator and denominator of F_{d,k} at x.
template <class Scalar>
std::pair<Scalar, Scalar> F_parts(unsigned k, const std::vector<Scalar>& x) {
    const std::size_t d = x.size();
    std::vector<Scalar> pk1(d), pk(d);
    for (std::size_t i = 0; i < d; ++i) {
        pk1[i] = detail::pow_k(x[i], k - 1);
        pk[i] = pk1[i] * x[i];
    }
    Scalar num = 0, den = 1;
    for (std::size_t i = 0; i < d; ++i) {
        den -= pk[i];
        for (std::size_t j = i + 1; j < d; ++j) num += x[i] * pk1[j] + x[j] * pk1[i];
    }
    return {num, den};
}

template <class Scalar>
Scalar eval_F(unsigned d, unsigned k, const SimplexPoint<Scalar>& p) {
    if (p.dim() != d)
        throw DomainError("point has " + std::to_string(p.dim()) + " coordinates, expected d = " +
                          std::to_string(d));
    if (k < 2) throw DomainError("F_{d,k} needs k >= 2");
    for (const auto& v : p.coords())
        if (v == 1) throw SingularityError("F_{d,k} is singular at a vertex of the simplex");
    auto [num, den] = F_parts(k, p.coords());
    if (den <= 0) throw SingularityError("F_{d,k} denominator vanishes");
    Scalar v = num / den;
    if constexpr (std::is_same_v<Scalar, ExactRatio>) v.canonicalize();
    return v;
}

// (d-1) / (d^{k-1} - 1), the value at the uniform point.
inline ExactRatio F_uniform_value(unsigned d, unsigned k) {
    ExactRatio v(BigCount(d - 1), ipow(BigCount(d), k - 1) - 1);
    v.canonicalize();
    return v;
}

// Random point with all-positive rational coordinates: integer weights in
// [1, max_weight], normalized.
template <class Rng>
RationalPoint random_rational_point(unsigned d, Rng& rng, std::uint64_t max_weight = 1'000'000) {
    std::vector<BigCount> w(d);
    BigCount total = 0;
    for (auto& wi : w) {
        wi = BigCount(std::to_string(rng() % max_weight + 1));
        total += wi;
    }
    std::vector<ExactRatio> x;
    x.reserve(d);
    for (const auto& wi : w) {
        ExactRatio q(wi, total);
        q.canonicalize();
        x.push_back(q);
    }
    return RationalPoint(std::move(x));
}

// F at (0, ..., 0, eps, 1 - eps) for each eps, exactly.
inline std::vector<ExactRatio> sup_boundary_scan(unsigned d, unsigned k, const std::vector<ExactRatio>& eps_schedule) {
    if (d < 2) throw DomainError("d must be >= 2");
    if (k < 3) throw DomainError("boundary scan needs k >= 3");
    std::vector<ExactRatio> out;
    out.reserve(eps_schedule.size());
    for (const auto& eps : eps_schedule) {
        if (eps <= 0 || eps > ExactRatio(1, 2))
            throw DomainError("boundary scan needs eps in (0, 1/2], got " + eps.get_str());
        std::vector<ExactRatio> x(d, 0);
        x[d - 2] = eps;
        x[d - 1] = 1 - eps;
        out.push_back(eval_F(d, k, RationalPoint(std::move(x))));
    }
    return out;
}

// eps = 2^-1, ..., 2^-t.
inline std::vector<ExactRatio> dyadic_schedule(unsigned t_max) {
    std::vector<ExactRatio> eps;
    for (unsigned t = 1; t <= t_max; ++t) eps.emplace_back(1, ipow(BigCount(2), t));
    return eps;
}

// Every ordered tuple of d nonnegative integers summing to k with no entry
// equal to k. With `reduced`, permutations of (k-1, 1, 0, ..., 0) are dropped
// as well.
inline std::vector<std::vector<unsigned>> exponent_tuples(unsigned d, unsigned k, bool reduced = false) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(d, 0);
    auto rec = [&](auto&& self, unsigned pos, unsigned rem) -> void {
        if (pos + 1 == d) {
            cur[pos] = rem;
            if (std::find(cur.begin(), cur.end(), k) != cur.end()) return;
            if (reduced) {
                auto s = cur;
                std::sort(s.rbegin(), s.rend());
                if (s[0] == k - 1 && s[1] == 1) return;
            }
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v <= rem; ++v) {
            cur[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    rec(rec, 0, k);
    return out;
}

// Nonincreasing representatives of the tuples above.
inline std::vector<std::vector<unsigned>> sorted_exponent_tuples(unsigned d, unsigned k, bool reduced = false) {
    std::vector<std::vector<unsigned>> out;
    for (auto t : exponent_tuples(d, k, reduced))
        if (std::is_sorted(t.rbegin(), t.rend())) out.push_back(std::move(t));
    return out;
}

inline BigCount multinomial(unsigned k, const std::vector<unsigned>& parts) {
    BigCount r = factorial(k);
    for (auto p : parts) r /= factorial(p);
    return r;
}

// Both sides of
//   1 - sum x_i^k = sum_{V*} multinomial(k; i) prod x_j^{i_j} + k sum_{i<j} (x_i x_j^{k-1} + x_i^{k-1} x_j).
inline std::pair<ExactRatio, ExactRatio> multinomial_decomposition(unsigned k, const RationalPoint& p) {
    if (k < 3) throw DomainError("multinomial decomposition needs k >= 3");
    const auto& x = p.coords();
    const unsigned d = static_cast<unsigned>(x.size());
    ExactRatio lhs = 1;
    for (const auto& v : x) lhs -= detail::pow_k(v, k);
    ExactRatio rhs = 0;
    for (const auto& t : exponent_tuples(d, k, true)) {
        ExactRatio term(multinomial(k, t));
        for (unsigned j = 0; j < d; ++j) term *= detail::pow_k(x[j], t[j]);
        rhs += term;
    }
    auto [num, den] = F_parts(k, x);
    rhs += ExactRatio(k) * num;
    lhs.canonicalize();
    rhs.canonicalize();
    return {lhs, rhs};
}

// Exponent vectors a, b (each sorted nonincreasing) with a majorizing b.
struct MajorizationPair {
    std::vector<unsigned> a;
    std::vector<unsigned> b;

    MajorizationPair(std::vector<unsigned> a_, std::vector<unsigned> b_) : a(std::move(a_)), b(std::move(b_)) {
        if (a.size() != b.size()) throw DomainError("majorization vectors differ in length");
        if (!std::is_sorted(a.rbegin(), a.rend()) || !std::is_sorted(b.rbegin(), b.rend()))
            throw DomainError("majorization vectors must be sorted nonincreasing");
        std::uint64_t sa = 0, sb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            sa += a[i];
            sb += b[i];
            if (sa < sb) throw DomainError("first vector does not majorize the second (prefix " +
                                           std::to_string(i + 1) + ")");
        }
        if (sa != sb) throw DomainError("majorization vectors have different sums");
    }
};

// sum over all permutations pi of prod_i x_{pi(i)}^{e_i}.
template <class Scalar>
Scalar symmetric_sum(const std::vector<unsigned>& e, const std::vector<Scalar>& x) {
    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), 0);
    Scalar total = 0;
    do {
        Scalar term = 1;
        for (std::size_t i = 0; i < e.size(); ++i) term *= detail::pow_k(x[perm[i]], e[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Whether the a-symmetric sum dominates the b-symmetric sum at x.
template <class Scalar>
bool muirhead_check(const MajorizationPair& pair, const std::vector<Scalar>& x) {
    if (x.size() != pair.a.size()) throw DomainError("point dimension does not match exponent vectors");
    for (const auto& v : x)
        if (!(v > 0)) throw DomainError("Muirhead's inequality needs positive variables");
    return symmetric_sum(pair.a, x) >= symmetric_sum(pair.b, x);
}

// ---------------------------------------------------------------------------
// Minimization of F_{d,k} over the open simplex.

struct MinimizeOptions {
    std::uint64_t seed = 1;
    unsigned starts = 8;
    std::uint64_t max_evaluations = 100'000;
    double fd_step = 1e-5;
};

struct MinimizeResult {
    std::vector<Real> point;
    Real value;
    // Largest |central finite difference| of F along e_i - e_j at the result.
    Real stationarity_residual;
    std::uint64_t evaluations = 0;
    bool converged = false;
};

namespace detail {

inline Real F_real(unsigned k, const std::vector<Real>& x) {
    auto [num, den] = F_parts(k, x);
    return num / den;
}

// Largest |dF/dv| over v = e_i - e_j, by central differences.
inline Real tangent_residual(unsigned k, const std::vector<Real>& x, const Real& step) {
    Real worst = 0;
    const std::size_t d = x.size();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            Real h = step;
            h = std::min({h, x[j] / 2, x[i] / 2});
            auto plus = x, minus = x;
            plus[i] += h, plus[j] -= h;
            minus[i] -= h, minus[j] += h;
            Real g = (F_real(k, plus) - F_real(k, minus)) / (2 * h);
            worst = std::max(worst, boost::multiprecision::abs(g));
        }
    return worst;
}

// Plain Nelder-Mead on R^m.
template <class Fn>
std::pair<std::vector<Real>, Real> nelder_mead(Fn&& f, std::vector<Real> start, Real scale,
                                               std::uint64_t budget, std::uint64_t& used, bool& converged) {
    const std::size_t m = start.size();
    std::vector<std::vector<Real>> simplex(m + 1, start);
    for (std::size_t i = 0; i < m; ++i) simplex[i + 1][i] += scale;
    std::vector<Real> val(m + 1);
    auto eval = [&](const std::vector<Real>& y) {
        ++used;
        return f(y);
    };
    for (std::size_t i = 0; i <= m; ++i) val[i] = eval(simplex[i]);
    const Real inf = std::numeric_limits<Real>::infinity();
    converged = false;
    std::uint64_t spent = 0;
    while (spent < budget) {
        std::vector<std::size_t> order(m + 1);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return val[a] < val[b]; });
        {
            auto s2 = simplex;
            auto v2 = val;
            for (std::size_t i = 0; i <= m; ++i) {
                simplex[i] = s2[order[i]];
                val[i] = v2[order[i]];
            }
        }
        Real diameter = 0;
        for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t c = 0; c < m; ++c)
                diameter = std::max(diameter, boost::multiprecision::abs(simplex[i][c] - simplex[0][c]));
        if (val[m] < inf && diameter < Real(1e-15) && val[m] - val[0] <= Real(1e-30)) {
            converged = true;
            break;
        }
        std::vector<Real> centroid(m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t c = 0; c < m; ++c) centroid[c] += simplex[i][c] / m;
        auto along = [&](const Real& t) {
            std::vector<Real> y(m);
            for (std::size_t c = 0; c < m; ++c) y[c] = centroid[c] + t * (simplex[m][c] - centroid[c]);
            return y;
        };
        auto reflected = along(-1);
        Real fr = eval(reflected);
        ++spent;
        if (fr < val[0]) {
            auto expanded = along(-2);
            Real fe = eval(expanded);
            ++spent;
            if (fe < fr) {
                simplex[m] = expanded, val[m] = fe;
            } else {
                simplex[m] = reflected, val[m] = fr;
            }
        } else if (fr < val[m - 1]) {
            simplex[m] = reflected, val[m] = fr;
        } else {
            auto contracted = fr < val[m] ? along(Real(-0.5)) : along(Real(0.5));
            Real fc = eval(contracted);
            ++spent;
            if (fc < std::min(fr, val[m])) {
                simplex[m] = contracted, val[m] = fc;
            } else {
                for (std::size_t i = 1; i <= m; ++i) {
                    for (std::size_t c = 0; c < m; ++c) simplex[i][c] = simplex[0][c] + (simplex[i][c] - simplex[0][c]) / 2;
                    val[i] = eval(simplex[i]);
                    ++spent;
                }
            }
        }
    }
    std::size_t best = std::min_element(val.begin(), val.end()) - val.begin();
    return {simplex[best], val[best]};
}

}  // namespace detail

// Multi-start Nelder-Mead over the first d-1 coordinates (the last one is
// 1 minus their sum). A logarithmic barrier, driven to zero over successive
// stages, keeps the iterates away from the boundary where the supremum lives.
inline MinimizeResult minimize_F(unsigned d, unsigned k, const MinimizeOptions& opts = {}) {
    if (d < 2) throw DomainError("minimize_F needs d >= 2");
    if (k < 3) throw DomainError("minimize_F needs k >= 3");
    if (opts.starts == 0) throw DomainError("minimize_F needs at least one start");
    const std::size_t m = d - 1;
    const std::vector<Real> barrier_weights = {Real(1e-3), Real(1e-6), Real(1e-10), Real(0)};
    const Real inf = std::numeric_limits<Real>::infinity();

    auto to_point = [&](const std::vector<Real>& y) {
        std::vector<Real> x(y);
        Real last = 1;
        for (const auto& v : y) last -= v;
        x.push_back(last);
        return x;
    };

    std::mt19937_64 rng(opts.seed);
    const std::uint64_t per_stage = opts.max_evaluations / (opts.starts * barrier_weights.size());
    MinimizeResult best;
    best.value = inf;

    for (unsigned s = 0; s < opts.starts; ++s) {
        std::vector<Real> w(d);
        Real total = 0;
        for (auto& wi : w) {
            wi = Real(static_cast<double>((rng() >> 11) + 1) * 0x1p-53) + Real(0.05);
            total += wi;
        }
        std::vector<Real> y(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = w[i] / total;

        Real value = inf;
        bool converged = false;
        for (const auto& mu : barrier_weights) {
            auto objective = [&](const std::vector<Real>& yy) -> Real {
                auto x = to_point(yy);
                Real penalty = 0;
                for (const auto& v : x) {
                    if (!(v > 0) || !(v < 1)) return inf;
                    if (mu != 0) penalty -= mu * boost::multiprecision::log(v);
                }
                return detail::F_real(k, x) + penalty;
            };
            Real scale = Real(0.1) / Real(d);
            for (const auto& v : to_point(y)) scale = std::min(scale, v / 4);
            auto [yy, fv] = detail::nelder_mead(objective, y, scale, per_stage, best.evaluations, converged);
            y = yy;
            value = fv;
        }
        if (value < best.value) {
            best.value = value;
            best.point = to_point(y);
            best.converged = converged;
        }
    }
    best.stationarity_residual = detail::tangent_residual(k, best.point, Real(opts.fd_step));
    return best;
}

}  // namespace leafdens
