#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace leafdens {

using BigCount = mpz_class;
using ExactRatio = mpq_class;

inline BigCount binomial(unsigned long n, unsigned long k) {
    BigCount r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigCount binomial(const BigCount& n, unsigned long k) {
    if (n < 0) return 0;
    BigCount r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline BigCount factorial(unsigned long n) {
    BigCount r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigCount ipow(const BigCount& base, unsigned long e) {
    BigCount r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline ExactRatio ipow(const ExactRatio& base, unsigned long e) {
    ExactRatio r(ipow(BigCount(base.get_num()), e), ipow(BigCount(base.get_den()), e));
    r.canonicalize();
    return r;
}

inline std::string to_string(const BigCount& v) { return v.get_str(); }

// "num/den" in lowest terms; integers print without a denominator.
inline std::string to_string(const ExactRatio& v) { return v.get_str(); }

// Fixed-point rendering with `digits` places after the point, correctly rounded
// (half away from zero). Exact: no floating point involved.
inline std::string to_decimal(const ExactRatio& v, unsigned digits = 12) {
    BigCount scale = ipow(BigCount(10), digits);
    BigCount num = v.get_num() * scale;
    BigCount den = v.get_den();
    bool negative = num < 0;
    if (negative) num = -num;
    BigCount q = (2 * num + den) / (2 * den);
    std::string s = q.get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - digits, ".");
    if (negative && q != 0) s.insert(0, "-");
    return s;
}

inline double to_double(const ExactRatio& v) { return v.get_d(); }

}  // namespace leafdens
