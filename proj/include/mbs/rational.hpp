#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbs {

using Rational = mpq_class;
using Integer = mpz_class;

// Largest integer <= q.
inline Integer floor_int(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

// Fractional part {q} = q - floor(q), always in [0, 1).
inline Rational frac(const Rational& q) {
    Rational r = q - Rational(floor_int(q));
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument on
// malformed input or zero denominator.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' ||
                  ((c == '-' || c == '+') && (i == 0 || s[i - 1] == '/'));
        if (!ok) throw std::invalid_argument("malformed rational literal: " + s);
    }
    try {
        Rational q(s[0] == '+' ? s.substr(1) : s);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

// Canonical "p/q" (or "p" when the denominator is 1), lowest terms,
// denominator positive.
inline std::string format_rational(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

inline std::string format_vector(const std::vector<Rational>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_rational(v[i]);
    }
    out += "]";
    return out;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// n! as an exact integer.
inline Integer factorial(unsigned n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// Binomial coefficient C(n, k) for n >= 0.
inline Integer binomial(unsigned long n, unsigned long k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

// Exact q^n for integer n (negative n inverts; q must be nonzero then).
inline Rational pow_rational(const Rational& q, long n) {
    if (n == 0) return Rational(1);
    bool inv = n < 0;
    unsigned long e = inv ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    r.canonicalize();
    if (inv) {
        if (r == 0) throw std::domain_error("pow_rational: zero base with negative exponent");
        r = 1 / r;
    }
    return r;
}

}  // namespace mbs
