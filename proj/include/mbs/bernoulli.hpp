#pragma once

#include <vector>

#include "mbs/rational.hpp"

namespace mbs {

// Bernoulli numbers B_0..B_n with the convention B_1 = -1/2, i.e. the Taylor
// coefficients of t/(e^t - 1) = sum_n B_n t^n / n!.  Computed by the standard
// recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline const std::vector<Rational>& bernoulli_numbers(unsigned n) {
    static std::vector<Rational> cache{Rational(1)};
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        Rational s(0);
        for (unsigned j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * cache[j];
        cache.push_back(-s / Rational(binomial(m + 1, m)));
    }
    return cache;
}

inline Rational bernoulli_number(unsigned n) { return bernoulli_numbers(n)[n]; }

// Bernoulli polynomial value B_n(x) = sum_k C(n, k) B_k x^{n-k}.
inline Rational bernoulli_poly(unsigned n, const Rational& x) {
    const auto& B = bernoulli_numbers(n);
    Rational acc(0);
    Rational xp(1);  // x^{n-k}, built from the constant term up
    for (int k = static_cast<int>(n); k >= 0; --k) {
        acc += Rational(binomial(n, static_cast<unsigned long>(k))) * B[static_cast<size_t>(k)] * xp;
        xp *= x;
    }
    return acc;
}

// Coefficients t^0..t^n of the Todd-type factor t/(e^t - 1), i.e. B_k / k!.
inline std::vector<Rational> todd_coeffs(unsigned n) {
    const auto& B = bernoulli_numbers(n);
    std::vector<Rational> c(n + 1);
    Rational f(1);
    for (unsigned k = 0; k <= n; ++k) {
        if (k) f *= Rational(k);
        c[k] = B[k] / f;
    }
    return c;
}

// Coefficients t^0..t^n of e^{u t}, i.e. u^k / k!.
inline std::vector<Rational> exp_coeffs(const Rational& u, unsigned n) {
    std::vector<Rational> c(n + 1);
    c[0] = 1;
    for (unsigned k = 1; k <= n; ++k) c[k] = c[k - 1] * u / Rational(k);
    return c;
}

// Coefficients t^0..t^n of e^{u t} * t/(e^t - 1); this is the univariate
// numerator factor attached to each basis direction in the residue engine.
inline std::vector<Rational> exp_todd_coeffs(const Rational& u, unsigned n) {
    auto e = exp_coeffs(u, n);
    auto t = todd_coeffs(n);
    std::vector<Rational> c(n + 1);
    for (unsigned k = 0; k <= n; ++k)
        for (unsigned a = 0; a <= k; ++a) c[k] += e[a] * t[k - a];
    return c;
}

}  // namespace mbs
