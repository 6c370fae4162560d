#pragma once

#include <optional>
#include <vector>

#include "mbs/rational.hpp"

namespace mbs {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row-major

inline Rational dot(const Vec& a, const Vec& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Row-reduces in place; returns the rank.  Column pivot order is left to
// right, so after the call rows [0, rank) are in echelon form.
inline size_t row_reduce(Mat& m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size(), rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        Rational inv = 1 / m[rank][c];
        for (size_t j = c; j < cols; ++j) m[rank][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline size_t rank_of(Mat m) { return row_reduce(m); }

// Determinant of a square matrix.
inline Rational determinant(Mat m) {
    size_t n = m.size();
    Rational det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational inv = 1 / m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

// Solves A x = b for square invertible A; nullopt if singular/inconsistent.
inline std::optional<Vec> solve_square(Mat a, Vec b) {
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    // Eliminate with pivots restricted to the coefficient columns, so the
    // augmented column can never be promoted to a pivot.
    size_t rank = 0;
    for (size_t c = 0; c < n && rank < n; ++c) {
        size_t p = rank;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[rank]);
        Rational inv = 1 / a[rank][c];
        for (size_t j = c; j <= n; ++j) a[rank][j] *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == rank || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (size_t j = c; j <= n; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    if (rank < n) return std::nullopt;  // singular (or inconsistent)
    Vec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

// Coordinates of x in the given (independent, possibly non-square) basis;
// nullopt when x is outside the span.
inline std::optional<Vec> coordinates_in_basis(const Mat& basis, const Vec& x) {
    size_t k = basis.size();
    // Solve via the Gram system: (B B^T) c = B x.
    Mat gram(k, Vec(k));
    Vec rhs(k);
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
        rhs[i] = dot(basis[i], x);
    }
    auto c = solve_square(gram, rhs);
    if (!c) return std::nullopt;
    // Verify x is actually in the span (Gram solve alone only gives the
    // orthogonal projection).
    Vec recon(x.size(), Rational(0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < x.size(); ++j) recon[j] += (*c)[i] * basis[i][j];
    if (recon != x) return std::nullopt;
    return c;
}

// Dual functionals d_i in span{a_1..a_k} with <d_i, a_j> = delta_ij.
inline Mat dual_functionals(const Mat& a) {
    size_t k = a.size(), n = a[0].size();
    Mat gram(k, Vec(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) gram[i][j] = dot(a[i], a[j]);
    Mat d(k, Vec(n, Rational(0)));
    for (size_t i = 0; i < k; ++i) {
        Vec e(k, Rational(0));
        e[i] = 1;
        auto c = solve_square(gram, e);
        if (!c) throw std::logic_error("dual_functionals: dependent vectors");
        for (size_t j = 0; j < k; ++j)
            for (size_t t = 0; t < n; ++t) d[i][t] += (*c)[j] * a[j][t];
    }
    return d;
}

// One nonzero kernel vector of the row system (rows x = 0), or nullopt if the
// kernel is trivial.
inline std::optional<Vec> kernel_vector(Mat rows) {
    if (rows.empty()) return std::nullopt;
    size_t cols = rows[0].size();
    size_t rank = row_reduce(rows);
    if (rank >= cols) return std::nullopt;
    // Identify pivot columns.
    std::vector<int> pivot_col(rank, -1);
    std::vector<bool> is_pivot(cols, false);
    for (size_t i = 0; i < rank; ++i) {
        for (size_t c = 0; c < cols; ++c)
            if (rows[i][c] != 0) {
                pivot_col[i] = static_cast<int>(c);
                is_pivot[c] = true;
                break;
            }
    }
    size_t free_col = 0;
    while (free_col < cols && is_pivot[free_col]) ++free_col;
    Vec x(cols, Rational(0));
    x[free_col] = 1;
    for (size_t i = 0; i < rank; ++i) {
        if (pivot_col[i] < 0) continue;
        x[static_cast<size_t>(pivot_col[i])] = -rows[i][free_col];
    }
    return x;
}

}  // namespace mbs
