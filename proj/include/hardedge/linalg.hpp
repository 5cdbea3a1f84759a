#pragma once

// Minimal dense matrix plus LU log-determinants, generic over the scalar so
// the determinant path can run at extended precision.

#include <vector>

#include "hardedge/numeric.hpp"

namespace hardedge {

template <class T>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// log|det| and sign of a real matrix, by partial-pivot LU (destructive).
template <class R>
std::pair<R, int> lu_logdet(Mat<R>& m) {
    const std::size_t n = m.rows;
    R logdet(0);
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        R best = num::rabs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            R v = num::rabs(m(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == R(0)) return {R(-std::numeric_limits<double>::infinity()), 0};
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        R d = m(k, k);
        logdet += num::rlog(num::rabs(d));
        if (d < R(0)) sign = -sign;
        for (std::size_t i = k + 1; i < n; ++i) {
            R f = m(i, k) / d;
            m(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return {logdet, sign};
}

// Smallest |U_kk| seen during the elimination of a real matrix; cheap proxy
// for how deep the spectrum of I - A reaches. Destructive.
template <class R>
std::pair<R, R> lu_logdet_with_min_diag(Mat<R>& m) {
    const std::size_t n = m.rows;
    R logdet(0);
    R min_diag = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        R best = num::rabs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            R v = num::rabs(m(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
        R d = m(k, k);
        R ad = num::rabs(d);
        if (ad == R(0)) return {R(-std::numeric_limits<double>::infinity()), R(0)};
        if (ad < min_diag) min_diag = ad;
        logdet += num::rlog(ad);
        for (std::size_t i = k + 1; i < n; ++i) {
            R f = m(i, k) / d;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return {logdet, min_diag};
}

// Complex determinant as exp(sum log diag); value returned directly since the
// contour-operator determinants are O(1). Destructive.
template <class R>
num::Cplx<R> lu_det(Mat<num::Cplx<R>>& m) {
    using C = num::Cplx<R>;
    const std::size_t n = m.rows;
    C logdet{R(0), R(0)};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        R best = num::norm2(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            R v = num::norm2(m(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == R(0)) return C{R(0), R(0)};
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(piv, j));
            }
        C d = m(k, k);
        logdet += num::clog(d);
        if (piv != k) logdet += C{R(0), num::pi<R>()};  // row swap flips sign
        for (std::size_t i = k + 1; i < n; ++i) {
            C f = m(i, k) / d;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return num::cexp(logdet);
}

} // namespace hardedge
