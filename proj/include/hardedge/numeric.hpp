#pragma once

// Scalar-generic numeric foundation shared by every module: a small complex
// type that works for double and boost::multiprecision backends, principal
// branch helpers, and the error taxonomy.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hardedge {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PoleError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct GeometryError : Error { using Error::Error; };
struct ToleranceError : Error { using Error::Error; };
struct ModeMismatch : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct PathError : Error { using Error::Error; };
struct BranchError : Error { using Error::Error; };
struct SignViolation : Error { using Error::Error; };
struct FitError : Error { using Error::Error; };
struct AdmissibilityError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Generic real helpers (ADL-friendly across double / multiprecision types)
// ---------------------------------------------------------------------------

namespace num {

using std::abs;
using std::atan2;
using std::cos;
using std::exp;
using std::expm1;
using std::floor;
using std::hypot;
using std::isfinite;
using std::log;
using std::log1p;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

// Unqualified-call forwarders: ordinary lookup sees the std overloads above,
// ADL finds the multiprecision ones.
template <class R> R rexp(const R& x) { return exp(x); }
template <class R> R rlog(const R& x) { return log(x); }
template <class R> R rsqrt(const R& x) { return sqrt(x); }
template <class R> R rabs(const R& x) { return abs(x); }
template <class R> R rfloor(const R& x) { return floor(x); }
template <class R> R rsin(const R& x) { return sin(x); }
template <class R> R rcos(const R& x) { return cos(x); }
template <class R> R ratan2(const R& y, const R& x) { return atan2(y, x); }
template <class R> R rpow(const R& x, const R& y) { return pow(x, y); }
template <class R> bool rfinite(const R& x) { return static_cast<bool>(isfinite(x)); }

template <class R>
R pi() {
    static const R value = atan2(R(0), R(-1));
    return value;
}

template <class R>
R eps() {
    return std::numeric_limits<R>::epsilon();
}

template <class R>
struct Cplx {
    R re{};
    R im{};

    Cplx() = default;
    Cplx(R r) : re(std::move(r)) {}
    Cplx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

    template <class S>
    explicit Cplx(const Cplx<S>& o) : re(R(o.re)), im(R(o.im)) {}

    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator-=(const Cplx& o) { re -= o.re; im -= o.im; return *this; }
};

template <class R> Cplx<R> operator+(const Cplx<R>& a, const Cplx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R> Cplx<R> operator-(const Cplx<R>& a, const Cplx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R> Cplx<R> operator-(const Cplx<R>& a) { return {-a.re, -a.im}; }

template <class R>
Cplx<R> operator*(const Cplx<R>& a, const Cplx<R>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// Scaled (Smith) division: robust against intermediate over/underflow.
template <class R>
Cplx<R> operator/(const Cplx<R>& a, const Cplx<R>& b) {
    if (abs(b.re) >= abs(b.im)) {
        R q = b.im / b.re;
        R d = b.re + b.im * q;
        return {(a.re + a.im * q) / d, (a.im - a.re * q) / d};
    }
    R q = b.re / b.im;
    R d = b.re * q + b.im;
    return {(a.re * q + a.im) / d, (a.im * q - a.re) / d};
}

template <class R> Cplx<R> operator+(const Cplx<R>& a, const R& b) { return {a.re + b, a.im}; }
template <class R> Cplx<R> operator+(const R& b, const Cplx<R>& a) { return {a.re + b, a.im}; }
template <class R> Cplx<R> operator-(const Cplx<R>& a, const R& b) { return {a.re - b, a.im}; }
template <class R> Cplx<R> operator-(const R& b, const Cplx<R>& a) { return {b - a.re, -a.im}; }
template <class R> Cplx<R> operator*(const Cplx<R>& a, const R& b) { return {a.re * b, a.im * b}; }
template <class R> Cplx<R> operator*(const R& b, const Cplx<R>& a) { return {a.re * b, a.im * b}; }
template <class R> Cplx<R> operator/(const Cplx<R>& a, const R& b) { return {a.re / b, a.im / b}; }
template <class R> Cplx<R> operator/(const R& b, const Cplx<R>& a) { return Cplx<R>(b) / a; }

template <class R> Cplx<R> conj(const Cplx<R>& a) { return {a.re, -a.im}; }
template <class R> R norm2(const Cplx<R>& a) { return a.re * a.re + a.im * a.im; }
template <class R> R cabs(const Cplx<R>& a) { return hypot(a.re, a.im); }
template <class R> R carg(const Cplx<R>& a) { return atan2(a.im, a.re); }

template <class R>
Cplx<R> cexp(const Cplx<R>& a) {
    R m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
}

// Principal logarithm, cut on the negative real axis.
template <class R>
Cplx<R> clog(const Cplx<R>& a) {
    return {log(cabs(a)), carg(a)};
}

// Principal square root.
template <class R>
Cplx<R> csqrt(const Cplx<R>& a) {
    R m = cabs(a);
    if (m == R(0)) return {R(0), R(0)};
    R t = sqrt((m + abs(a.re)) / R(2));
    if (a.re >= R(0)) {
        return {t, a.im / (R(2) * t)};
    }
    R s = a.im >= R(0) ? R(1) : R(-1);
    return {abs(a.im) / (R(2) * t), s * t};
}

template <class R>
Cplx<R> cpow(const Cplx<R>& a, const Cplx<R>& b) {
    return cexp(b * clog(a));
}

template <class R>
Cplx<R> cpow(const Cplx<R>& a, const R& b) {
    return cexp(clog(a) * b);
}

// exp(-z*t) for real t, the workhorse of every transform evaluation.
template <class R>
Cplx<R> cexp_scaled(const Cplx<R>& z, const R& t) {
    R m = exp(z.re * t);
    R p = z.im * t;
    return {m * cos(p), m * sin(p)};
}

template <class R>
bool cfinite(const Cplx<R>& a) {
    return isfinite(a.re) && isfinite(a.im);
}

template <class R>
Cplx<R> ci() { return {R(0), R(1)}; }

} // namespace num

using num::Cplx;
using Cd = num::Cplx<double>;

// ---------------------------------------------------------------------------
// Thread cap + simple parallel map (contract: batch-parallel, no shared state)
// ---------------------------------------------------------------------------

inline unsigned thread_budget() {
    if (const char* env = std::getenv("HARDEDGE_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1u : hc;
}

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned max_threads = 0) {
    unsigned nt = max_threads ? max_threads : thread_budget();
    if (nt <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    nt = static_cast<unsigned>(std::min<std::size_t>(nt, n));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nt) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace hardedge
