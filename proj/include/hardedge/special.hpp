#pragma once

// Scalar special functions: complex log-gamma (Lanczos for double, Spouge for
// wider precisions), Wright's generalized Bessel series, and Bessel J.

#include <array>
#include <cmath>
#include <vector>

#include "hardedge/numeric.hpp"

namespace hardedge {

namespace detail {

// Godfrey's 15-term Lanczos set, g = 607/128. Relative accuracy ~1e-15 on the
// right half plane.
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosC = {
    0.99999999999999709182,    57.156235665862923517,
    -59.597960355475491248,    14.136097974741747174,
    -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4,
    0.15808870322491248884e-3, -0.21026444172410488319e-3,
    0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// log sin(pi z), analytic continuation off the real axis that matches the
// principal value on (0,1). Safe for large |Im z|.
template <class R>
num::Cplx<R> log_sin_pi(const num::Cplx<R>& z) {
    using C = num::Cplx<R>;
    const R pi = num::pi<R>();
    if (z.im >= R(0)) {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})
        C e = num::cexp(C(R(-2) * pi * z.im, R(2) * pi * z.re));
        C one_minus(R(1) - e.re, -e.im);
        return C(-num::rlog(R(2)), pi / R(2)) + C(pi * z.im, -pi * z.re) +
               num::clog(one_minus);
    }
    C r = log_sin_pi(num::conj(z));
    return num::conj(r);
}

template <class R>
struct SpougeTable {
    R shift;               // a
    std::vector<R> coeff;  // coeff[0] = sqrt(2 pi), coeff[k] = c_k
    static const SpougeTable& get() {
        static const SpougeTable table = [] {
            SpougeTable t;
            const int digits = std::numeric_limits<R>::digits10;
            const int a = static_cast<int>(1.2530 * (digits + 6)) + 2;
            t.shift = R(a);
            t.coeff.resize(static_cast<std::size_t>(a));
            const R two_pi = R(2) * num::pi<R>();
            t.coeff[0] = num::rsqrt(two_pi);
            R fact(1);
            for (int k = 1; k < a; ++k) {
                if (k > 1) fact *= R(k - 1);
                R ak = R(a - k);
                R c = num::rexp((R(k) - R(0.5)) * num::rlog(ak) + ak) / fact;
                t.coeff[static_cast<std::size_t>(k)] = (k % 2 == 1) ? c : -c;
            }
            return t;
        }();
        return table;
    }
};

template <class R>
num::Cplx<R> log_gamma_right(const num::Cplx<R>& z) {
    using C = num::Cplx<R>;
    const auto& tab = SpougeTable<R>::get();
    // ln Gamma(z) = (z-1/2) ln(z-1+a) - (z-1+a) + ln( c0 + sum c_k/(z-1+k) )
    C base = z + (tab.shift - R(1));
    C acc(tab.coeff[0]);
    C zm1 = z - R(1);
    for (std::size_t k = 1; k < tab.coeff.size(); ++k) {
        acc += C(tab.coeff[k]) / (zm1 + R(static_cast<double>(k)));
    }
    return (z - R(0.5)) * num::clog(base) - base + num::clog(acc);
}

inline num::Cplx<double> log_gamma_right(const num::Cplx<double>& z) {
    using C = num::Cplx<double>;
    C t = z + (kLanczosG - 0.5);
    C acc(kLanczosC[0]);
    for (std::size_t k = 1; k < kLanczosC.size(); ++k) {
        acc += C(kLanczosC[k]) / (z + (static_cast<double>(k) - 1.0));
    }
    return (z - 0.5) * num::clog(t) - t +
           C(0.5 * std::log(2.0 * M_PI)) + num::clog(acc);
}

} // namespace detail

// Principal branch of ln Gamma. Throws PoleError within 1e-12 of a
// non-positive integer.
template <class R>
num::Cplx<R> log_gamma(const num::Cplx<R>& z) {
    using C = num::Cplx<R>;
    if (z.im == R(0) && z.re <= R(0)) {
        R nearest = num::rfloor(z.re + R(0.5));
        if (num::rabs(z.re - nearest) < R(1e-12)) {
            throw PoleError("log_gamma: argument at non-positive integer");
        }
    }
    if (z.re >= R(0.5)) return detail::log_gamma_right(z);
    // Reflection: ln Gamma(z) = ln pi - ln sin(pi z) - ln Gamma(1-z)
    const R pi = num::pi<R>();
    C one_minus = C(R(1)) - z;
    return C(num::rlog(pi)) - detail::log_sin_pi(z) -
           detail::log_gamma_right(one_minus);
}

inline Cd log_gamma(const Cd& z) { return log_gamma<double>(z); }

// 1/Gamma(x) on the real line; entire, zero at non-positive integers.
inline double rgamma(double x) {
    if (x > 0.5) {
        if (x > 171.0) return std::exp(-std::lgamma(x));
        return 1.0 / std::tgamma(x);
    }
    double n = std::round(x);
    if (x <= 0.0 && std::abs(x - n) < 1e-290) return 0.0;
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    double lg = std::lgamma(1.0 - x);
    double s = std::sin(M_PI * x);
    if (lg > 700.0) return s / M_PI * std::numeric_limits<double>::infinity() *
                           (s >= 0 ? 1.0 : -1.0);
    return s / M_PI * std::exp(lg);
}

// Wright's generalized Bessel series  sum_m (-x)^m / (m! Gamma(a + b m)),
// summed through the entire reciprocal-Gamma form. Stops once three
// consecutive terms fall below 1e-17 of the partial sum.
inline double wright_bessel(double a, double b, double x) {
    if (!(b > 0.0)) throw Error("wright_bessel: requires b > 0");
    double sum = 0.0;
    double pow_term = 1.0;  // (-x)^m / m!
    int small_streak = 0;
    for (int m = 0; m < 10000; ++m) {
        double term = pow_term * rgamma(a + b * m);
        sum += term;
        double scale = std::max(std::abs(sum), 1e-300);
        if (std::abs(term) < 1e-17 * scale) {
            if (++small_streak >= 3) return sum;
        } else {
            small_streak = 0;
        }
        pow_term *= -x / (m + 1);
    }
    throw ConvergenceError("wright_bessel: series did not converge in 1e4 terms");
}

// Bessel function of the first kind, order alpha > -1, x >= 0.
inline double bessel_j(double alpha, double x) {
    if (x < 0.0) throw Error("bessel_j: requires x >= 0");
    if (alpha >= 0.0) return std::cyl_bessel_j(alpha, x);
    // J_{-mu}(x) = cos(mu pi) J_mu(x) - sin(mu pi) Y_mu(x)
    double mu = -alpha;
    double n = std::round(mu);
    if (std::abs(mu - n) < 1e-14) {
        double v = std::cyl_bessel_j(n, x);
        return (static_cast<long>(n) % 2 == 0) ? v : -v;
    }
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    return std::cos(mu * M_PI) * std::cyl_bessel_j(mu, x) -
           std::sin(mu * M_PI) * std::cyl_neumann(mu, x);
}

// d/dx J_alpha(x) = J_{alpha-1}(x) - (alpha/x) J_alpha(x)
inline double bessel_j_prime(double alpha, double x) {
    if (x == 0.0) {
        if (alpha == 1.0) return 0.5;
        if (alpha > 1.0) return 0.0;
        throw Error("bessel_j_prime: x = 0 with alpha <= 1 is singular");
    }
    double jm1;
    if (alpha - 1.0 >= 0.0) {
        jm1 = std::cyl_bessel_j(alpha - 1.0, x);
    } else {
        jm1 = bessel_j(alpha - 1.0, x);
    }
    return jm1 - (alpha / x) * bessel_j(alpha, x);
}

} // namespace hardedge
