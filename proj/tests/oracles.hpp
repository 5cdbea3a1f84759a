#pragma once

// Test-only reference implementations, kept independent of the library's
// evaluation paths: a Stirling-series log-gamma in 50-digit arithmetic and
// direct series for Bessel/Wright functions built on top of it.

#include <boost/multiprecision/mpfr.hpp>

#include "hardedge/numeric.hpp"
#include "hardedge/special.hpp"

namespace oracle {

using R50 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50>>;
using C50 = hardedge::num::Cplx<R50>;

inline R50 bernoulli_2k(int k) {
    // B_2 .. B_60 as exact rationals.
    static const char* num[30] = {
        "1", "-1", "1", "-1", "5", "-691", "7", "-3617", "43867", "-174611",
        "854513", "-236364091", "8553103", "-23749461029", "8615841276005",
        "-7709321041217", "2577687858367", "-26315271553053477373",
        "2929993913841559", "-261082718496449122051",
        "1520097643918070802691", "-27833269579301024235023",
        "596451111593912163277961", "-5609403368997817686249127547",
        "495057205241079648212477525", "-801165718135489957347924991853",
        "29149963634884862421418123812691",
        "-2479392929313226753685415739663229",
        "84483613348880041862046775994036021",
        "-1215233140483755572040304994079820246041491"};
    static const char* den[30] = {
        "6", "30", "42", "30", "66", "2730", "6", "510", "798", "330", "138",
        "2730", "6", "870", "14322", "510", "6", "1919190", "6", "13530",
        "1806", "690", "282", "46410", "66", "1590", "798", "870", "354",
        "56786730"};
    return R50(num[k - 1]) / R50(den[k - 1]);
}

// 30-term Stirling series with argument shift; independent of the library's
// Lanczos/Spouge path. Reflects once for Re z < 1/2 (the series is asymptotic
// only away from the negative axis).
inline C50 log_gamma_stirling(C50 z) {
    using namespace hardedge::num;
    const R50 pi = hardedge::num::pi<R50>();
    if (z.re < R50(0.5)) {
        C50 one_minus = C50(R50(1)) - z;
        return C50(hardedge::num::rlog(pi)) - hardedge::detail::log_sin_pi(z) -
               log_gamma_stirling(one_minus);
    }
    C50 shift_log{R50(0), R50(0)};
    int shifts = 0;
    while (cabs(z) < R50(40) && shifts < 200) {
        shift_log += clog(z);
        z += R50(1);
        ++shifts;
    }
    C50 out = (z - R50(0.5)) * clog(z) - z + C50(hardedge::num::rlog(R50(2) * pi) / R50(2));
    C50 zpow = z;
    for (int k = 1; k <= 30; ++k) {
        R50 b = bernoulli_2k(k);
        out += C50(b / (R50(2 * k) * R50(2 * k - 1))) / zpow;
        zpow = zpow * z * z;
    }
    return out - shift_log;
}

inline R50 gamma_real(const R50& x) {
    using namespace hardedge::num;
    return exp(log_gamma_stirling(C50(x)).re);
}

// Direct Bessel J series; fine for moderate x at 50 digits.
inline R50 bessel_j_series(const R50& alpha, const R50& x) {
    using namespace hardedge::num;
    R50 half = x / R50(2);
    R50 q = -half * half;
    R50 term = pow(half, alpha) / gamma_real(alpha + R50(1));
    R50 sum = term;
    for (int m = 1; m < 400; ++m) {
        term *= q / (R50(m) * (alpha + R50(m)));
        sum += term;
        if (abs(term) < R50("1e-55") * abs(sum)) break;
    }
    return sum;
}

inline R50 wright_series(const R50& a, const R50& b, const R50& x, int terms) {
    using namespace hardedge::num;
    R50 sum(0);
    R50 pow_term(1);
    for (int m = 0; m < terms; ++m) {
        R50 w = a + b * R50(m);
        R50 g = gamma_real(w);
        sum += pow_term / g;
        pow_term *= -x / R50(m + 1);
    }
    return sum;
}

} // namespace oracle
