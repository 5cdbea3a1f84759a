#pragma once

// Model parameter records for the three hard-edge families, their limiting
// symbols F and finite-n symbols F_n (as log values), and the closed-form
// constants derived directly from the parameters.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "hardedge/numeric.hpp"
#include "hardedge/special.hpp"

namespace hardedge {

enum class ModelVariant {
    GinibreProduct,
    TruncatedUnitaryProduct,
    MuttalibBorodin,
};

inline const char* to_string(ModelVariant v) {
    switch (v) {
        case ModelVariant::GinibreProduct: return "GinibreProduct";
        case ModelVariant::TruncatedUnitaryProduct: return "TruncatedUnitaryProduct";
        case ModelVariant::MuttalibBorodin: return "MuttalibBorodin";
    }
    return "?";
}

struct ModelParams {
    ModelVariant variant = ModelVariant::MuttalibBorodin;
    int r = 1;                    // number of factors (variants 1, 2)
    std::vector<double> nu;       // size r, each > -1 (integers in the strict model)
    int q = 0;                    // number of fixed truncation offsets (variant 2)
    std::vector<double> mu;       // size q, mu_k > nu_k
    double alpha = 0.0;           // variant 3, > -1
    double theta = 1.0;           // variant 3, > 0
    std::vector<long> ell;        // optional truncation sizes, finite-n variant 2

    bool is_product() const { return variant != ModelVariant::MuttalibBorodin; }

    double nu_min() const {
        return nu.empty() ? 0.0 : *std::min_element(nu.begin(), nu.end());
    }
    double nu_sum() const { return std::accumulate(nu.begin(), nu.end(), 0.0); }
    double nu_sq_sum() const {
        return std::inner_product(nu.begin(), nu.end(), nu.begin(), 0.0);
    }
    double mu_sum() const { return std::accumulate(mu.begin(), mu.end(), 0.0); }
    double mu_sq_sum() const {
        return std::inner_product(mu.begin(), mu.end(), mu.begin(), 0.0);
    }

    // True when every nu (and mu) sits in N0, the regime the determinantal
    // model is actually defined in; real values are admitted for the limit
    // objects only.
    bool integer_parameters() const {
        auto is_int = [](double v) {
            return v >= 0.0 && std::abs(v - std::round(v)) < 1e-12;
        };
        return std::all_of(nu.begin(), nu.end(), is_int) &&
               std::all_of(mu.begin(), mu.end(), is_int);
    }

    void validate() const {
        switch (variant) {
            case ModelVariant::GinibreProduct:
            case ModelVariant::TruncatedUnitaryProduct: {
                if (r < 1) throw Error("ModelParams: r must be >= 1");
                if (static_cast<int>(nu.size()) != r)
                    throw Error("ModelParams: nu list must have length r");
                for (double v : nu)
                    if (!(v > -1.0)) throw Error("ModelParams: nu entries must be > -1");
                if (variant == ModelVariant::TruncatedUnitaryProduct) {
                    if (q < 0 || q >= r) throw Error("ModelParams: need 0 <= q < r");
                    if (static_cast<int>(mu.size()) != q)
                        throw Error("ModelParams: mu list must have length q");
                    for (int k = 0; k < q; ++k)
                        if (!(mu[static_cast<std::size_t>(k)] > nu[static_cast<std::size_t>(k)]))
                            throw Error("ModelParams: mu_k must exceed nu_k");
                } else if (q != 0 || !mu.empty()) {
                    throw Error("ModelParams: q/mu only apply to truncated products");
                }
                break;
            }
            case ModelVariant::MuttalibBorodin: {
                if (!(alpha > -1.0)) throw Error("ModelParams: alpha must be > -1");
                if (!(theta > 0.0)) throw Error("ModelParams: theta must be > 0");
                break;
            }
        }
    }
};

struct ScalingInfo {
    double rho = 0.0;     // growth exponent in (0,1)
    double tau = 0.0;     // horizontal shift used by the zeta-plane map
    double nu_min = 0.0;
};

struct CConstants {
    double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0, c6 = 0, c7 = 0, c8 = 0;
};

inline ScalingInfo scaling_info(const ModelParams& p) {
    p.validate();
    ScalingInfo s;
    switch (p.variant) {
        case ModelVariant::GinibreProduct:
            s.rho = 1.0 / (p.r + 1);
            s.nu_min = p.nu_min();
            s.tau = (s.nu_min + 1.0) / 2.0;
            break;
        case ModelVariant::TruncatedUnitaryProduct:
            s.rho = 1.0 / (p.r - p.q + 1);
            s.nu_min = p.nu_min();
            s.tau = (s.nu_min + 1.0) / 2.0;
            break;
        case ModelVariant::MuttalibBorodin:
            s.rho = p.theta / (p.theta + 1.0);
            s.nu_min = 0.0;
            s.tau = 0.5;
            break;
    }
    return s;
}

inline CConstants c_constants(const ModelParams& p) {
    p.validate();
    CConstants c;
    const double ln2pi = std::log(2.0 * M_PI);
    switch (p.variant) {
        case ModelVariant::GinibreProduct: {
            double r = p.r, nmin = p.nu_min(), sn = p.nu_sum(), sn2 = p.nu_sq_sum();
            c.c1 = 1.0;
            c.c2 = r;
            c.c3 = -(r + 1.0);
            c.c4 = nmin / 2.0 - sn / (r + 1.0);
            c.c5 = nmin / 2.0;
            c.c6 = r * nmin / 2.0 - sn;
            c.c7 = (1.0 - r) / 2.0 * ln2pi;
            c.c8 = (r + 1.0) / 8.0 * (nmin * nmin - 1.0 / 3.0) + 0.5 * sn2 -
                   nmin / 2.0 * sn;
            break;
        }
        case ModelVariant::TruncatedUnitaryProduct: {
            double rq = p.r - p.q, nmin = p.nu_min();
            double sn = p.nu_sum(), sn2 = p.nu_sq_sum();
            double sm = p.mu_sum(), sm2 = p.mu_sq_sum();
            c.c1 = 1.0;
            c.c2 = rq;
            c.c3 = -(rq + 1.0);
            c.c4 = nmin / 2.0 + (sm - sn) / (rq + 1.0);
            c.c5 = nmin / 2.0;
            c.c6 = rq * nmin / 2.0 + sm - sn;
            c.c7 = (1.0 + p.q - p.r) / 2.0 * ln2pi;
            c.c8 = (rq + 1.0) / 8.0 * (nmin * nmin - 1.0 / 3.0) +
                   0.5 * (sn2 - sm2) - nmin / 2.0 * (sn - sm);
            break;
        }
        case ModelVariant::MuttalibBorodin: {
            double t = p.theta, a = p.alpha;
            c.c1 = 1.0;
            c.c2 = 1.0 / t;
            c.c3 = -(t + 1.0 + std::log(t)) / t;
            c.c4 = (t + (t - 1.0) * a - 1.0) / (2.0 * (t + 1.0));
            c.c5 = a / 2.0;
            c.c6 = (t - a - 1.0) / (2.0 * t);
            c.c7 = -(t - a - 1.0) / (2.0 * t) * std::log(t);
            c.c8 = -1.0 / 6.0 + a / 4.0 * (1.0 / t - 1.0) +
                   a * a / 2.0 * (1.0 / (4.0 * t) + 1.0);
            break;
        }
    }
    return c;
}

// log of the limiting symbol F(z), as a sum of principal log-gamma values.
template <class R>
num::Cplx<R> log_F(const num::Cplx<R>& z, const ModelParams& p) {
    using C = num::Cplx<R>;
    switch (p.variant) {
        case ModelVariant::GinibreProduct: {
            C out = log_gamma(z);
            for (double nu : p.nu) out -= log_gamma(C(R(1 + nu)) - z);
            return out;
        }
        case ModelVariant::TruncatedUnitaryProduct: {
            C out = log_gamma(z);
            for (double mu : p.mu) out += log_gamma(C(R(1 + mu)) - z);
            for (double nu : p.nu) out -= log_gamma(C(R(1 + nu)) - z);
            return out;
        }
        case ModelVariant::MuttalibBorodin: {
            R half_alpha = R(p.alpha) / R(2);
            C w = (C(half_alpha + R(1)) - z) / R(p.theta);
            return log_gamma(z + half_alpha) - log_gamma(w);
        }
    }
    throw Error("log_F: bad variant");
}

// log of the finite-n symbol F_n(z). Variant 2 requires the truncation sizes
// ell (one per factor); finite-n formulas assume integer nu.
template <class R>
num::Cplx<R> log_F_finite_n(const num::Cplx<R>& z, const ModelParams& p, int n) {
    using C = num::Cplx<R>;
    if (n < 1) throw Error("log_F_finite_n: n must be >= 1");
    switch (p.variant) {
        case ModelVariant::GinibreProduct: {
            C out = log_gamma(C(R(1 - n)) - z);
            out -= log_gamma(C(R(1)) - z);  // nu_0 = 0
            for (double nu : p.nu) out -= log_gamma(C(R(1 + nu)) - z);
            return out;
        }
        case ModelVariant::TruncatedUnitaryProduct: {
            if (static_cast<int>(p.ell.size()) != p.r)
                throw AdmissibilityError(
                    "log_F_finite_n: variant 2 requires ell (one size per factor)");
            // k = 0 carries ell_0 = 0, nu_0 = 0.
            C out = log_gamma(C(R(1 - n)) - z) - log_gamma(C(R(1)) - z);
            for (int k = 0; k < p.r; ++k) {
                double lk = static_cast<double>(p.ell[static_cast<std::size_t>(k)]);
                double nk = p.nu[static_cast<std::size_t>(k)];
                out += log_gamma(C(R(1 + lk - n)) - z) - log_gamma(C(R(1 + nk)) - z);
            }
            return out;
        }
        case ModelVariant::MuttalibBorodin: {
            R half_alpha = R(p.alpha) / R(2);
            C w = (C(half_alpha + R(1)) - z) / R(p.theta);
            return log_gamma(z + half_alpha) - log_gamma(w) + log_gamma(w + R(n));
        }
    }
    throw Error("log_F_finite_n: bad variant");
}

// Real-axis crossing windows: the symbol's poles end at pole_max and its
// zeros start at zero_min; both the limiting and finite-n symbols share them.
struct SymbolWindows {
    double pole_max;
    double zero_min;
};

inline SymbolWindows symbol_windows(const ModelParams& p) {
    p.validate();
    if (p.variant == ModelVariant::MuttalibBorodin) {
        return {-p.alpha / 2.0, p.alpha / 2.0 + 1.0};
    }
    return {0.0, 1.0 + p.nu_min()};
}

// Vertical-line growth data of |F(x+iy)| as y -> +-infinity:
// ln|F| ~ rate * |y| + power * ln|y| + const.
struct SymbolTailModel {
    double rate;
    double power;
};

inline SymbolTailModel symbol_tail_model(const ModelParams& p, double x) {
    p.validate();
    switch (p.variant) {
        case ModelVariant::GinibreProduct:
            return {M_PI * (p.r - 1) / 2.0, (p.r + 1) * (x - 0.5) - p.nu_sum()};
        case ModelVariant::TruncatedUnitaryProduct:
            return {M_PI * (p.r - p.q - 1) / 2.0,
                    (p.r - p.q + 1) * (x - 0.5) + p.mu_sum() - p.nu_sum()};
        case ModelVariant::MuttalibBorodin:
            return {M_PI / 2.0 * (1.0 / p.theta - 1.0),
                    (1.0 + 1.0 / p.theta) * x - 1.0 / p.theta +
                        p.alpha / 2.0 * (1.0 - 1.0 / p.theta)};
    }
    throw Error("symbol_tail_model: bad variant");
}

struct SymbolTailReport {
    double rate_fit = 0, power_fit = 0;
    double rate_expected = 0, power_expected = 0;
    double rate_err = 0, power_err = 0;  // relative to max(|expected|, 1)
    bool pass = false;
};

// Least-squares fit of ln|F(x+iy)| = rate*|y| + power*ln|y| + const on the
// supplied |y| grid, compared against the model exponents (2% gate).
inline SymbolTailReport symbol_tail_check(const ModelParams& p, double x,
                                          const std::vector<double>& y_grid) {
    for (double y : y_grid)
        if (!(std::abs(y) >= 10.0))
            throw Error("symbol_tail_check: need |y| >= 10 samples");
    // 3x3 normal equations for [|y|, ln|y|, 1]
    double a[3][3] = {{0}};
    double b[3] = {0};
    for (double y : y_grid) {
        double ay = std::abs(y);
        double f = log_F(Cd{x, y}, p).re;
        double phi[3] = {ay, std::log(ay), 1.0};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) a[i][j] += phi[i] * phi[j];
            b[i] += phi[i] * f;
        }
    }
    // Gaussian elimination, 3x3.
    for (int k = 0; k < 3; ++k) {
        int piv = k;
        for (int i = k + 1; i < 3; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (int i = k + 1; i < 3; ++i) {
            double m = a[i][k] / a[k][k];
            for (int j = k; j < 3; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    double sol[3];
    for (int i = 2; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < 3; ++j) s -= a[i][j] * sol[j];
        sol[i] = s / a[i][i];
    }

    SymbolTailModel model = symbol_tail_model(p, x);
    SymbolTailReport rep;
    rep.rate_fit = sol[0];
    rep.power_fit = sol[1];
    rep.rate_expected = model.rate;
    rep.power_expected = model.power;
    rep.rate_err = std::abs(rep.rate_fit - model.rate) / std::max(std::abs(model.rate), 1.0);
    rep.power_err =
        std::abs(rep.power_fit - model.power) / std::max(std::abs(model.power), 1.0);
    rep.pass = rep.rate_err <= 0.02 && rep.power_err <= 0.02;
    return rep;
}

inline Cd log_F(const Cd& z, const ModelParams& p) { return log_F<double>(z, p); }
inline Cd log_F_finite_n(const Cd& z, const ModelParams& p, int n) {
    return log_F_finite_n<double>(z, p, n);
}

// Convenience constructors for the three families.
inline ModelParams make_ginibre_product(int r, std::vector<double> nu) {
    ModelParams p;
    p.variant = ModelVariant::GinibreProduct;
    p.r = r;
    p.nu = std::move(nu);
    p.validate();
    return p;
}

inline ModelParams make_truncated_unitary(int r, std::vector<double> nu, int q,
                                          std::vector<double> mu,
                                          std::vector<long> ell = {}) {
    ModelParams p;
    p.variant = ModelVariant::TruncatedUnitaryProduct;
    p.r = r;
    p.nu = std::move(nu);
    p.q = q;
    p.mu = std::move(mu);
    p.ell = std::move(ell);
    p.validate();
    return p;
}

inline ModelParams make_muttalib_borodin(double alpha, double theta) {
    ModelParams p;
    p.variant = ModelVariant::MuttalibBorodin;
    p.alpha = alpha;
    p.theta = theta;
    p.validate();
    return p;
}

} // namespace hardedge
