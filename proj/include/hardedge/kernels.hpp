#pragma once

// Numerical evaluation of the limiting hard-edge kernels, their finite-n
// counterparts, and independent closed-form oracles (Bessel reduction and the
// Wright-series form of the Muttalib-Borodin kernel).
//
// The default evaluation route is separable: with P the symbol transform on
// gamma and Q the inverse-symbol transform on gamma-tilde,
//     K(x,y) = int_0^1 P(x w) Q(y w) dw,
// valid because Re(v - u) > 0 between the contours. Substituting w = e^{-t}
// turns the w-integral into a smooth exponential one, and every batch of
// kernel values reduces to three small matrix products.

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardedge/contours.hpp"
#include "hardedge/linalg.hpp"
#include "hardedge/models.hpp"
#include "hardedge/numeric.hpp"
#include "hardedge/special.hpp"

namespace hardedge {

enum class KernelMode { Separable, DirectDouble };

struct KernelOptions {
    KernelMode mode = KernelMode::Separable;
    double margin = 0.35;
    double x_max = 4.0;        // largest kernel argument this evaluator will see
    double x_min = 1e-10;      // smallest positive argument
    int digits = 15;           // target accuracy; drives orders and truncations
    int contour_order = 0;     // 0 = derive from digits
    int t_order = 0;           // 0 = derive from digits
    int finite_n = 0;          // 0 = limiting kernel
    double imag_tol = 1e-9;    // reality-check threshold
};

template <class R>
struct KernelEvaluator {
    using C = num::Cplx<R>;

    ModelParams params;
    KernelOptions opt;
    ScalingInfo scaling;

    QuadratureGrid<R> gu, gv;       // gamma, gamma-tilde
    std::vector<C> logFu, logFv;    // symbol logs on the nodes
    R log_norm{};                   // Re log F at the gamma crossing
    std::vector<R> t_nodes;         // w = e^{-t}
    std::vector<R> t_weights;       // plain GL panel weights (e^{-t} cancels)
    double sigma = 0.0;             // small-w exponent of P(xw) Q(yw)
    double lambda_plus = 0.0;       // max positive ln(x) on this grid
    double cancel_log = 0.0;        // worst log cancellation seen by the sums

    double rho() const { return scaling.rho; }
};

namespace detail {

template <class R>
num::Cplx<R> log_symbol(const KernelEvaluator<R>& ev, const num::Cplx<R>& z) {
    if (ev.opt.finite_n > 0) return log_F_finite_n(z, ev.params, ev.opt.finite_n);
    return log_F(z, ev.params);
}

inline double small_w_exponent(const ModelParams& p) {
    if (p.variant == ModelVariant::MuttalibBorodin) return p.alpha;
    return p.nu_min();
}

// kernel oscillation exponent: K(x,.) oscillates like cos(c x^rho)
inline double phase_rate(const ModelParams& p, double x_max) {
    double rho = scaling_info(p).rho;
    return std::pow(std::max(x_max, 1.0), rho);
}

} // namespace detail

template <class R>
KernelEvaluator<R> make_kernel_evaluator(const ModelParams& params,
                                         KernelOptions opt = {}) {
    params.validate();
    if (opt.finite_n > 0 && params.is_product() && !params.integer_parameters())
        throw AdmissibilityError("finite-n kernels require integer nu (and mu)");

    KernelEvaluator<R> ev;
    ev.params = params;
    ev.opt = opt;
    ev.scaling = scaling_info(params);
    ev.sigma = detail::small_w_exponent(params);
    if (!(ev.sigma > -1.0))
        throw Error("kernel evaluator: small-w exponent must exceed -1");
    ev.lambda_plus = std::max(0.0, std::log(opt.x_max));

    const double ln10 = std::log(10.0);
    const int digits = std::max(10, opt.digits);
    const int c_order = opt.contour_order > 0
                            ? opt.contour_order
                            : std::max(12, static_cast<int>(0.55 * digits) + 8);
    const int t_order = opt.t_order > 0
                            ? opt.t_order
                            : std::max(12, static_cast<int>(0.60 * digits) + 8);

    const double t_cut =
        std::max(40.0, (digits * ln10 + 6.0) / (1.0 + ev.sigma));

    LimitContourOptions copt;
    copt.margin = opt.margin;
    copt.log_scale = ev.lambda_plus;
    copt.refine_scale = std::abs(std::log(std::max(opt.x_min, 1e-300))) + t_cut;
    copt.tail_eps = std::pow(10.0, -(digits + 3.0));
    copt.panel_phase = 0.42 * c_order;
    copt.finite_n = opt.finite_n;
    auto [gamma, tilde] = build_limit_contours(params, copt);

    ev.gu = quadrature_on<R>(gamma, c_order);
    ev.gv = quadrature_on<R>(tilde, c_order);

    auto eval_logs = [&](const QuadratureGrid<R>& g, std::vector<num::Cplx<R>>& out) {
        out.resize(g.nodes.size());
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            out[i] = detail::log_symbol(ev, g.nodes[i]);
    };
    eval_logs(ev.gu, ev.logFu);
    eval_logs(ev.gv, ev.logFv);
    {
        num::Cplx<R> at_crossing =
            detail::log_symbol(ev, num::Cplx<R>(R(gamma.crossing)));
        ev.log_norm = at_crossing.re;
    }

    // t panels: width limited by the oscillation phase of P(x_max e^{-t})
    const double rho = ev.scaling.rho;
    const double rate0 = detail::phase_rate(params, opt.x_max);
    const double budget = 0.42 * t_order;
    std::vector<double> bp{0.0};
    double t = 0.0;
    while (t < t_cut) {
        double rate = rate0 * std::exp(-rho * t) + 0.25;
        double w = std::min(4.0, budget / rate);
        t = std::min(t_cut, t + w);
        bp.push_back(t);
    }
    const auto& rule = gauss_legendre<R>(t_order);
    for (std::size_t pnl = 1; pnl < bp.size(); ++pnl) {
        R a(bp[pnl - 1]), b(bp[pnl]);
        R mid = (a + b) / R(2), half = (b - a) / R(2);
        for (int i = 0; i < t_order; ++i) {
            ev.t_nodes.push_back(mid + half * rule.nodes[static_cast<std::size_t>(i)]);
            ev.t_weights.push_back(half * rule.weights[static_cast<std::size_t>(i)]);
        }
    }

    // rough cancellation ledger for precision laddering
    double peak_p = 0.0, peak_q = 0.0;
    for (std::size_t m = 0; m < ev.gu.nodes.size(); ++m) {
        double re_u = static_cast<double>(ev.gu.nodes[m].re);
        double lf = static_cast<double>(ev.logFu[m].re) -
                    static_cast<double>(ev.log_norm);
        peak_p = std::max(peak_p, lf + ev.lambda_plus * std::max(0.0, -re_u));
    }
    for (std::size_t m = 0; m < ev.gv.nodes.size(); ++m) {
        double re_v = static_cast<double>(ev.gv.nodes[m].re);
        double lf = -static_cast<double>(ev.logFv[m].re) +
                    static_cast<double>(ev.log_norm);
        peak_q = std::max(peak_q, lf + ev.lambda_plus * std::max(0.0, re_v));
    }
    ev.cancel_log = peak_p + peak_q;
    return ev;
}

inline KernelEvaluator<double> make_kernel_evaluator(const ModelParams& params,
                                                     const KernelOptions& opt) {
    return make_kernel_evaluator<double>(params, opt);
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

// P(xi) = (1/2 pi i) int_gamma F(u) xi^{-u} du ; real for xi > 0.
template <class R>
R p_transform(const R& xi, const KernelEvaluator<R>& ev) {
    using C = num::Cplx<R>;
    if (!(xi > R(0))) throw Error("p_transform: xi must be positive");
    R lx = num::rlog(xi);
    C acc{};
    for (std::size_t m = 0; m < ev.gu.nodes.size(); ++m) {
        acc += ev.gu.weights[m] * num::cexp(ev.logFu[m] - ev.gu.nodes[m] * lx);
    }
    C val = acc / C(R(0), R(2) * num::pi<R>());
    R scale = num::rabs(val.re) + R(1);
    if (num::rabs(val.im) > R(ev.opt.imag_tol) * scale)
        throw ToleranceError("p_transform: imaginary residual too large");
    return val.re;
}

// Q(eta) = (1/2 pi i) int_tilde F(v)^{-1} eta^{v-1} dv ; real for eta > 0.
template <class R>
R q_transform(const R& eta, const KernelEvaluator<R>& ev) {
    using C = num::Cplx<R>;
    if (!(eta > R(0))) throw Error("q_transform: eta must be positive");
    R ly = num::rlog(eta);
    C acc{};
    for (std::size_t m = 0; m < ev.gv.nodes.size(); ++m) {
        acc += ev.gv.weights[m] *
               num::cexp((ev.gv.nodes[m] - R(1)) * ly - ev.logFv[m]);
    }
    C val = acc / C(R(0), R(2) * num::pi<R>());
    R scale = num::rabs(val.re) + R(1);
    if (num::rabs(val.im) > R(ev.opt.imag_tol) * scale)
        throw ToleranceError("q_transform: imaginary residual too large");
    return val.re;
}

// ---------------------------------------------------------------------------
// Batch kernel evaluation (separable route)
// ---------------------------------------------------------------------------

template <class R>
struct KernelBatch {
    Mat<R> values;    // K(xs_i, ys_j)
    R imag_max{};     // worst imaginary residual, scaled
};

template <class R>
KernelBatch<R> kernel_matrix(const std::vector<R>& xs, const std::vector<R>& ys,
                             const KernelEvaluator<R>& ev) {
    using C = num::Cplx<R>;
    const std::size_t nx = xs.size(), ny = ys.size();
    const std::size_t mu = ev.gu.nodes.size(), mv = ev.gv.nodes.size();
    const std::size_t nt = ev.t_nodes.size();
    for (const R& x : xs)
        if (!(x > R(0))) throw Error("kernel_matrix: arguments must be positive");
    for (const R& y : ys)
        if (!(y > R(0))) throw Error("kernel_matrix: arguments must be positive");

    const R lam(ev.lambda_plus);
    const C half_turn{R(0), R(2) * num::pi<R>()};

    // G_mk = w_m/(2 pi i) exp(logF_m - A + u_m t_k + beta_m)
    Mat<C> G(mu, nt);
    parallel_for(mu, [&](std::size_t m) {
        C u = ev.gu.nodes[m];
        R beta = u.re < R(0) ? -u.re * lam : R(0);
        C c0 = ev.gu.weights[m] / half_turn;
        C base = ev.logFu[m] - ev.log_norm + beta;
        for (std::size_t k = 0; k < nt; ++k)
            G(m, k) = c0 * num::cexp(base + u * ev.t_nodes[k]);
    });
    // H_mk = w_m/(2 pi i) exp(-logF_m + A - v_m t_k + gamma_m)
    Mat<C> H(mv, nt);
    parallel_for(mv, [&](std::size_t m) {
        C v = ev.gv.nodes[m];
        R gamma = v.re > R(0) ? v.re * lam : R(0);
        C c0 = ev.gv.weights[m] / half_turn;
        C base = C(ev.log_norm + gamma) - ev.logFv[m];
        for (std::size_t k = 0; k < nt; ++k)
            H(m, k) = c0 * num::cexp(base - v * ev.t_nodes[k]);
    });

    // Phat_ik = sum_m exp(-u_m ln x_i - beta_m) G_mk
    Mat<C> Phat(nx, nt), Qhat(ny, nt);
    parallel_for(nx, [&](std::size_t i) {
        R lx = num::rlog(xs[i]);
        std::vector<C> e1(mu);
        for (std::size_t m = 0; m < mu; ++m) {
            C u = ev.gu.nodes[m];
            R beta = u.re < R(0) ? -u.re * lam : R(0);
            e1[m] = num::cexp(C(-lx) * u - beta);
        }
        for (std::size_t m = 0; m < mu; ++m) {
            C e = e1[m];
            const C* grow = &G(m, 0);
            C* prow = &Phat(i, 0);
            for (std::size_t k = 0; k < nt; ++k) prow[k] += e * grow[k];
        }
    });
    // Qhat_jk = sum_m exp(v_m ln y_j - gamma_m - ln y_j) H_mk
    parallel_for(ny, [&](std::size_t j) {
        R ly = num::rlog(ys[j]);
        std::vector<C> e2(mv);
        for (std::size_t m = 0; m < mv; ++m) {
            C v = ev.gv.nodes[m];
            R gamma = v.re > R(0) ? v.re * lam : R(0);
            e2[m] = num::cexp(C(ly) * v - gamma - ly);
        }
        for (std::size_t m = 0; m < mv; ++m) {
            C e = e2[m];
            const C* hrow = &H(m, 0);
            C* qrow = &Qhat(j, 0);
            for (std::size_t k = 0; k < nt; ++k) qrow[k] += e * hrow[k];
        }
    });

    KernelBatch<R> out;
    out.values = Mat<R>(nx, ny);
    std::vector<R> imax(nx, R(0));
    parallel_for(nx, [&](std::size_t i) {
        for (std::size_t j = 0; j < ny; ++j) {
            C acc{};
            const C* prow = &Phat(i, 0);
            const C* qrow = &Qhat(j, 0);
            for (std::size_t k = 0; k < nt; ++k)
                acc += (prow[k] * qrow[k]) * ev.t_weights[k];
            out.values(i, j) = acc.re;
            R resid = num::rabs(acc.im) / (num::rabs(acc.re) + R(1));
            if (resid > imax[i]) imax[i] = resid;
        }
    });
    for (const R& v : imax) out.imag_max = std::max(out.imag_max, v);
    return out;
}

struct KernelValue {
    double value;
    double imag_residual;
};

// Single kernel value through the evaluator's mode.
template <class R>
KernelValue kernel_eval(double x, double y, const KernelEvaluator<R>& ev) {
    using C = num::Cplx<R>;
    if (!(x > 0.0) || !(y > 0.0)) throw Error("kernel_eval: x, y must be > 0");
    if (ev.opt.mode == KernelMode::DirectDouble) {
        // raw double contour sum; O(M^2) oracle path
        R lx(num::rlog(R(x))), ly(num::rlog(R(y)));
        std::vector<C> fu(ev.gu.nodes.size()), fv(ev.gv.nodes.size());
        for (std::size_t m = 0; m < fu.size(); ++m)
            fu[m] = ev.gu.weights[m] *
                    num::cexp(ev.logFu[m] - ev.log_norm - ev.gu.nodes[m] * lx);
        for (std::size_t l = 0; l < fv.size(); ++l)
            fv[l] = ev.gv.weights[l] *
                    num::cexp(C(ev.log_norm) - ev.logFv[l] +
                              (ev.gv.nodes[l] - R(1)) * ly);
        C acc{};
        for (std::size_t m = 0; m < fu.size(); ++m) {
            C inner{};
            for (std::size_t l = 0; l < fv.size(); ++l)
                inner += fv[l] / (ev.gu.nodes[m] - ev.gv.nodes[l]);
            acc += fu[m] * inner;
        }
        const R pi = num::pi<R>();
        C val = acc / (R(4) * pi * pi);
        double resid = static_cast<double>(num::rabs(val.im)) /
                       (static_cast<double>(num::rabs(val.re)) + 1.0);
        if (resid > ev.opt.imag_tol)
            throw ToleranceError("kernel_eval: reality check failed");
        return {static_cast<double>(val.re), resid};
    }
    auto batch = kernel_matrix<R>({R(x)}, {R(y)}, ev);
    double resid = static_cast<double>(batch.imag_max);
    if (resid > ev.opt.imag_tol)
        throw ToleranceError("kernel_eval: reality check failed");
    return {static_cast<double>(batch.values(0, 0)), resid};
}

// ---------------------------------------------------------------------------
// Closed-form oracles
// ---------------------------------------------------------------------------

// Hard-edge Bessel kernel; confluent (derivative) form on the diagonal.
inline double bessel_kernel(double x, double y, double alpha) {
    if (!(x > 0.0) || !(y > 0.0)) throw Error("bessel_kernel: x, y must be > 0");
    double sx = std::sqrt(x), sy = std::sqrt(y);
    if (std::abs(x - y) > 1e-9 * (x + y)) {
        double ja_x = bessel_j(alpha, sx), ja_y = bessel_j(alpha, sy);
        double jp_x = bessel_j_prime(alpha, sx), jp_y = bessel_j_prime(alpha, sy);
        return (ja_x * sy * jp_y - ja_y * sx * jp_x) / (2.0 * (x - y));
    }
    double z = sx;
    double j = bessel_j(alpha, z), jp = bessel_j_prime(alpha, z);
    return (jp * jp + (1.0 - alpha * alpha / (z * z)) * j * j) / 4.0;
}

// Muttalib-Borodin kernel through Wright's series,
//   theta (xy)^{alpha/2} int_0^1 J_{(a+1)/th, 1/th}(xt) J_{a+1, th}((yt)^th) t^a dt,
// with Gauss-Jacobi quadrature carrying the t^alpha weight.
inline double kernel3_wright(double x, double y, double alpha, double theta,
                             int order = 80) {
    if (!(x > 0.0) || !(y > 0.0)) throw Error("kernel3_wright: x, y must be > 0");
    if (!(alpha > -1.0) || !(theta > 0.0))
        throw Error("kernel3_wright: need alpha > -1, theta > 0");
    GaussRule<double> rule = gauss_jacobi01(order, alpha);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
        double t = (rule.nodes[static_cast<std::size_t>(i)] + 1.0) / 2.0;
        double w = rule.weights[static_cast<std::size_t>(i)] *
                   std::pow(2.0, -alpha - 1.0);
        double f = wright_bessel((alpha + 1.0) / theta, 1.0 / theta, x * t) *
                   wright_bessel(alpha + 1.0, theta, std::pow(y * t, theta));
        acc += w * f;
    }
    return theta * std::pow(x * y, alpha / 2.0) * acc;
}

// Finite-n kernel value (convenience path; builds a small evaluator).
inline double kernel_finite_n(double x, double y, const ModelParams& p, int n,
                              KernelOptions opt = {}) {
    opt.finite_n = n;
    opt.x_max = std::max({opt.x_max, x, y});
    auto ev = make_kernel_evaluator<double>(p, opt);
    return kernel_eval(x, y, ev).value;
}

// ---------------------------------------------------------------------------
// Scaled-kernel convergence study
// ---------------------------------------------------------------------------

struct ConvergenceReport {
    std::vector<int> n_values;
    std::vector<double> sup_err;   // sup-grid |(1/c_n) K_n(x/c_n, y/c_n) - K|
    double fitted_order = 0.0;     // log-log slope of sup_err vs n
};

inline double scale_constant(const ModelParams& p, int n) {
    switch (p.variant) {
        case ModelVariant::GinibreProduct:
            return static_cast<double>(n);
        case ModelVariant::TruncatedUnitaryProduct: {
            if (static_cast<int>(p.ell.size()) != p.r)
                throw AdmissibilityError("scale_constant: variant 2 needs ell");
            if (p.q != 0)
                throw AdmissibilityError(
                    "scale_constant: finite-n variant 2 supported for q = 0 only");
            double c = n;
            for (long l : p.ell) c *= static_cast<double>(l - n);
            return c;
        }
        case ModelVariant::MuttalibBorodin:
            return std::pow(static_cast<double>(n), 1.0 / p.theta);
    }
    throw Error("scale_constant: bad variant");
}

inline ConvergenceReport convergence_study(const ModelParams& p,
                                           const std::vector<int>& n_list,
                                           const std::vector<std::pair<double, double>>& grid,
                                           KernelOptions opt = {}) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw Error("convergence_study: n list must increase");
    double arg_max = 1.0;
    for (auto& [x, y] : grid) arg_max = std::max({arg_max, x, y});
    opt.x_max = std::max(opt.x_max, arg_max);

    KernelOptions lim_opt = opt;
    lim_opt.finite_n = 0;
    auto lim = make_kernel_evaluator<double>(p, lim_opt);

    ConvergenceReport rep;
    for (int n : n_list) {
        KernelOptions fin_opt = opt;
        fin_opt.finite_n = n;
        double cn = scale_constant(p, n);
        fin_opt.x_max = std::max(1.0, arg_max / cn);
        auto fin = make_kernel_evaluator<double>(p, fin_opt);
        double worst = 0.0;
        for (auto& [x, y] : grid) {
            double kn = kernel_eval(x / cn, y / cn, fin).value / cn;
            double kl = kernel_eval(x, y, lim).value;
            worst = std::max(worst, std::abs(kn - kl));
        }
        rep.n_values.push_back(n);
        rep.sup_err.push_back(worst);
    }
    // LS slope of ln(err) against ln(n)
    if (rep.n_values.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = rep.n_values.size();
        for (std::size_t i = 0; i < m; ++i) {
            double lx = std::log(static_cast<double>(rep.n_values[i]));
            double ly = std::log(std::max(rep.sup_err[i], 1e-300));
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        }
        double dm = static_cast<double>(m);
        rep.fitted_order = -(dm * sxy - sx * sy) / (dm * sxx - sx * sx);
    }
    return rep;
}

} // namespace hardedge
