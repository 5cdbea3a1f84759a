#pragma once

// Integration paths in the complex plane and quadrature on them: the two
// symbol contours used by every kernel/determinant evaluation, and the bent
// steepest-descent system around the cut endpoints.

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hardedge/models.hpp"
#include "hardedge/numeric.hpp"

namespace hardedge {

// ---------------------------------------------------------------------------
// Gauss rules
// ---------------------------------------------------------------------------

template <class R>
struct GaussRule {
    std::vector<R> nodes;    // on (-1, 1)
    std::vector<R> weights;
};

// Gauss-Legendre nodes by Newton iteration on the recurrence; computed and
// cached per precision type.
template <class R>
const GaussRule<R>& gauss_legendre(int n) {
    static std::map<int, GaussRule<R>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule<R> rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, then Newton in target precision.
        R x(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
        R dp(0);
        for (int it2 = 0; it2 < 64; ++it2) {
            R p0(1), p1(0);
            for (int k = 0; k < n; ++k) {
                R p2 = p1;
                p1 = p0;
                p0 = ((R(2 * k + 1) * x * p1) - R(k) * p2) / R(k + 1);
            }
            dp = R(n) * (x * p0 - p1) / (x * x - R(1));
            R dx = p0 / dp;
            x -= dx;
            if (num::rabs(dx) < num::eps<R>() * R(4) * (num::rabs(x) + R(1))) break;
        }
        // one clean-up pass for the weight
        R p0(1), p1(0);
        for (int k = 0; k < n; ++k) {
            R p2 = p1;
            p1 = p0;
            p0 = ((R(2 * k + 1) * x * p1) - R(k) * p2) / R(k + 1);
        }
        dp = R(n) * (x * p0 - p1) / (x * x - R(1));
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] =
            R(2) / ((R(1) - x * x) * dp * dp);
    }
    auto [pos, ok] = cache.emplace(n, std::move(rule));
    (void)ok;
    return pos->second;
}

// Gauss-Jacobi rule for weight (1+x)^beta on (-1,1), via Golub-Welsch.
// Intended for the weighted hard-edge discretizations (double path).
inline GaussRule<double> gauss_jacobi01(int n, double beta) {
    if (!(beta > -1.0)) throw Error("gauss_jacobi01: need beta > -1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    const double a = 0.0, b = beta;
    for (int k = 0; k < n; ++k) {
        double s = 2.0 * k + a + b;
        J(k, k) = (k == 0) ? (b - a) / (a + b + 2.0)
                           : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < n) {
            double kk = k + 1.0;
            double num = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b);
            double den = (2.0 * kk + a + b - 1.0) * std::pow(2.0 * kk + a + b, 2) *
                         (2.0 * kk + a + b + 1.0);
            J(k, k + 1) = J(k + 1, k) = std::sqrt(num / den);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw NonConvergence("gauss_jacobi01: eigensolve failed");
    const double mu0 = std::pow(2.0, beta + 1.0) / (beta + 1.0);
    GaussRule<double> rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        double z0 = es.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = mu0 * z0 * z0;
    }
    return rule;
}

// ---------------------------------------------------------------------------
// Contours
// ---------------------------------------------------------------------------

struct Segment {
    Cd a;
    Cd b;
};

struct Contour {
    std::vector<Segment> segments;  // consecutive, traversed in order
    double crossing = std::numeric_limits<double>::quiet_NaN();
    bool upward = true;

    void check_connected() const {
        for (std::size_t i = 1; i < segments.size(); ++i) {
            if (num::cabs(segments[i].a - segments[i - 1].b) > 1e-12)
                throw GeometryError("Contour: segments are not consecutive");
        }
    }
};

inline Contour make_polyline(const std::vector<Cd>& pts) {
    Contour c;
    for (std::size_t i = 1; i < pts.size(); ++i) c.segments.push_back({pts[i - 1], pts[i]});
    return c;
}

template <class R>
struct QuadratureGrid {
    std::vector<num::Cplx<R>> nodes;
    std::vector<num::Cplx<R>> weights;  // carry the complex segment direction
};

// Composite Gauss-Legendre along the contour; `order` nodes per segment.
template <class R>
QuadratureGrid<R> quadrature_on(const Contour& contour, int order) {
    if (order < 8) throw Error("quadrature_on: order must be >= 8");
    contour.check_connected();
    const auto& rule = gauss_legendre<R>(order);
    QuadratureGrid<R> grid;
    grid.nodes.reserve(contour.segments.size() * static_cast<std::size_t>(order));
    grid.weights.reserve(grid.nodes.capacity());
    using C = num::Cplx<R>;
    for (const auto& seg : contour.segments) {
        C a(R(seg.a.re), R(seg.a.im));
        C b(R(seg.b.re), R(seg.b.im));
        C mid = (a + b) * R(0.5);
        C half = (b - a) * R(0.5);
        for (int i = 0; i < order; ++i) {
            grid.nodes.push_back(mid + half * rule.nodes[static_cast<std::size_t>(i)]);
            grid.weights.push_back(half * rule.weights[static_cast<std::size_t>(i)]);
        }
    }
    return grid;
}

inline QuadratureGrid<double> quadrature_on(const Contour& c, int order) {
    return quadrature_on<double>(c, order);
}

template <class R, class F>
auto integrate(const QuadratureGrid<R>& grid, F&& f) {
    auto acc = f(grid.nodes[0]) * grid.weights[0];
    for (std::size_t i = 1; i < grid.nodes.size(); ++i)
        acc += f(grid.nodes[i]) * grid.weights[i];
    return acc;
}

// ---------------------------------------------------------------------------
// Symbol contours (the gamma / gamma-tilde pair)
// ---------------------------------------------------------------------------

struct LimitContourOptions {
    double margin = 0.35;       // in (0, 1/2): crossing position inside its window
    double log_scale = 20.0;    // growth budget: max positive ln x on this grid
    double refine_scale = 40.0; // boundary-layer scale: max |ln x| incl. w-decay
    double tail_eps = 1e-18;    // truncate once the integrand bound drops below this
    double panel_phase = 10.0;  // max oscillation phase per panel (radians)
    int finite_n = 0;           // 0 = limiting symbol, else F_n
};

namespace detail {

// Walk outward along the ray until the worst-case integrand bound
// |F(u)|^{sgn} e^{log_scale |Re u|} has fallen tail_eps below its running peak.
inline double truncation_length(const ModelParams& p, const LimitContourOptions& opt,
                                double crossing, double angle, double sign) {
    const double log_tail = std::log(opt.tail_eps);
    const Cd dir{std::cos(angle), std::sin(angle)};
    double peak = -1e300;
    double t = 0.5;
    const double step = 0.5;
    for (int k = 0; k < 400000; ++k) {
        Cd u = Cd{crossing, 0.0} + dir * t;
        double lf;
        try {
            Cd lF = opt.finite_n > 0 ? log_F_finite_n(u, p, opt.finite_n)
                                     : log_F(u, p);
            lf = sign * lF.re;
        } catch (const PoleError&) {
            lf = 1e300;  // too close to a pole: keep walking
        }
        double bound = lf + opt.log_scale * std::abs(u.re);
        peak = std::max(peak, bound);
        if (bound < peak + log_tail) return t;
        t += step * (1.0 + 0.02 * k);
    }
    throw GeometryError("truncation_length: integrand bound never decayed");
}

// Breakpoints 0 = t_0 < ... < t_m = T: dyadic refinement toward t = 0 for the
// crossing boundary layer, panel length capped at h_cap further out so the
// oscillatory factor x^{-u} stays resolvable per panel.
inline std::vector<double> graded_breakpoints(double T, double h_min, double h_cap) {
    std::vector<double> bp;
    bp.push_back(0.0);
    double t = std::min(h_min, T);
    while (t < T) {
        bp.push_back(t);
        double h = std::min(t, h_cap);  // doubling until the cap kicks in
        t += h;
    }
    bp.push_back(T);
    if (bp.size() >= 2 && bp[bp.size() - 1] - bp[bp.size() - 2] < 1e-12 * T)
        bp.erase(bp.end() - 2);
    return bp;
}

inline Contour ray_pair_contour(double crossing, double angle, double T,
                                double h_min, double h_cap) {
    // lower ray (conjugate direction) traversed inward, then upper ray outward
    auto bp = graded_breakpoints(T, h_min, h_cap);
    Contour c;
    c.crossing = crossing;
    const Cd up{std::cos(angle), std::sin(angle)};
    const Cd down = num::conj(up);
    for (std::size_t i = bp.size() - 1; i >= 1; --i) {
        Cd a = Cd{crossing, 0.0} + down * bp[i];
        Cd b = Cd{crossing, 0.0} + down * bp[i - 1];
        c.segments.push_back({a, b});
    }
    for (std::size_t i = 1; i < bp.size(); ++i) {
        Cd a = Cd{crossing, 0.0} + up * bp[i - 1];
        Cd b = Cd{crossing, 0.0} + up * bp[i];
        c.segments.push_back({a, b});
    }
    return c;
}

} // namespace detail

// The pair (gamma, gamma-tilde): gamma crosses between the symbol's poles and
// 1/2 and escapes left; gamma-tilde crosses between 1/2 and the zeros and
// escapes right. Ray angles are pi/8 off the real axis.
inline std::pair<Contour, Contour> build_limit_contours(
    const ModelParams& p, const LimitContourOptions& opt = {}) {
    p.validate();
    if (!(opt.margin > 0.0 && opt.margin < 0.5))
        throw Error("build_limit_contours: margin must lie in (0, 1/2)");
    SymbolWindows win = symbol_windows(p);
    if (!(win.pole_max < 0.5) || !(win.zero_min > 0.5))
        throw GeometryError("build_limit_contours: no admissible crossing window");

    const double xg = win.pole_max + opt.margin * (0.5 - win.pole_max);
    const double xt = win.zero_min - opt.margin * (win.zero_min - 0.5);
    const double ang_g = M_PI - M_PI / 8.0;
    const double ang_t = M_PI / 8.0;

    double Tg = detail::truncation_length(p, opt, xg, ang_g, +1.0);
    double Tt = detail::truncation_length(p, opt, xt, ang_t, -1.0);

    const double h_min = std::min(0.25, 2.0 / std::max(8.0, opt.refine_scale));
    // phase along the ray advances at |Im direction| * log_scale per unit length
    const double rate = std::sin(M_PI / 8.0) * std::max(1.0, opt.log_scale);
    const double h_cap = std::max(0.5, opt.panel_phase / rate);
    Contour gamma = detail::ray_pair_contour(xg, ang_g, Tg, h_min, h_cap);
    Contour tilde = detail::ray_pair_contour(xt, ang_t, Tt, h_min, h_cap);
    return {gamma, tilde};
}

// ---------------------------------------------------------------------------
// Steepest-descent contour system
// ---------------------------------------------------------------------------

// Five contours around the bent cut [b1,0] u [0,b2]. Members s1/s2 carry the
// upper-triangular jump and s3/s4 the lower-triangular one; for Im b1 < 0 the
// whole layout is mirrored into the lower half plane with roles preserved.
struct SigmaContours {
    Contour s1, s2, s3, s4, s5;
    bool mirrored = false;
    Cd b1, b2;
    double eps = 0.0;
};

inline SigmaContours build_sigma_contours(Cd b1, Cd b2, double eps,
                                          double ray_length = 64.0) {
    if (!(eps > 0.0 && eps < M_PI / 10.0))
        throw Error("build_sigma_contours: need 0 < eps < pi/10");
    if (num::cabs(b2 + num::conj(b1)) > 1e-10 * num::cabs(b2))
        throw Error("build_sigma_contours: endpoints must satisfy b2 = -conj(b1)");

    const bool mirrored = b1.im < 0.0;
    const Cd w2 = mirrored ? num::conj(b2) : b2;
    const Cd w1 = mirrored ? num::conj(b1) : b1;
    const double phi = num::carg(w2);

    auto ray = [&](Cd from, double angle, bool inward) {
        Cd dir{std::cos(angle), std::sin(angle)};
        Cd far = from + dir * ray_length;
        Contour c = inward ? make_polyline({far, from}) : make_polyline({from, far});
        return c;
    };

    // standard (upper half plane) layout
    Contour c1 = ray(w1, M_PI - phi - eps, true);
    Contour c2 = ray(w2, phi + eps, false);
    Contour c3 = ray(w1, M_PI + eps, true);
    Contour c4 = ray(w2, -eps, false);
    Contour c5 = make_polyline({w1, Cd{0.0, 0.0}, w2});

    SigmaContours out;
    out.mirrored = mirrored;
    out.b1 = b1;
    out.b2 = b2;
    out.eps = eps;
    if (!mirrored) {
        out.s1 = c1; out.s2 = c2; out.s3 = c3; out.s4 = c4; out.s5 = c5;
    } else {
        auto conj_contour = [](const Contour& c) {
            Contour o = c;
            for (auto& seg : o.segments) {
                seg.a = num::conj(seg.a);
                seg.b = num::conj(seg.b);
            }
            return o;
        };
        // mirror and swap so that s1/s2 keep the upper-triangular jump role
        out.s1 = conj_contour(c3);
        out.s2 = conj_contour(c4);
        out.s3 = conj_contour(c1);
        out.s4 = conj_contour(c2);
        out.s5 = conj_contour(c5);
    }
    return out;
}

} // namespace hardedge
