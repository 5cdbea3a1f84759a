#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hardedge/kernels.hpp"

using namespace hardedge;

namespace {

KernelEvaluator<double> evaluator_for(const ModelParams& p, double x_max = 4.0,
                                      KernelMode mode = KernelMode::Separable) {
    KernelOptions o;
    o.mode = mode;
    o.x_max = x_max;
    return make_kernel_evaluator<double>(p, o);
}

} // namespace

TEST_CASE("Bessel reduction of the theta=1 kernel") {
    for (double alpha : {0.0, 0.5, 1.0}) {
        auto ev = evaluator_for(make_muttalib_borodin(alpha, 1.0), 2.0);
        double worst = 0.0;
        for (double x : {0.1, 0.5, 1.0, 2.0}) {
            for (double y : {0.1, 0.5, 1.0, 2.0}) {
                double lhs = kernel_eval(x, y, ev).value;
                double rhs = 4.0 * bessel_kernel(4.0 * x, 4.0 * y, alpha);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        INFO("alpha = " << alpha);
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("product kernel at r=1 matches the gauged Bessel form") {
    double alpha = 1.0;
    auto ev = evaluator_for(make_ginibre_product(1, {alpha}), 2.0);
    double worst = 0.0;
    for (double x : {0.2, 0.7, 1.6}) {
        for (double y : {0.3, 1.1, 2.0}) {
            double lhs = kernel_eval(x, y, ev).value;
            double rhs = 4.0 * std::pow(y / x, alpha / 2.0) *
                         bessel_kernel(4.0 * x, 4.0 * y, alpha);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("separable route agrees with the direct double sum") {
    std::vector<ModelParams> models = {
        make_ginibre_product(2, {0.0, 0.0}),
        make_truncated_unitary(2, {0.0, 0.0}, 1, {1.0}),
        make_muttalib_borodin(0.5, 0.5),
    };
    for (const auto& p : models) {
        auto sep = evaluator_for(p, 2.0);
        auto dbl = evaluator_for(p, 2.0, KernelMode::DirectDouble);
        double worst = 0.0;
        for (double x : {0.2, 0.6, 1.0, 1.5, 2.0}) {
            for (double y : {0.25, 0.7, 1.05, 1.55, 1.95}) {
                worst = std::max(worst, std::abs(kernel_eval(x, y, sep).value -
                                                 kernel_eval(x, y, dbl).value));
            }
        }
        INFO(to_string(p.variant));
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("reality and symmetry") {
    auto ev = evaluator_for(make_muttalib_borodin(0.0, 1.0), 2.0);
    double worst_sym = 0.0, worst_im = 0.0;
    for (double x : {0.2, 0.9, 1.7}) {
        for (double y : {0.4, 1.2, 2.0}) {
            auto kxy = kernel_eval(x, y, ev);
            auto kyx = kernel_eval(y, x, ev);
            worst_sym = std::max(worst_sym, std::abs(kxy.value - kyx.value));
            worst_im = std::max(worst_im, kxy.imag_residual);
        }
    }
    CHECK(worst_sym < 1e-10);
    CHECK(worst_im < 1e-9);
}

TEST_CASE("p/q transforms against Wright closed forms (variant 3)") {
    double alpha = 0.5, theta = 0.5;
    auto ev = evaluator_for(make_muttalib_borodin(alpha, theta), 2.0);
    SECTION("P(xi) = xi^{a/2} J_{(a+1)/th, 1/th}(xi)") {
        for (double xi : {0.5, 1.0, 2.0}) {
            double want = std::pow(xi, alpha / 2.0) *
                          wright_bessel((alpha + 1.0) / theta, 1.0 / theta, xi);
            CHECK(std::abs(p_transform(xi, ev) - want) < 1e-10);
        }
    }
    SECTION("Q(eta) = th eta^{a/2} J_{a+1, th}(eta^th)") {
        for (double eta : {0.5, 1.0, 2.0}) {
            double want = theta * std::pow(eta, alpha / 2.0) *
                          wright_bessel(alpha + 1.0, theta, std::pow(eta, theta));
            CHECK(std::abs(q_transform(eta, ev) - want) < 1e-10);
        }
    }
    SECTION("large-xi decay is monotone on a log grid") {
        auto ev2 = evaluator_for(make_muttalib_borodin(0.0, 1.0), 80.0);
        // envelope estimate: max |P| over one oscillation period around xi
        auto envelope = [&](double xi) {
            double mag = 0.0;
            double s0 = std::sqrt(xi);
            for (int k = 0; k <= 12; ++k) {
                double s = s0 + M_PI * k / 12.0;
                mag = std::max(mag, std::abs(p_transform(s * s, ev2)));
            }
            return mag;
        };
        double prev = 1e300;
        for (double xi : {4.0, 16.0, 64.0}) {
            double mag = envelope(xi);
            CHECK(mag < prev);
            prev = mag;
        }
    }
}

TEST_CASE("Wright-series kernel oracle (variant 3)") {
    SECTION("theta = 1 reduces to the Bessel form") {
        for (double x : {0.3, 1.0}) {
            for (double y : {0.4, 1.7}) {
                double lhs = kernel3_wright(x, y, 0.0, 1.0);
                double rhs = 4.0 * bessel_kernel(4.0 * x, 4.0 * y, 0.0);
                CHECK(std::abs(lhs - rhs) < 1e-10);
            }
        }
    }
    SECTION("theta = 2 agrees with the contour evaluation") {
        auto ev = evaluator_for(make_muttalib_borodin(0.0, 2.0), 1.0);
        double lhs = kernel3_wright(0.3, 0.7, 0.0, 2.0);
        double rhs = kernel_eval(0.3, 0.7, ev).value;
        CHECK(std::abs(lhs - rhs) < 1e-8);
    }
    SECTION("small-x scaling K(x,x) ~ x^alpha") {
        double alpha = 0.5;
        auto ev = evaluator_for(make_muttalib_borodin(alpha, 0.8), 1.0);
        // slope of ln K(x,x) vs ln x over two decades
        double x1 = 1e-4, x2 = 1e-2;
        double k1 = kernel_eval(x1, x1, ev).value;
        double k2 = kernel_eval(x2, x2, ev).value;
        double slope = (std::log(k2) - std::log(k1)) / (std::log(x2) - std::log(x1));
        CHECK(std::abs(slope - alpha) < 0.02 * std::max(alpha, 1.0));
    }
}

TEST_CASE("contour robustness within the admissible window") {
    auto p = make_muttalib_borodin(0.5, 0.5);
    KernelOptions o1, o2, o3;
    o1.margin = 0.25;
    o2.margin = 0.35;
    o3.margin = 0.45;
    o1.x_max = o2.x_max = o3.x_max = 2.0;
    auto e1 = make_kernel_evaluator<double>(p, o1);
    auto e2 = make_kernel_evaluator<double>(p, o2);
    auto e3 = make_kernel_evaluator<double>(p, o3);
    for (double x : {0.4, 1.3}) {
        double k1 = kernel_eval(x, 0.8, e1).value;
        double k2 = kernel_eval(x, 0.8, e2).value;
        double k3 = kernel_eval(x, 0.8, e3).value;
        CHECK(std::abs(k1 - k2) < 1e-10);
        CHECK(std::abs(k2 - k3) < 1e-10);
    }
}

TEST_CASE("finite-n kernels") {
    SECTION("n=1 Laguerre projector, gauge-invariant checks") {
        auto p = make_ginibre_product(1, {0.0});
        KernelOptions o;
        o.finite_n = 1;
        o.x_max = 3.0;
        auto ev = make_kernel_evaluator<double>(p, o);
        for (double x : {0.3, 1.0, 2.2}) {
            for (double y : {0.5, 1.4}) {
                double kxy = kernel_eval(x, y, ev).value;
                double kyx = kernel_eval(y, x, ev).value;
                // K1(x,y) K1(y,x) = e^{-(x+y)} and K1(x,x) = e^{-x}
                CHECK(std::abs(kxy * kyx - std::exp(-(x + y))) < 1e-9);
            }
            CHECK(std::abs(kernel_eval(x, x, ev).value - std::exp(-x)) < 1e-9);
        }
    }
    SECTION("variant 3 kernel at theta=1 is Hermitian up to gauge") {
        // The double-contour normalization carries a diagonal gauge, so test
        // the gauge-invariant form: symmetrizability is equivalent to the
        // cycle identity K(x,y)K(y,z)K(z,x) = K(x,z)K(z,y)K(y,x).
        auto p = make_muttalib_borodin(0.7, 1.0);
        KernelOptions o;
        o.finite_n = 3;
        o.x_max = 2.0;
        auto ev = make_kernel_evaluator<double>(p, o);
        const double pts[3] = {0.3, 0.8, 1.5};
        auto k = [&](double x, double y) { return kernel_eval(x, y, ev).value; };
        double lhs = k(pts[0], pts[1]) * k(pts[1], pts[2]) * k(pts[2], pts[0]);
        double rhs = k(pts[0], pts[2]) * k(pts[2], pts[1]) * k(pts[1], pts[0]);
        CHECK(std::abs(lhs - rhs) < 1e-10 * (std::abs(lhs) + std::abs(rhs) + 1e-12));
        // and K(x,y)K(y,x) > 0 so a real symmetrizing gauge exists
        CHECK(k(pts[0], pts[1]) * k(pts[1], pts[0]) > 0.0);
    }
    SECTION("integer-parameter guard") {
        auto p = make_ginibre_product(1, {0.5});
        KernelOptions o;
        o.finite_n = 4;
        CHECK_THROWS_AS(make_kernel_evaluator<double>(p, o), AdmissibilityError);
    }
}

TEST_CASE("scaled finite-n kernels converge to the limit") {
    std::vector<std::pair<double, double>> grid;
    for (double x : {0.5, 1.0, 1.5, 2.0})
        for (double y : {0.5, 1.0, 1.5, 2.0}) grid.emplace_back(x, y);

    SECTION("variant 1, r=1, nu=0") {
        auto rep = convergence_study(make_ginibre_product(1, {0.0}), {10, 20, 40}, grid);
        REQUIRE(rep.sup_err.size() == 3);
        CHECK(rep.sup_err[1] < rep.sup_err[0]);
        CHECK(rep.sup_err[2] < rep.sup_err[1]);
        CHECK(rep.sup_err[2] / rep.sup_err[1] < 0.6);
    }
    SECTION("variant 3, theta=1") {
        auto rep = convergence_study(make_muttalib_borodin(0.0, 1.0), {10, 20, 40}, grid);
        CHECK(rep.sup_err[2] < rep.sup_err[1]);
        CHECK(rep.sup_err[1] < rep.sup_err[0]);
    }
    SECTION("determinism") {
        auto r1 = convergence_study(make_ginibre_product(1, {0.0}), {8, 16}, grid);
        auto r2 = convergence_study(make_ginibre_product(1, {0.0}), {8, 16}, grid);
        CHECK(r1.sup_err == r2.sup_err);
    }
}
