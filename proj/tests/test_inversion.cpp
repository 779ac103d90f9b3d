#include <doctest.h>

#include <cmath>

#include "cpexp/errors.hpp"
#include "cpexp/inversion.hpp"
#include "cpexp/log.hpp"

using namespace cpexp;

namespace {

using Cd = std::complex<double>;

}

TEST_CASE("contour inversion recovers reference pairs") {
    const Tolerances tol;
    const BromwichShifted automatic;

    // 1/(p+1) -> e^{-x}
    for (double x : {0.0, 0.5, 2.0, 6.0}) {
        const double v = bromwich_invert([](Cd p) { return 1.0 / (p + 1.0); }, x, -1.0,
                                         automatic, tol);
        CHECK(v == doctest::Approx(std::exp(-x)).epsilon(1e-8));
    }

    // 1/p^2 -> x
    for (double x : {0.5, 1.0, 3.0}) {
        const double v = bromwich_invert([](Cd p) { return 1.0 / (p * p); }, x, 0.0,
                                         automatic, tol);
        CHECK(v == doctest::Approx(x).epsilon(1e-8));
    }

    // 1/(p^2+1) -> sin x, singularities on the imaginary axis
    for (double x : {0.7, 2.5}) {
        const double v = bromwich_invert([](Cd p) { return 1.0 / (p * p + 1.0); }, x, 0.0,
                                         automatic, tol);
        CHECK(v == doctest::Approx(std::sin(x)).epsilon(1e-7));
    }

    // pole right of zero: 2/(p-3) -> 2 e^{3x}
    const double v = bromwich_invert([](Cd p) { return 2.0 / (p - 3.0); }, 1.5, 3.0,
                                     automatic, tol);
    CHECK(v == doctest::Approx(2.0 * std::exp(4.5)).epsilon(1e-8));
}

TEST_CASE("fixed node counts make the quadrature a linear map") {
    const Tolerances tol;
    BromwichShifted fixed;
    fixed.nodes = 4000;
    fixed.truncation = 200.0;

    auto f = [](Cd p) { return 1.0 / (p + 1.0); };
    auto g = [](Cd p) { return 1.0 / (p * p + 4.0); };
    const double x = 1.2;
    const double vf = bromwich_invert(f, x, 0.0, fixed, tol);
    const double vg = bromwich_invert(g, x, 0.0, fixed, tol);
    const double vsum = bromwich_invert([&](Cd p) { return 3.0 * f(p) - 2.0 * g(p); }, x,
                                        0.0, fixed, tol);
    CHECK(vsum == doctest::Approx(3.0 * vf - 2.0 * vg).epsilon(1e-12));
}

TEST_CASE("contour placement is validated") {
    const Tolerances tol;
    BromwichShifted method;
    method.alpha = 0.5;
    method.alpha_set = true;
    CHECK_THROWS_AS(bromwich_invert([](Cd p) { return 1.0 / (p - 1.0); }, 1.0, 1.0,
                                    method, tol),
                    std::invalid_argument);
    CHECK_THROWS_AS(bromwich_invert([](Cd p) { return 1.0 / p; }, -1.0, 0.0,
                                    BromwichShifted{}, tol),
                    std::invalid_argument);
}

TEST_CASE("an exhausted node budget is reported, not papered over") {
    Tolerances tol;
    tol.bromwich_initial_nodes = 512;
    tol.bromwich_max_nodes = 512;  // one pass, nothing to compare against
    CHECK_THROWS_AS(bromwich_invert([](Cd p) { return 1.0 / (p + 1.0); }, 1.0, -1.0,
                                    BromwichShifted{}, tol),
                    convergence_error);
}

TEST_CASE("real-axis inversion recovers reference pairs") {
    const GaverStehfest method;  // default order
    CHECK(gaver_stehfest([](double p) { return 1.0 / p; }, 2.0, method) ==
          doctest::Approx(1.0).epsilon(1e-9));
    // Bounds below reflect the ladder's truncation error at each order
    // (checked against exact-rational weights), not roundoff: order 14
    // carries ~7.5e-5 relative error on exp(-2t) at t = 1.
    CHECK(gaver_stehfest([](double p) { return 1.0 / (p + 2.0); }, 1.0, method) ==
          doctest::Approx(std::exp(-2.0)).epsilon(2e-4));
    CHECK(gaver_stehfest([](double p) { return 1.0 / (p * p); }, 1.7, method) ==
          doctest::Approx(1.7).epsilon(2e-6));

    // Raising the order buys digits until the alternating weights (sum of
    // magnitudes ~8e12 at order 20) start amplifying double roundoff in
    // the transform values.
    auto rel_error = [](int order) {
        GaverStehfest m;
        m.order = order;
        const double got =
            gaver_stehfest([](double p) { return 1.0 / (p + 1.0); }, 0.8, m);
        return std::abs(got - std::exp(-0.8)) / std::exp(-0.8);
    };
    const double coarse = rel_error(8);
    const double mid = rel_error(12);
    CHECK(coarse < 5e-3);
    CHECK(mid < 5e-5);
    CHECK(mid < coarse);
    CHECK(rel_error(20) < 1e-4);
}

TEST_CASE("real-axis inversion validates its order and argument") {
    for (int order : {7, 9, 6, 22, 0, -4}) {
        GaverStehfest m;
        m.order = order;
        CHECK_THROWS_AS(gaver_stehfest([](double p) { return 1.0 / p; }, 1.0, m),
                        std::invalid_argument);
    }
    CHECK_THROWS_AS(gaver_stehfest([](double p) { return 1.0 / p; }, 0.0, GaverStehfest{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(gaver_stehfest([](double p) { return 1.0 / p; }, -1.0, GaverStehfest{}),
                    std::invalid_argument);
}

TEST_CASE("order changes refresh the cached weights") {
    GaverStehfest a{8}, b{14};
    const double first = gaver_stehfest([](double p) { return 1.0 / (p + 1.0); }, 1.0, a);
    gaver_stehfest([](double p) { return 1.0 / (p + 1.0); }, 1.0, b);
    const double again = gaver_stehfest([](double p) { return 1.0 / (p + 1.0); }, 1.0, a);
    CHECK(first == again);
}

TEST_CASE("exponential tail quadrature matches closed forms") {
    QuadratureDiag diag;
    const double v =
        exp_tail_quadrature([](double u) { return std::exp(-2.0 * u); }, 1.5, 2.0, 1e-10,
                            &diag);
    CHECK(v == doctest::Approx(std::exp(-3.0) / 2.0).epsilon(1e-9));
    CHECK_FALSE(diag.envelope_exceeded);
    CHECK(diag.envelope > 0.0);
    CHECK(diag.truncation > 1.5);

    // oscillating integrand under the same envelope
    const double w = exp_tail_quadrature(
        [](double u) { return std::exp(-u) * std::cos(3.0 * u); }, 0.0, 1.0, 1e-10,
        nullptr);
    CHECK(w == doctest::Approx(1.0 / 10.0).epsilon(1e-8));
}

TEST_CASE("tail quadrature validates its inputs") {
    auto f = [](double) { return 1.0; };
    CHECK_THROWS_AS(exp_tail_quadrature(f, 0.0, 0.0, 1e-8, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(exp_tail_quadrature(f, 0.0, -1.0, 1e-8, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(exp_tail_quadrature(f, 0.0, 1.0, 0.0, nullptr), std::invalid_argument);
}

TEST_CASE("an integrand that evades the envelope scan is flagged") {
    // zero at every scan node, nonzero in between: the scanned envelope is
    // zero, so any interior evaluation must trip the diagnostic
    const double lower = 0.0, decay = 1.0;
    const double scan_step = (40.0 / decay) / 16.0;
    auto sneaky = [&](double u) {
        const double frac = (u - lower) / scan_step;
        return std::abs(frac - std::round(frac)) < 1e-9 ? 0.0 : 1e-6;
    };
    const auto saved = LogLevel::warn;
    set_log_level(LogLevel::off);
    QuadratureDiag diag;
    exp_tail_quadrature(sneaky, lower, decay, 1e-8, &diag);
    set_log_level(saved);
    CHECK(diag.envelope_exceeded);
    CHECK(diag.envelope == 0.0);
}
