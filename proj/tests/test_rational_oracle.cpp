#include <doctest.h>

#include <cmath>

#include "cpexp/errors.hpp"
#include "cpexp/inversion.hpp"
#include "cpexp/rational_oracle.hpp"
#include "cpexp/rng.hpp"

using namespace cpexp;

namespace {

ProcessParams symmetric() {
    return {2.0, 0.5, 1.0, JumpLaw::exponential(1.0)};
}

std::vector<ProcessParams> rational_grid() {
    return {
        symmetric(),
        {1.0, 0.3, 2.0, JumpLaw::exponential(0.8)},
        {3.0, 0.7, 0.9, JumpLaw::exponential(2.5)},
        {2.5, 0.45, 1.4, JumpLaw::erlang(2, 1.1)},
        {0.8, 0.6, 1.0, JumpLaw::erlang(3, 2.0)},
        {1.7, 0.55, 1.2, JumpLaw::hyper_exponential({0.35, 0.65}, {0.9, 3.0})},
    };
}

Complex eval(const std::vector<double>& ascending, Complex p) {
    Complex acc = 0.0;
    for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) acc = acc * p + *it;
    return acc;
}

}

TEST_CASE("symmetric case decomposes in closed form") {
    // R(p) = (1+p)/(3p^2 - 1): simple poles at +-1/sqrt(3)
    const double s = 1.0;
    const auto form = build_partial_fractions(symmetric(), s);
    const double root = 1.0 / std::sqrt(3.0);

    CHECK(form.root == doctest::Approx(root).epsilon(1e-14));
    REQUIRE(form.poles.size() == 2);
    CHECK(std::abs(form.poles[0] - root) < 1e-12);
    CHECK(std::abs(form.poles[1] + root) < 1e-12);

    CHECK(std::abs(form.residues[0] - (1.0 + root) / (6.0 * root)) < 1e-13);
    CHECK(std::abs(form.residues[1] - (1.0 - root) / (-6.0 * root)) < 1e-13);

    // r = D'(c) = 1 / residue at the root
    CHECK(form.root_factor == doctest::Approx(2.196152422706631).epsilon(1e-13));
    CHECK(form.root_factor * form.residues[0].real() == doctest::Approx(1.0));

    CHECK(std::abs(form.transform(2.0) - 3.0 / 11.0) < 1e-14);
}

TEST_CASE("decomposition invariants hold across families and drawn parameters") {
    PathRng g(77, 5);
    auto sets = rational_grid();
    for (int extra = 0; extra < 24; ++extra) {
        const double lambda = 0.3 + 3.0 * g.uniform();
        const double rate = 0.4 + 2.0 * g.uniform();
        const int pick = int(3.0 * g.uniform());
        JumpLaw eta = pick == 0   ? JumpLaw::exponential(rate)
                      : pick == 1 ? JumpLaw::erlang(1 + int(3.0 * g.uniform()), rate)
                                  : JumpLaw::hyper_exponential({0.4, 0.6},
                                                               {rate, rate + 1.3});
        sets.push_back({0.2 + 3.0 * g.uniform(), 0.05 + 0.9 * g.uniform(), lambda, eta});
    }

    for (const auto& params : sets) {
        const double s = 0.2 + 2.5 * g.uniform();
        const auto form = build_partial_fractions(params, s);

        CHECK(form.root > 0.0);
        CHECK(form.root < params.lambda);
        CHECK(std::abs(form.poles[0].imag()) == 0.0);
        for (std::size_t j = 1; j < form.poles.size(); ++j)
            CHECK(form.poles[j].real() < 0.0);

        // residues sum to the density at zero
        Complex sum = 0.0;
        for (const auto& r : form.residues) sum += r;
        CHECK(std::abs(sum - 1.0 / (params.c + s)) < 1e-9);

        // leading coefficient of the cleared denominator is c + s
        CHECK(form.cleared_denominator.back() ==
              doctest::Approx(params.c + s).epsilon(1e-10));

        // the fraction reproduces 1 / D at fresh complex points kept inside
        // the jump transform's convergence half-plane
        const double floor_re = params.eta.abscissa() + 0.05;
        for (int k = 0; k < 4; ++k) {
            Complex p(4.0 * g.uniform() - 1.0, 4.0 * g.uniform() - 2.0);
            if (p.real() < floor_re) p = Complex(floor_re, p.imag());
            const Complex d = resolvent_denominator(params, s, p);
            if (std::abs(d) < 1e-3) continue;
            CHECK(std::abs(form.transform(p) * d - 1.0) < 1e-8);
            // clearing: Q/P equals the transform
            CHECK(std::abs(eval(form.cleared_numerator, p) /
                               eval(form.cleared_denominator, p) -
                           form.transform(p)) < 1e-9 * std::abs(form.transform(p)) + 1e-12);
        }
    }
}

TEST_CASE("point-mass jump laws have no decomposition") {
    const ProcessParams params{2.0, 0.5, 1.0, JumpLaw::dirac(1.5)};
    CHECK_THROWS_AS(build_partial_fractions(params, 1.0), domain_error);
}

TEST_CASE("density and cumulative against hand-expanded forms") {
    const auto form = build_partial_fractions(symmetric(), 1.0);
    const double root = 1.0 / std::sqrt(3.0);
    const double r0 = (1.0 + root) / (6.0 * root);
    const double r1 = -(1.0 - root) / (6.0 * root);

    for (double x : {0.3, 1.0, 2.0, 5.0}) {
        const double density = r0 * std::exp(root * x) + r1 * std::exp(-root * x);
        const double cumulative = r0 * (std::exp(root * x) - 1.0) / root +
                                  r1 * (std::exp(-root * x) - 1.0) / (-root);
        CHECK(form.density(x) == doctest::Approx(density).epsilon(1e-13));
        CHECK(form.cumulative(x) == doctest::Approx(cumulative).epsilon(1e-13));
    }
    CHECK(form.density(1.0) == doctest::Approx(0.7426123027265015).epsilon(1e-14));
    CHECK(form.cumulative(1.0) == doctest::Approx(0.5235109986964116).epsilon(1e-14));
    CHECK(form.density(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(form.cumulative(0.0) == 0.0);
}

TEST_CASE("cumulative survives tiny arguments") {
    const auto form = build_partial_fractions(symmetric(), 1.0);
    // series branch, compare against density(0) * x to first order
    for (double x : {1e-8, 1e-6, 5e-5}) {
        CHECK(form.cumulative(x) == doctest::Approx(x / 3.0).epsilon(1e-4));
        CHECK(form.cumulative(x) > 0.0);
    }
    // continuity across the series / direct switch near |p x| = 1e-4
    const double lo = form.cumulative(1.7e-4), hi = form.cumulative(1.8e-4);
    CHECK(hi > lo);
    CHECK(hi - lo < 2e-4);
}

TEST_CASE("exponentially weighted tails in closed form and by parts") {
    const auto form = build_partial_fractions(symmetric(), 1.0);
    const double lambda = 1.0;
    for (double b : {0.5, 2.0, 4.0}) {
        // independent quadrature oracle
        const double tail_density = exp_tail_quadrature(
            [&](double u) { return std::exp(-lambda * u) * form.density(u); }, b,
            lambda - form.root, 1e-12, nullptr);
        const double tail_cumulative = exp_tail_quadrature(
            [&](double u) { return std::exp(-lambda * u) * form.cumulative(u); }, b,
            lambda - form.root, 1e-12, nullptr);
        CHECK(form.tail_exp_density(b) == doctest::Approx(tail_density).epsilon(1e-9));
        CHECK(form.tail_exp_cumulative(b) ==
              doctest::Approx(tail_cumulative).epsilon(1e-9));

        // integration by parts ties the two tails together
        const double by_parts =
            (std::exp(-lambda * b) * form.cumulative(b) + form.tail_exp_density(b)) / lambda;
        CHECK(form.tail_exp_cumulative(b) == doctest::Approx(by_parts).epsilon(1e-12));
    }
    CHECK(form.tail_exp_density(2.0) == doctest::Approx(0.45934609068734533).epsilon(1e-13));
    CHECK(form.tail_exp_cumulative(2.0) ==
          doctest::Approx(0.6717038310434666).epsilon(1e-13));
}

TEST_CASE("joint transform of the crossing pair at anchor points") {
    const auto form = build_partial_fractions(symmetric(), 1.0);
    const double root = 1.0 / std::sqrt(3.0);
    // from height zero: E[e^{-s tau}] = 1 - c(s), and at z = c(s) the
    // value collapses to 2 - sqrt(3)
    CHECK(form.joint_transform(0.0, 0.0).real() ==
          doctest::Approx(1.0 - root).epsilon(1e-12));
    CHECK(form.joint_transform(0.0, root).real() ==
          doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-12));
    CHECK(form.joint_transform(0.0, 0.0).imag() == doctest::Approx(0.0));
}

TEST_CASE("overshoot density integrates back to the joint transform") {
    for (const auto& params : {symmetric(),
                               ProcessParams{2.5, 0.45, 1.4, JumpLaw::erlang(2, 1.1)},
                               ProcessParams{1.7, 0.55, 1.2,
                                             JumpLaw::hyper_exponential({0.35, 0.65},
                                                                        {0.9, 3.0})}}) {
        const auto form = build_partial_fractions(params, 1.0);
        const double x = 1.0;
        for (double z : {0.0, 0.7}) {
            const double integral = exp_tail_quadrature(
                [&](double u) { return std::exp(-z * u) * form.overshoot_density(x, u); },
                0.0, 0.3, 1e-11, nullptr);
            CHECK(form.joint_transform(x, z).real() ==
                  doctest::Approx(integral).epsilon(1e-7));
        }
    }
}

TEST_CASE("memoryless upward jumps factor the overshoot out") {
    // with Exp(mu) upward jumps the overshoot is Exp(mu), independent of
    // the crossing time
    const auto form = build_partial_fractions(symmetric(), 1.0);
    for (double x : {0.0, 0.5, 1.5})
        for (double u : {0.2, 1.0, 3.0})
            CHECK(form.overshoot_density(x, u) ==
                  doctest::Approx(std::exp(-u) * form.joint_transform(x, 0.0).real())
                      .epsilon(1e-11));
}

TEST_CASE("head and tail splits add back up") {
    const auto form = build_partial_fractions(
        {2.5, 0.45, 1.4, JumpLaw::erlang(2, 1.1)}, 0.8);
    const double x = 0.7;
    for (double z : {0.0, 0.6})
        for (double b : {0.3, 1.1, 6.0}) {
            const double head = form.overshoot_head_lt(x, z, b);
            const double tail = form.overshoot_tail_lt(x, z, b);
            CHECK(head + tail ==
                  doctest::Approx(form.joint_transform(x, z).real()).epsilon(1e-10));
            CHECK(head >= 0.0);
            CHECK(tail >= 0.0);
        }
    CHECK(form.overshoot_head_lt(x, 0.3, 0.0) == doctest::Approx(0.0));
    CHECK(form.overshoot_tail_lt(x, 0.3, 40.0) ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("gamma-started quantities average the height-started ones") {
    // started from an independent Exp(lambda) height above the shift
    for (const auto& params : {symmetric(),
                               ProcessParams{2.5, 0.45, 1.4, JumpLaw::erlang(2, 1.1)}}) {
        const auto form = build_partial_fractions(params, 1.0);
        const double lambda = params.lambda, shift = 0.5;
        for (double z : {0.0, 0.3}) {
            const double averaged = exp_tail_quadrature(
                [&](double t) {
                    return lambda * std::exp(-lambda * t) *
                           form.joint_transform(shift + t, z).real();
                },
                0.0, lambda - form.root, 1e-11, nullptr);
            CHECK(form.joint_transform_gamma(shift, z).real() ==
                  doctest::Approx(averaged).epsilon(1e-8));
        }

        const double b = 1.2, z = 0.4;
        const double head_avg = exp_tail_quadrature(
            [&](double t) {
                return lambda * std::exp(-lambda * t) *
                       form.overshoot_head_lt(shift + t, z, b);
            },
            0.0, lambda - form.root, 1e-11, nullptr);
        CHECK(form.overshoot_head_lt_gamma(shift, z, b) ==
              doctest::Approx(head_avg).epsilon(1e-8));
        CHECK(form.overshoot_head_lt_gamma(shift, z, b) +
                  form.overshoot_tail_lt_gamma(shift, z, b) ==
              doctest::Approx(form.joint_transform_gamma(shift, z).real()).epsilon(1e-10));
    }
}

TEST_CASE("transform arguments at a jump pole are rejected") {
    const auto form = build_partial_fractions(
        {1.7, 0.55, 1.2, JumpLaw::hyper_exponential({0.35, 0.65}, {0.9, 3.0})}, 1.0);
    // z = -rate makes the exponential moment diverge
    CHECK_THROWS_AS(form.overshoot_head_lt(1.0, -0.9, 1.0), domain_error);
    CHECK_NOTHROW(form.overshoot_head_lt(1.0, -0.5, 1.0));
}
