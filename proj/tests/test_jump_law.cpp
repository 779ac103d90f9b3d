#include <doctest.h>

#include <cmath>

#include "cpexp/errors.hpp"
#include "cpexp/jump_law.hpp"
#include "cpexp/rng.hpp"

using namespace cpexp;

namespace {

Complex num(const JumpLaw& law, Complex p) {
    Complex acc = 0.0;
    const auto& coeffs = law.numerator();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * p + *it;
    return acc;
}

Complex den(const JumpLaw& law, Complex p) {
    Complex acc = 0.0;
    const auto& coeffs = law.denominator();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * p + *it;
    return acc;
}

}

TEST_CASE("jump law factories reject invalid parameters") {
    CHECK_THROWS_AS(JumpLaw::dirac(0.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::dirac(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::exponential(-2.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::erlang(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::erlang(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::hyper_exponential({0.5, 0.4}, {1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::hyper_exponential({0.5, 0.5}, {1.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::hyper_exponential({1.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::hyper_exponential({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(JumpLaw::hyper_exponential({0.5, 0.5}, {1.0, -2.0}),
                    std::invalid_argument);
}

TEST_CASE("transforms match the textbook forms") {
    const Complex p(0.7, -0.4);

    const auto expo = JumpLaw::exponential(1.3);
    CHECK(std::abs(expo.lt(p) - 1.3 / (1.3 + p)) < 1e-15);

    const auto erl = JumpLaw::erlang(3, 2.0);
    CHECK(std::abs(erl.lt(p) - std::pow(2.0 / (2.0 + p), 3)) < 1e-15);

    const auto hyper = JumpLaw::hyper_exponential({0.35, 0.65}, {0.9, 3.0});
    const Complex expected = 0.35 * 0.9 / (0.9 + p) + 0.65 * 3.0 / (3.0 + p);
    CHECK(std::abs(hyper.lt(p) - expected) < 1e-15);

    const auto point = JumpLaw::dirac(1.5);
    CHECK(std::abs(point.lt(p) - std::exp(-1.5 * p)) < 1e-15);
}

TEST_CASE("derivatives agree with central differences") {
    // the second difference divides roundoff by h^2, so it needs the
    // wider step
    const double h = 1e-6, h2 = 1e-4;
    for (const auto& law :
         {JumpLaw::exponential(1.3), JumpLaw::erlang(2, 1.1), JumpLaw::dirac(0.8),
          JumpLaw::hyper_exponential({0.35, 0.65}, {0.9, 3.0})}) {
        const Complex p(0.7, 0.2);
        const Complex d1 = (law.lt(p + h) - law.lt(p - h)) / (2.0 * h);
        const Complex d2 = (law.lt(p + h2) - 2.0 * law.lt(p) + law.lt(p - h2)) / (h2 * h2);
        CHECK(std::abs(law.lt_prime(p) - d1) < 1e-8);
        CHECK(std::abs(law.lt_second(p) - d2) < 1e-6);
    }
}

TEST_CASE("mean and abscissa") {
    CHECK(JumpLaw::exponential(1.3).mean() == doctest::Approx(1.0 / 1.3));
    CHECK(JumpLaw::erlang(3, 2.0).mean() == doctest::Approx(1.5));
    CHECK(JumpLaw::hyper_exponential({0.35, 0.65}, {0.9, 3.0}).mean() ==
          doctest::Approx(0.35 / 0.9 + 0.65 / 3.0));
    CHECK(JumpLaw::dirac(1.5).mean() == doctest::Approx(1.5));

    CHECK(JumpLaw::exponential(1.3).abscissa() == doctest::Approx(-1.3));
    CHECK(JumpLaw::erlang(3, 2.0).abscissa() == doctest::Approx(-2.0));
    CHECK(JumpLaw::hyper_exponential({0.35, 0.65}, {0.9, 3.0}).abscissa() ==
          doctest::Approx(-0.9));
    CHECK(JumpLaw::dirac(1.5).abscissa() ==
          -std::numeric_limits<double>::infinity());

    // lt_prime at zero is minus the mean
    for (const auto& law : {JumpLaw::exponential(1.3), JumpLaw::erlang(3, 2.0),
                            JumpLaw::dirac(1.5)})
        CHECK(law.lt_prime(0.0).real() == doctest::Approx(-law.mean()).epsilon(1e-12));
}

TEST_CASE("transform domain stops at the abscissa") {
    const auto expo = JumpLaw::exponential(1.3);
    CHECK_THROWS_AS(expo.lt(Complex(-1.3, 0.5)), domain_error);
    CHECK_THROWS_AS(expo.lt(Complex(-2.0, 0.0)), domain_error);
    CHECK_NOTHROW(expo.lt(Complex(-1.2, 5.0)));
    // a point mass transforms everywhere
    CHECK_NOTHROW(JumpLaw::dirac(1.5).lt(Complex(-50.0, 0.0)));
}

TEST_CASE("rational laws expose a matching fraction") {
    for (const auto& law :
         {JumpLaw::exponential(1.3), JumpLaw::erlang(3, 2.0),
          JumpLaw::hyper_exponential({0.35, 0.65}, {0.9, 3.0})}) {
        CHECK(law.rational());
        // monic denominator
        CHECK(law.denominator().back() == doctest::Approx(1.0));
        for (const Complex p : {Complex(0.4, 1.0), Complex(2.0, -0.3), Complex(0.0, 0.0)})
            CHECK(std::abs(num(law, p) / den(law, p) - law.lt(p)) < 1e-13);
    }

    CHECK_FALSE(JumpLaw::dirac(1.5).rational());
    CHECK_THROWS_AS(JumpLaw::dirac(1.5).numerator(), domain_error);
    CHECK_THROWS_AS(JumpLaw::dirac(1.5).poles(), domain_error);
}

TEST_CASE("pole lists carry rates and multiplicities") {
    const auto erl = JumpLaw::erlang(3, 2.0);
    REQUIRE(erl.poles().size() == 1);
    CHECK(erl.poles()[0].rate == doctest::Approx(2.0));
    CHECK(erl.poles()[0].multiplicity == 3);

    const auto hyper = JumpLaw::hyper_exponential({0.35, 0.65}, {0.9, 3.0});
    REQUIRE(hyper.poles().size() == 2);
    CHECK(hyper.poles()[0].multiplicity == 1);
    CHECK(hyper.poles()[1].multiplicity == 1);
}

TEST_CASE("sampling reproduces the mean") {
    const int n = 40000;
    struct Row {
        JumpLaw law;
        double variance;
    };
    const Row rows[] = {
        {JumpLaw::exponential(1.3), 1.0 / (1.3 * 1.3)},
        {JumpLaw::erlang(3, 2.0), 3.0 / 4.0},
        {JumpLaw::hyper_exponential({0.35, 0.65}, {0.9, 3.0}),
         2.0 * (0.35 / 0.81 + 0.65 / 9.0) -
             (0.35 / 0.9 + 0.65 / 3.0) * (0.35 / 0.9 + 0.65 / 3.0)},
    };
    std::uint64_t stream = 0;
    for (const auto& row : rows) {
        double acc = 0.0;
        PathRng rng(321, ++stream);
        for (int i = 0; i < n; ++i) acc += row.law.sample(rng);
        const double se = std::sqrt(row.variance / n);
        CHECK(std::abs(acc / n - row.law.mean()) < 5.0 * se);
    }

    PathRng rng(321, 99);
    for (int i = 0; i < 10; ++i) CHECK(JumpLaw::dirac(1.5).sample(rng) == 1.5);
}

TEST_CASE("descriptions name the family") {
    CHECK(JumpLaw::exponential(1.0).describe().find("exponential") != std::string::npos);
    CHECK(JumpLaw::erlang(2, 1.0).describe().find("erlang") != std::string::npos);
    CHECK(JumpLaw::dirac(1.0).describe().find("dirac") != std::string::npos);
    CHECK(JumpLaw::hyper_exponential({0.5, 0.5}, {1.0, 2.0}).describe().find("hyper") !=
          std::string::npos);
}
