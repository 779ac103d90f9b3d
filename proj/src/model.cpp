#include "cpexp/model.hpp"

#include <cmath>
#include <stdexcept>

#include "cpexp/errors.hpp"

namespace cpexp {

ProcessParams::ProcessParams(double c_, double a_, double lambda_, JumpLaw eta_)
    : c(c_), a(a_), lambda(lambda_), eta(std::move(eta_)) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("process: jump intensity c must be positive and finite");
    if (!(a > 0.0) || !(a < 1.0))
        throw std::invalid_argument("process: mixing probability a must lie in (0, 1)");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("process: negative-jump rate lambda must be positive and finite");
}

Complex laplace_exponent(const ProcessParams& params, Complex p, const Tolerances& tol) {
    if (std::abs(p - params.lambda) <= tol.pole_guard_rel * params.lambda)
        throw domain_error("laplace exponent evaluated inside the guard band around its pole");
    return params.a1() * p / (params.lambda - p) + params.a2() * (params.eta.lt(p) - 1.0);
}

Complex laplace_exponent_prime(const ProcessParams& params, Complex p, const Tolerances& tol) {
    if (std::abs(p - params.lambda) <= tol.pole_guard_rel * params.lambda)
        throw domain_error("laplace exponent evaluated inside the guard band around its pole");
    const Complex d = params.lambda - p;
    return params.a1() * params.lambda / (d * d) + params.a2() * params.eta.lt_prime(p);
}

Complex resolvent_denominator(const ProcessParams& params, double s, Complex p) {
    return params.a1() * p +
           (p - params.lambda) * (s + params.a2() * (1.0 - params.eta.lt(p)));
}

Complex resolvent_denominator_prime(const ProcessParams& params, double s, Complex p) {
    return params.a1() + s + params.a2() * (1.0 - params.eta.lt(p)) -
           (p - params.lambda) * params.a2() * params.eta.lt_prime(p);
}

Complex resolvent_denominator_second(const ProcessParams& params, double s, Complex p) {
    (void)s;
    return -2.0 * params.a2() * params.eta.lt_prime(p) -
           (p - params.lambda) * params.a2() * params.eta.lt_second(p);
}

}
