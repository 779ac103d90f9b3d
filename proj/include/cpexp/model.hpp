#pragma once

#include "cpexp/jump_law.hpp"
#include "cpexp/tolerances.hpp"

namespace cpexp {

// Compound Poisson process with exponentially distributed negative jumps:
// events arrive at rate c; each is a downward Exp(lambda) jump with
// probability a, otherwise an upward jump drawn from eta.  There is no
// diffusion part, so paths are piecewise constant between jumps.
struct ProcessParams {
    double c;
    double a;
    double lambda;
    JumpLaw eta;

    ProcessParams(double c_, double a_, double lambda_, JumpLaw eta_);

    // Rate split between the negative and positive components.
    double a1() const { return a * c; }
    double a2() const { return (1.0 - a) * c; }
};

// Cumulant k(p) = log E[exp(-p X_1)] / t for the process above:
//   k(p) = a1 * p / (lambda - p) + a2 * (lt_eta(p) - 1).
// Analytic on Re(p) > eta abscissa except for the pole at lambda; the
// guard band around the pole is pole_guard_rel * lambda wide.
Complex laplace_exponent(const ProcessParams& params, Complex p,
                         const Tolerances& tol = {});
Complex laplace_exponent_prime(const ProcessParams& params, Complex p,
                               const Tolerances& tol = {});

// Entire denominator D of the resolvent transform:
//   D(p) = a1 p + (p - lambda) * (s + a2 * (1 - lt_eta(p)))
//        = (lambda - p) * (k(p) - s),
// with the pole at lambda cancelled.  Its rightmost zero is the root c(s).
Complex resolvent_denominator(const ProcessParams& params, double s, Complex p);
Complex resolvent_denominator_prime(const ProcessParams& params, double s, Complex p);
Complex resolvent_denominator_second(const ProcessParams& params, double s, Complex p);

}
