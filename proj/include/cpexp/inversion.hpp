#pragma once

#include <complex>
#include <functional>
#include <variant>

#include "cpexp/tolerances.hpp"

namespace cpexp {

// Shifted Bromwich contour with trapezoidal discretisation.  Fields left
// at their sentinel values are chosen automatically: alpha from the
// rightmost singularity, the node count by doubling until two successive
// results agree.  Setting nodes and truncation pins a single fixed pass.
struct BromwichShifted {
    double alpha = 0.0;
    bool alpha_set = false;
    std::int64_t nodes = 0;
    double truncation = 0.0;
};

// Gaver-Stehfest on the real axis; order must be even and within [8, 20],
// the range where double precision retains significant digits.
struct GaverStehfest {
    int order = 14;
};

using InversionMethod = std::variant<BromwichShifted, GaverStehfest>;

// Inverts F at x > 0 (x = 0 allowed when F decays) along the contour
// Re p = alpha > rightmost_singularity.  A two-term large-p expansion of F
// is estimated on the real axis, inverted in closed form, and subtracted
// before discretisation, leaving an O(p^-3) remainder whose transform the
// trapezoid rule handles at spectral accuracy.  Throws convergence_error
// if doubling exhausts the node budget.
double bromwich_invert(const std::function<std::complex<double>(std::complex<double>)>& transform,
                       double x, double rightmost_singularity,
                       const BromwichShifted& method = {},
                       const Tolerances& tol = {});

// Inverts a transform known on the real axis only; needs smooth targets
// but no complex evaluations.  Used for time-domain survival curves.
double gaver_stehfest(const std::function<double(double)>& transform, double t,
                      const GaverStehfest& method = {});

// Integrates f over [lower, infinity) given that |f(u)| decays like
// exp(-decay * (u - lower)).  The envelope constant is estimated from a
// coarse scan, the tail truncated once it is below tol, and the remaining
// finite interval handled by adaptive Gauss-Kronrod.  A sample exceeding
// ten times the scanned envelope is reported through the optional
// diagnostics block and logged.
struct QuadratureDiag {
    bool envelope_exceeded = false;
    double envelope = 0.0;
    double truncation = 0.0;
};

double exp_tail_quadrature(const std::function<double(double)>& f, double lower,
                           double decay, double tol,
                           QuadratureDiag* diag = nullptr);

}
