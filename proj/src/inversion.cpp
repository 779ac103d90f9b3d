#include "cpexp/inversion.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cpexp/compensated.hpp"
#include "cpexp/errors.hpp"
#include "cpexp/log.hpp"

namespace cpexp {

namespace {

using Cd = std::complex<double>;

}

double bromwich_invert(const std::function<Cd(Cd)>& transform, double x,
                       double rightmost_singularity, const BromwichShifted& method,
                       const Tolerances& tol) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("bromwich_invert: x must be finite and nonnegative");
    if (!std::isfinite(rightmost_singularity))
        throw std::invalid_argument("bromwich_invert: rightmost singularity must be finite");

    double alpha;
    if (method.alpha_set) {
        alpha = method.alpha;
        if (!(alpha > rightmost_singularity))
            throw std::invalid_argument("bromwich_invert: contour must lie right of the singularities");
    } else {
        alpha = rightmost_singularity + std::max(0.5, std::abs(rightmost_singularity));
    }
    const double margin = alpha - rightmost_singularity;

    // Two leading terms of F for large real p, by Richardson on the real
    // axis: F ~ f0/p + f1/p^2.  Subtracting their transform leaves an
    // O(p^-3) integrand; the closed-form part is added back at the end.
    // The subtraction poles sit at the rightmost singularity so that the
    // remainder keeps the full contour margin (placing them closer to the
    // contour would shrink the discretisation decay to that distance).
    const double q0 = 1e6 * std::max(1.0, std::abs(alpha));
    const Cd y1 = q0 * transform(Cd(q0, 0.0));
    const Cd y2 = 2.0 * q0 * transform(Cd(2.0 * q0, 0.0));
    const double f0 = (2.0 * y2 - y1).real();
    const double f1 = (2.0 * q0 * (y1 - y2)).real();
    const double sigma = rightmost_singularity;
    const double f1t = f1 - f0 * sigma;

    auto remainder = [&](Cd p) -> Cd {
        const Cd d = p - sigma;
        return transform(p) - f0 / d - f1t / (d * d);
    };
    const double closed_part = f0 * std::exp(sigma * x) + f1t * x * std::exp(sigma * x);

    // Folded trapezoid on the contour alpha + i omega, conjugate symmetry
    // halving the work.  The step keeps the discretisation alias at
    // exp(-alias_exponent).
    auto node = [&](std::int64_t k, double h) {
        const double w = double(k) * h;
        const Cd g = remainder(Cd(alpha, w));
        const double val = g.real() * std::cos(w * x) - g.imag() * std::sin(w * x);
        return k == 0 ? 0.5 * val : val;
    };

    if (method.nodes > 0 && method.truncation > 0.0) {
        const double h = method.truncation / double(method.nodes);
        Compensated acc;
        for (std::int64_t k = 0; k <= method.nodes; ++k) acc.add(node(k, h));
        return std::exp(alpha * x) / std::numbers::pi * h * acc.value() + closed_part;
    }

    const double h = 2.0 * std::numbers::pi * margin / tol.alias_exponent;
    Compensated acc;
    std::int64_t n = 0;
    double previous = 0.0;
    bool have_previous = false;
    for (std::int64_t target = tol.bromwich_initial_nodes;
         target <= tol.bromwich_max_nodes; target *= 2) {
        for (; n <= target; ++n) acc.add(node(n, h));
        const double current =
            std::exp(alpha * x) / std::numbers::pi * h * acc.value() + closed_part;
        if (have_previous &&
            std::abs(current - previous) <=
                std::max(tol.bromwich_abs, tol.bromwich_rel * std::abs(current)))
            return current;
        previous = current;
        have_previous = true;
    }
    throw convergence_error("bromwich_invert: node budget exhausted without agreement");
}

double gaver_stehfest(const std::function<double(double)>& transform, double t,
                      const GaverStehfest& method) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::invalid_argument("gaver_stehfest: t must be positive and finite");
    const int m = method.order;
    if (m < 8 || m > 20 || m % 2 != 0)
        throw std::invalid_argument(
            "gaver_stehfest: order must be even and within [8, 20] to keep significant digits");

    // Exact factorial weights in extended precision.
    static thread_local int cached_order = 0;
    static thread_local std::vector<long double> weights;
    if (cached_order != m) {
        std::vector<long double> fact(std::size_t(m) + 1, 1.0L);
        for (int i = 1; i <= m; ++i) fact[std::size_t(i)] = fact[std::size_t(i) - 1] * i;
        const int half = m / 2;
        weights.assign(std::size_t(m) + 1, 0.0L);
        for (int k = 1; k <= m; ++k) {
            long double acc = 0.0L;
            for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
                long double term = std::pow((long double)j, half) * fact[std::size_t(2 * j)];
                term /= fact[std::size_t(half - j)] * fact[std::size_t(j)] *
                        fact[std::size_t(j - 1)] * fact[std::size_t(k - j)] *
                        fact[std::size_t(2 * j - k)];
                acc += term;
            }
            weights[std::size_t(k)] = ((k + half) % 2 == 0 ? acc : -acc);
        }
        cached_order = m;
    }

    const long double ln2_over_t = std::numbers::ln2_v<long double> / t;
    long double acc = 0.0L;
    for (int k = 1; k <= m; ++k)
        acc += weights[std::size_t(k)] * (long double)transform(double(ln2_over_t * k));
    return double(ln2_over_t * acc);
}

double exp_tail_quadrature(const std::function<double(double)>& f, double lower,
                           double decay, double tol, QuadratureDiag* diag) {
    if (!(decay > 0.0) || !std::isfinite(decay))
        throw std::invalid_argument("exp_tail_quadrature: decay rate must be positive");
    if (!(tol > 0.0))
        throw std::invalid_argument("exp_tail_quadrature: tolerance must be positive");
    if (!std::isfinite(lower))
        throw std::invalid_argument("exp_tail_quadrature: lower limit must be finite");

    const double lengths = Tolerances{}.tail_lengths;

    // Coarse scan for the envelope constant of |f(u)| exp(decay (u - lower)).
    double envelope = 0.0;
    const int scan_points = 17;
    for (int i = 0; i < scan_points; ++i) {
        const double u = lower + lengths / decay * i / (scan_points - 1);
        envelope = std::max(envelope, std::abs(f(u)) * std::exp(decay * (u - lower)));
    }

    // With the envelope in force the discarded tail mass is below tol of
    // the envelope integral; cap at the configured number of decay lengths.
    const double span = std::min(lengths, std::log(2.0 / std::min(tol, 0.5))) / decay;
    bool exceeded = false;
    auto wrapped = [&](double u) {
        const double v = f(u);
        if (std::abs(v) > 10.0 * envelope * std::exp(-decay * (u - lower)) &&
            std::abs(v) > 1e-300)
            exceeded = true;
        return v;
    };
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        wrapped, lower, lower + span, 15, tol);

    if (exceeded)
        log_warn("exp_tail_quadrature: integrand exceeded ten times the scanned envelope; "
                 "declared decay rate is suspect");
    if (diag) {
        diag->envelope_exceeded = exceeded;
        diag->envelope = envelope;
        diag->truncation = lower + span;
    }
    return value;
}

}
