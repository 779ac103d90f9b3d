#include "cpexp/one_boundary.hpp"

#include <cmath>
#include <stdexcept>

#include "cpexp/errors.hpp"

namespace cpexp {

namespace {

void require_height(double x) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("passage functional: height must be finite and nonnegative");
}

}

double down_transform(const ResolventContext& ctx, double x) {
    require_height(x);
    const double c = ctx.root();
    return (1.0 - c / ctx.params().lambda) * std::exp(-x * c);
}

double up_transform(const ResolventContext& ctx, double x) {
    require_height(x);
    const double sl = ctx.s() * ctx.params().lambda;
    return 1.0 - sl / ctx.root() * ctx.density(x) + sl * ctx.cumulative(x);
}

double up_transform_at_root(const ResolventContext& ctx, double x) {
    require_height(x);
    return 1.0 - std::exp(-ctx.root() * x) * ctx.density(x) * ctx.root_factor();
}

Complex up_joint_double_lt(const ResolventContext& ctx, Complex p, Complex z) {
    if (!(p.real() > std::max(0.0, ctx.root() - z.real())))
        throw domain_error("double transform requires Re p > max(0, c(s) - Re z)");
    // q(z)/q(p+z) with q(w) = D(w)/(w - c); both factors continued through
    // the removable point at the root.
    const Complex ratio = ctx.pole_scaled_transform(p + z) / ctx.pole_scaled_transform(z);
    return (1.0 - ratio) / p;
}

double up_position_lt(const ResolventContext& ctx, double x, double z) {
    require_height(x);
    // joint_transform carries e^{-z overshoot} alone; the crossing position
    // adds the level itself
    if (ctx.exact())
        return std::exp(-z * x) * ctx.form().joint_transform(x, Complex(z, 0.0)).real();
    return up_position_lt(ctx, x, z, BromwichShifted{});
}

double up_position_lt(const ResolventContext& ctx, double x, double z,
                      const BromwichShifted& method) {
    require_height(x);
    const double rightmost = std::max(0.0, ctx.root() - z);
    auto f = [&](Complex p) { return up_joint_double_lt(ctx, p, Complex(z, 0.0)); };
    return bromwich_invert(f, x, rightmost, method, ctx.tol());
}

Complex sup_window_lt(const ResolventContext& ctx, Complex p) {
    if (!(p.real() >= 0.0))
        throw domain_error("supremum transform requires Re p >= 0");
    const double sl = ctx.s() * ctx.params().lambda;
    return sl / ctx.root() * ctx.pole_scaled_transform(p);
}

Complex inf_window_lt(const ResolventContext& ctx, Complex p) {
    if (!(p.real() <= 0.0))
        throw domain_error("infimum transform requires Re p <= 0");
    const double c = ctx.root();
    return c / ctx.params().lambda * (ctx.params().lambda - p) / (c - p);
}

double sup_window_atom(const ResolventContext& ctx) {
    // p -> infinity limit of the supremum transform.
    return ctx.s() * ctx.params().lambda /
           (ctx.root() * (ctx.params().c + ctx.s()));
}

double inf_window_atom(const ResolventContext& ctx) {
    return ctx.root() / ctx.params().lambda;
}

}
