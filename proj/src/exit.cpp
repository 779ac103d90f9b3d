#include "cpexp/exit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cpexp/errors.hpp"

namespace cpexp {

ExitQuery::ExitQuery(double band_, double start_) : band(band_), start(start_) {
    if (!(band > 0.0) || !std::isfinite(band))
        throw std::invalid_argument("exit query: band width must be positive and finite");
    if (!(start >= 0.0) || !(start <= band))
        throw std::invalid_argument("exit query: start must lie in [0, band]");
}

double k_factor(const ResolventContext& ctx, double band) {
    const double lambda = ctx.params().lambda;
    const double c = ctx.root();
    const double tail = ctx.integrals(0.0, band).tail_exp_density;
    return (lambda - c) * ctx.root_factor() * std::exp(band * (lambda - c)) * tail;
}

double k_factor_quadrature(const ResolventContext& ctx, double band) {
    // One excursion cycle: drop below the band floor, then climb back over
    // the ceiling from depth u ~ Exp(lambda).  The position-discounted
    // climb transform is rescaled by e^{c x} at x = u + band to discount
    // the overshoot alone.
    const double lambda = ctx.params().lambda;
    const double c = ctx.root();
    const double climb = exp_tail_quadrature(
        [&](double u) {
            return lambda * std::exp(-lambda * u) * std::exp(c * (u + band)) *
                   up_transform_at_root(ctx, u + band);
        },
        0.0, lambda - c, ctx.tol().quad_rel);
    return 1.0 - down_transform(ctx, band) * climb;
}

double exit_down(const ResolventContext& ctx, const ExitQuery& query,
                 ExitRepresentation rep) {
    const double lambda = ctx.params().lambda;
    const double x = query.band - query.start;
    if (rep == ExitRepresentation::resolvent_form) {
        const double tail = ctx.integrals(x, query.band).tail_exp_density;
        return std::exp(-lambda * query.band) / lambda * ctx.density(x) / tail;
    }
    const double c = ctx.root();
    return down_transform(ctx, query.start) * std::exp(-c * x) * ctx.density(x) *
           ctx.root_factor() / k_factor_quadrature(ctx, query.band);
}

double exit_down(const ResolventContext& ctx, const ExitQuery& query) {
    const double primary = exit_down(ctx, query, ExitRepresentation::resolvent_form);
    const double dual = exit_down(ctx, query, ExitRepresentation::factor_form);
    const double scale = std::max(std::abs(primary), 1e-300);
    if (std::abs(primary - dual) > ctx.tol().rep_check * scale) {
        std::ostringstream msg;
        msg << "exit_down: representations disagree (" << primary << " vs " << dual << ")";
        throw consistency_error(msg.str());
    }
    return primary;
}

namespace {

// lambda int_0^inf e^{-lambda u} up_transform(u + band) du in closed form:
// the excess-height average of the one-boundary passage transform.
double up_transform_excess(const ResolventContext& ctx, double band) {
    const double lambda = ctx.params().lambda;
    const double sl = ctx.s() * lambda;
    const auto ints = ctx.integrals(0.0, band);
    const double scaled = lambda * std::exp(lambda * band);
    return 1.0 - sl / ctx.root() * scaled * ints.tail_exp_density +
           sl * scaled * ints.tail_exp_cumulative;
}

}

double exit_up(const ResolventContext& ctx, const ExitQuery& query) {
    const double x = query.band - query.start;
    return up_transform(ctx, x) -
           exit_down(ctx, query, ExitRepresentation::resolvent_form) *
               up_transform_excess(ctx, query.band);
}

double exit_up_dual(const ResolventContext& ctx, const ExitQuery& query) {
    const double lambda = ctx.params().lambda;
    const double sl = ctx.s() * lambda;
    const double x = query.band - query.start;
    const auto ints = ctx.integrals(x, query.band);
    const double ratio = ctx.density(x) / ints.tail_exp_density;
    return 1.0 -
           ratio * (std::exp(-lambda * query.band) / lambda + sl * ints.tail_exp_cumulative) +
           sl * ints.cumulative;
}

double exit_up_overshoot_lt(const ResolventContext& ctx, const ExitQuery& query, double z) {
    if (!(z >= 0.0) || !std::isfinite(z))
        throw std::invalid_argument("exit overshoot transform: z must be finite and nonnegative");
    const double x = query.band - query.start;
    const double down = exit_down(ctx, query, ExitRepresentation::resolvent_form);
    double direct, excess;
    if (ctx.exact()) {
        direct = ctx.form().joint_transform(x, Complex(z, 0.0)).real();
        excess = ctx.form().joint_transform_gamma(query.band, Complex(z, 0.0)).real();
    } else {
        // up_position_lt discounts the crossing position; e^{z w} strips
        // that back to the overshoot at level w
        const double lambda = ctx.params().lambda;
        direct = std::exp(z * x) * up_position_lt(ctx, x, z);
        excess = exp_tail_quadrature(
            [&](double u) {
                return lambda * std::exp(-lambda * u) *
                       std::exp(z * (u + query.band)) *
                       up_position_lt(ctx, u + query.band, z);
            },
            0.0, lambda - ctx.root(), ctx.tol().quad_rel);
    }
    return direct - down * excess;
}

double survival_lt(const ResolventContext& ctx, const ExitQuery& query) {
    const double lambda = ctx.params().lambda;
    const double x = query.band - query.start;
    const auto ints = ctx.integrals(x, query.band);
    const double value =
        lambda * ctx.density(x) / ints.tail_exp_density * ints.tail_exp_cumulative -
        lambda * ints.cumulative;

    const double down = exit_down(ctx, query, ExitRepresentation::resolvent_form);
    const double up = exit_up(ctx, query);
    const double closure = down + up + ctx.s() * value;
    if (std::abs(closure - 1.0) > ctx.tol().closure_check) {
        std::ostringstream msg;
        msg << "survival_lt: closure identity off by " << closure - 1.0;
        throw consistency_error(msg.str());
    }
    return value;
}

double survival_time_domain(const ProcessParams& params, const ExitQuery& query, double t,
                            const GaverStehfest& method, const ResolventOptions& opts) {
    auto transform = [&](double s) {
        const auto ctx = ResolventContext::build(params, s, opts);
        return survival_lt(ctx, query);
    };
    const double raw = gaver_stehfest(transform, t, method);
    return std::min(1.0, std::max(0.0, raw));
}

KernelIterates kernel_iteration_oracle(const ResolventContext& ctx, double band, int terms) {
    if (terms < 1) throw std::invalid_argument("kernel iteration: need at least one term");
    const double q = 1.0 - k_factor_quadrature(ctx, band);
    KernelIterates out;
    out.ratio = q;
    out.partials.reserve(std::size_t(terms) + 1);
    double power = 1.0, acc = 0.0;
    for (int k = 0; k <= terms; ++k) {
        acc += power;
        out.partials.push_back(acc);
        power *= q;
    }
    out.limit = 1.0 / k_factor(ctx, band);
    return out;
}

}
