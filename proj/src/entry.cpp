#include "cpexp/entry.hpp"

#include <cmath>
#include <stdexcept>

#include "cpexp/errors.hpp"

namespace cpexp {

namespace {

void require_offset(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(what);
}

void require_z(double z) {
    if (!(z >= 0.0) || !std::isfinite(z))
        throw std::invalid_argument("entry transform: z must be finite and nonnegative");
}

double expm1_ratio(double w) {
    return std::abs(w) < 1e-12 ? 1.0 : std::expm1(w) / w;
}

}

EntryFactors::EntryFactors(const ResolventContext& ctx, double band)
    : ctx_(&ctx), band_(band) {
    if (!(band > 0.0) || !std::isfinite(band))
        throw std::invalid_argument("entry factors: band width must be positive and finite");
    if (!ctx.exact())
        throw domain_error("entry transforms need the exact partial fraction form "
                           "(rational jump transform)");
    const double c = ctx.root();
    const double lambda = ctx.params().lambda;
    hat_t_gamma_ = ctx.form().overshoot_tail_lt_gamma(0.0, c, band);
    theta_ = (1.0 - c / lambda) * std::exp(-band * (lambda - c)) * hat_t_gamma_;
    t_factor_ = 1.0 - theta_;
}

double EntryFactors::kappa() const {
    return (1.0 - ctx_->root() / ctx_->params().lambda) / t_factor_;
}

double EntryFactors::hat_t(double x) const {
    require_offset(x, "entry factors: height must be finite and nonnegative");
    return ctx_->form().overshoot_tail_lt(x, ctx_->root(), band_);
}

double EntryFactors::m_lt(double x, double z) const {
    require_offset(x, "entry factors: height must be finite and nonnegative");
    require_z(z);
    return ctx_->form().overshoot_head_lt(x, z, band_);
}

double EntryFactors::m_gamma_lt(double z) const {
    require_z(z);
    return ctx_->form().overshoot_head_lt_gamma(0.0, z, band_);
}

double EntryFactors::p_lt(double z) const {
    require_z(z);
    const double lambda = ctx_->params().lambda;
    // e^{-lambda B} [ m_gamma(z) + lambda (e^{(lambda - z) B} - 1)/(lambda - z) ];
    // the second factor is B expm1(w)/w with w = (lambda - z) B, removable
    // at z = lambda.
    const double w = (lambda - z) * band_;
    return std::exp(-lambda * band_) *
           (m_gamma_lt(z) + lambda * band_ * expm1_ratio(w));
}

double entry_from_above(const EntryFactors& factors, double offset, double z) {
    require_offset(offset, "entry from above: offset must be finite and nonnegative");
    require_z(z);
    return std::exp(-offset * factors.ctx().root()) * factors.kappa() * factors.p_lt(z);
}

double entry_from_below(const EntryFactors& factors, double offset, double z) {
    require_offset(offset, "entry from below: offset must be finite and nonnegative");
    require_z(z);
    const double c = factors.ctx().root();
    const double lambda = factors.ctx().params().lambda;
    return factors.m_lt(offset, z) +
           std::exp(factors.band() * c) * (1.0 - c / lambda) * factors.hat_t(offset) *
               factors.p_lt(z) / factors.t_factor();
}

double entry_from_inside(const EntryFactors& factors, double start, double z) {
    require_z(z);
    const double band = factors.band();
    if (!(start >= 0.0) || !(start <= band))
        throw std::invalid_argument("entry from inside: start must lie in [0, band]");
    const ResolventContext& ctx = factors.ctx();
    const double c = ctx.root();
    const double lambda = ctx.params().lambda;
    const double x = band - start;
    const double rho = ctx.density(x) / ctx.integrals(0.0, band).tail_exp_density;

    // Renewal part driven by the first exit, plus the direct re-entry
    // term of the climb that wins the race from below the floor.
    const double renewal =
        factors.kappa() *
            (std::exp(c * x) - rho * std::exp(-band * (lambda - c)) / (lambda - c)) *
            factors.p_lt(z) +
        rho / lambda * (1.0 / factors.t_factor() - 1.0) * factors.p_lt(z);
    const double direct = rho / lambda * std::exp(-lambda * band) * factors.m_gamma_lt(z);
    return renewal + direct;
}

double contraction_ratio(const ResolventContext& ctx, double band) {
    if (!(band > 0.0) || !std::isfinite(band))
        throw std::invalid_argument("contraction ratio: band width must be positive and finite");
    return down_transform(ctx, band) * up_transform(ctx, band);
}

EntryKernelIterates entry_kernel_iteration_oracle(const EntryFactors& factors, int terms) {
    if (terms < 1) throw std::invalid_argument("entry kernel iteration: need at least one term");
    EntryKernelIterates out;
    out.ratio = factors.theta();
    out.partials.reserve(std::size_t(terms) + 1);
    double power = 1.0, acc = 0.0;
    for (int k = 0; k <= terms; ++k) {
        acc += power;
        out.partials.push_back(acc);
        power *= out.ratio;
    }
    out.limit = 1.0 / factors.t_factor();
    return out;
}

std::vector<double> overshoot_density_curve(const ResolventContext& ctx, double x,
                                            const std::vector<double>& grid) {
    if (!ctx.exact())
        throw domain_error("overshoot density needs the exact partial fraction form");
    std::vector<double> out;
    out.reserve(grid.size());
    for (double u : grid) {
        if (!(u >= 0.0))
            throw std::invalid_argument("overshoot density: grid points must be nonnegative");
        out.push_back(ctx.form().overshoot_density(x, u));
    }
    return out;
}

std::vector<double> overshoot_density_curve_numeric(const ResolventContext& ctx, double x,
                                                    const std::vector<double>& grid) {
    if (!ctx.exact())
        throw domain_error("overshoot density needs the exact partial fraction form");
    // Invert the closed z-transform of the overshoot law; one-dimensional
    // inversion only, since the height dependence stays in closed form.
    auto transform = [&](Complex z) { return ctx.form().joint_transform(x, z); };
    const double rightmost = ctx.params().eta.abscissa();
    std::vector<double> out;
    out.reserve(grid.size());
    for (double u : grid) {
        if (!(u > 0.0))
            throw std::invalid_argument(
                "overshoot density (inversion route): grid points must be positive");
        out.push_back(bromwich_invert(transform, u, rightmost, BromwichShifted{}, ctx.tol()));
    }
    return out;
}

}
