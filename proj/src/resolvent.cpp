#include "cpexp/resolvent.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "cpexp/errors.hpp"
#include "cpexp/poly.hpp"

namespace cpexp {

double root_c(const ProcessParams& params, double s, const Tolerances& tol) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("root_c: s must be positive and finite");

    auto k = [&](double p) { return laplace_exponent(params, Complex(p, 0.0), tol).real(); };

    double lo = params.lambda * std::max(tol.root_bracket_eps, 1e-300);
    double hi = params.lambda * (1.0 - 2.0 * tol.pole_guard_rel);
    if (!(k(hi) > s))
        throw domain_error("root_c: s exceeds the exponent's range outside the pole guard band");

    // k(lo) < s < k(hi) and the root is unique on (0, lambda), so plain
    // bisection cannot miss; stop on the residual target or a collapsed
    // bracket (ulp-level), whichever first.
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double val = k(mid);
        if (std::abs(val - s) <= tol.root_rel * (1.0 + s)) return mid;
        if (val < s)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return 0.5 * (lo + hi);
    }
    throw convergence_error("root_c: bisection failed to meet its residual target");
}

Complex resolvent_transform(const ProcessParams& params, double s, Complex p,
                            const Tolerances& tol) {
    const Complex den = resolvent_denominator(params, s, p);
    const double scale =
        params.a1() * std::abs(p) +
        std::abs(p - params.lambda) * (s + params.a2() * (1.0 + std::abs(params.eta.lt(p))));
    if (std::abs(den) <= tol.pole_guard_abs * std::max(1.0, scale))
        throw domain_error("resolvent transform evaluated at one of its poles");
    return 1.0 / den;
}

ResolventContext::ResolventContext(ProcessParams params, double s, ResolventOptions opts)
    : params_(std::move(params)), s_(s), opts_(std::move(opts)) {}

ResolventContext ResolventContext::build(const ProcessParams& params, double s,
                                         const ResolventOptions& opts) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("resolvent context: s must be positive and finite");

    ResolventContext ctx(params, s, opts);
    const bool want_exact = opts.path == ResolventPath::exact ||
                            (opts.path == ResolventPath::automatic && params.eta.rational());
    if (opts.path == ResolventPath::exact && !params.eta.rational())
        throw domain_error("resolvent context: exact path needs a rational jump transform");

    if (want_exact) {
        ctx.form_ = build_partial_fractions(params, s, opts.tol);
        ctx.root_ = ctx.form_->root;
        ctx.root_factor_ = ctx.form_->root_factor;
    } else {
        ctx.root_ = root_c(params, s, opts.tol);
        ctx.root_factor_ =
            resolvent_denominator_prime(params, s, Complex(ctx.root_, 0.0)).real();
    }
    return ctx;
}

const PartialFractionForm& ResolventContext::form() const {
    if (!form_) throw domain_error("resolvent context: no exact form on the numeric path");
    return *form_;
}

double ResolventContext::density_numeric(double x) const {
    auto f = [&](Complex p) { return resolvent_transform(params_, s_, p, opts_.tol); };
    if (std::holds_alternative<GaverStehfest>(opts_.method)) {
        // The ladder samples the transform on (0, m ln2 / x], which dips
        // left of the abscissa c(s) once x is moderate; invert the
        // root-shifted density e^{-c x} R_x instead and scale back.
        auto shifted = [&](double p) { return f(Complex(p + root_, 0.0)).real(); };
        return std::exp(root_ * x) *
               gaver_stehfest(shifted, x, std::get<GaverStehfest>(opts_.method));
    }
    return bromwich_invert(f, x, root_, std::get<BromwichShifted>(opts_.method), opts_.tol);
}

double ResolventContext::density(double x) const {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return 1.0 / (params_.c + s_);
    if (form_) return form_->density(x);
    return density_numeric(x);
}

namespace {

// One Simpson panel together with its half-step refinement; the Richardson
// difference serves as both correction and acceptance test.  Panels over
// budget are bisected a bounded number of times only: the integrand values
// come out of a contour inversion and carry noise near its agreement
// tolerance, so unbounded subdivision would chase error that no amount of
// refinement can integrate away.
double simpson_panel(const std::function<double(double)>& f, double lo, double hi,
                     double flo, double fhi, double budget, int depth) {
    const double w = hi - lo;
    const double fm = f(lo + 0.5 * w);
    const double fq1 = f(lo + 0.25 * w);
    const double fq3 = f(lo + 0.75 * w);
    const double coarse = w / 6.0 * (flo + 4.0 * fm + fhi);
    const double fine = w / 12.0 * (flo + 4.0 * fq1 + 2.0 * fm + 4.0 * fq3 + fhi);
    const double estimate = (fine - coarse) / 15.0;
    if (depth <= 0 || std::abs(estimate) <= budget) return fine + estimate;
    return simpson_panel(f, lo, lo + 0.5 * w, flo, fm, 0.5 * budget, depth - 1) +
           simpson_panel(f, lo + 0.5 * w, hi, fm, fhi, 0.5 * budget, depth - 1);
}

double panel_budget(const Tolerances& tol, double acc) {
    return std::max(tol.quad_rel, 10.0 * tol.bromwich_rel) * std::max(1.0, std::abs(acc));
}

}

void ResolventContext::ensure_grid(double upto) const {
    const double extent = grid_.empty() ? 0.0 : grid_.rbegin()->first;
    if (grid_step_ > 0.0 && extent >= upto - 0.5 * grid_step_) return;
    // The spacing follows the whole span covered so far, never the single
    // query point: a small first query must not pin a fine step that every
    // later extension would have to pay for node by node.
    const double span = std::max(upto, extent);
    const double step =
        std::min(opts_.tol.grid_step, std::max(span / opts_.tol.grid_divisor, 1e-4));
    std::size_t first = grid_.size();
    if (grid_step_ == 0.0 || step > 2.0 * grid_step_) {
        // fresh grid, or the span outgrew the old resolution: rebuild
        // coarser instead of extending at the stale fine step
        grid_.clear();
        grid_step_ = step;
        first = 0;
    }
    const double h = grid_step_;
    const auto n = std::size_t(std::ceil(upto / h - 1e-12)) + 1;
    auto resume = grid_.empty() ? grid_.end() : std::prev(grid_.end());
    for (std::size_t k = first; k <= n; ++k) {
        const double x = double(k) * h;
        grid_[x] = {density(x), 0.0};
    }
    // Panel quadrature, resumed at the old extent so an extension never
    // re-integrates finished panels.
    const auto eval = [&](double u) { return density(u); };
    double acc = 0.0;
    double prev_x = 0.0, prev_r = density(0.0);
    auto it = grid_.begin();
    if (resume != grid_.end()) {
        acc = resume->second.cumulative;
        prev_x = resume->first;
        prev_r = resume->second.density;
        it = std::next(resume);
    }
    for (; it != grid_.end(); ++it) {
        const double x = it->first;
        GridNode& node = it->second;
        if (x == 0.0) {
            node.cumulative = 0.0;
        } else {
            acc += simpson_panel(eval, prev_x, x, prev_r, node.density,
                                 panel_budget(opts_.tol, acc), 2);
            node.cumulative = acc;
        }
        prev_x = x;
        prev_r = node.density;
    }
}

double ResolventContext::cumulative(double x) const {
    if (x <= 0.0) return 0.0;
    if (form_) return form_->cumulative(x);
    ensure_grid(x);
    auto it = grid_.upper_bound(x);
    --it;  // last node <= x (node 0 always present)
    double acc = it->second.cumulative;
    if (x > it->first + 1e-15)
        acc += simpson_panel([&](double u) { return density(u); }, it->first, x,
                             it->second.density, density(x), panel_budget(opts_.tol, acc), 2);
    return acc;
}

// int_0^b e^(-lambda u) R_u du by panel quadrature on the cache grid, the
// stored node densities covering the panel endpoints.
double ResolventContext::weighted_head(double b) const {
    ensure_grid(b);
    const auto f = [&](double u) { return std::exp(-params_.lambda * u) * density(u); };
    double acc = 0.0;
    double prev_x = 0.0;
    double prev_f = density(0.0);
    for (auto it = std::next(grid_.begin()); it != grid_.end() && it->first <= b; ++it) {
        const double fx = std::exp(-params_.lambda * it->first) * it->second.density;
        acc += simpson_panel(f, prev_x, it->first, prev_f, fx, panel_budget(opts_.tol, acc), 2);
        prev_x = it->first;
        prev_f = fx;
    }
    if (b > prev_x + 1e-15)
        acc += simpson_panel(f, prev_x, b, prev_f, f(b), panel_budget(opts_.tol, acc), 2);
    return acc;
}

ResolventIntegrals ResolventContext::integrals(double x, double b) const {
    if (!(b > 0.0) || !std::isfinite(b))
        throw std::invalid_argument("resolvent integrals: band width must be positive");
    if (form_)
        return {form_->cumulative(x), form_->tail_exp_density(b),
                form_->tail_exp_cumulative(b)};
    // int_0^inf e^(-lambda u) R_u du is the transform at lambda itself,
    // finite because the cleared denominator equals a1 lambda there; the
    // tail past b is that value minus the head over [0, b].  Inverting the
    // density deep enough into the tail to integrate it directly is not an
    // option: the contour prefactor e^(alpha x) amplifies rounding noise
    // past any agreement tolerance once x reaches a few tens.
    const double tail = transform(Complex(params_.lambda, 0.0)).real() - weighted_head(b);
    // int_b^inf e^(-lambda u) S_u du reduces by parts to known pieces.
    const double tail_cumulative =
        (std::exp(-params_.lambda * b) * cumulative(b) + tail) / params_.lambda;
    return {cumulative(x), tail, tail_cumulative};
}

Complex ResolventContext::transform(Complex p) const {
    if (form_) return form_->transform(p);
    return resolvent_transform(params_, s_, p, opts_.tol);
}

Complex ResolventContext::pole_scaled_transform(Complex p) const {
    if (form_) {
        const auto& p1 = form_->root_deflated_denominator;
        const Complex den = poly::eval(p1, p);
        double scale = 0.0, power = 1.0;
        for (const auto& coeff : p1) {
            scale += std::abs(coeff) * power;
            power *= std::max(1.0, std::abs(p));
        }
        if (std::abs(den) <= opts_.tol.pole_guard_abs * std::max(1.0, scale))
            throw domain_error("resolvent transform evaluated at one of its poles");
        return poly::eval(form_->cleared_numerator, p) / den;
    }
    if (std::abs(p - root_) <= opts_.tol.z_root_guard) {
        // q(p) = D(p)/(p - c) = D'(c) + (p - c) D''(c)/2 + ...
        const double second = resolvent_denominator_second(params_, s_, Complex(root_, 0.0)).real();
        return 1.0 / (root_factor_ + 0.5 * (p - root_) * second);
    }
    return (p - root_) * transform(p);
}

}
