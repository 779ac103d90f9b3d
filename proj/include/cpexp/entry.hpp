#pragma once

#include <vector>

#include "cpexp/one_boundary.hpp"

namespace cpexp {

// First entry into the closed band [0, band].  Starts above the band (at
// band + offset), below it (at -offset), or inside; an inside start first
// leaves the band and the clock keeps running until re-entry.  The
// functionals are joint transforms E[e^{-s time} e^{-z position}] against
// the entry position measure on [0, band].  Requires an exact resolvent
// context (rational jump transform): the point-mass law's atomic
// overshoot is outside this machinery and is rejected.
class EntryFactors {
public:
    EntryFactors(const ResolventContext& ctx, double band);

    const ResolventContext& ctx() const { return *ctx_; }
    double band() const { return band_; }

    // Weight of one below-then-over excursion cycle and its renewal sum
    // T(s) = 1 - theta(s); kappa = (1 - c(s)/lambda) / T(s).
    double theta() const { return theta_; }
    double t_factor() const { return t_factor_; }
    double kappa() const;

    // Tail transform at the root of the over-band overshoot from height
    // x, and its Exp(lambda) excess-height average.
    double hat_t(double x) const;
    double hat_t_gamma() const { return hat_t_gamma_; }

    // Entry measure of a single climb from height x, restricted to the
    // band: int_[0, band] e^{-z u} m_x(du); and its excess average.
    double m_lt(double x, double z) const;
    double m_gamma_lt(double z) const;

    // Transform of the landing law of the cycle's over-band piece,
    // analytic across z = lambda (removable).
    double p_lt(double z) const;

private:
    const ResolventContext* ctx_;
    double band_;
    double hat_t_gamma_;
    double theta_;
    double t_factor_;
};

// E[e^{-s entry time - z entry position}] by start placement.
double entry_from_above(const EntryFactors& factors, double offset, double z);
double entry_from_below(const EntryFactors& factors, double offset, double z);
double entry_from_inside(const EntryFactors& factors, double start, double z);

// Contraction bound for the cycle weight: theta(s) is dominated by the
// product of the two one-boundary passage transforms over the band.
double contraction_ratio(const ResolventContext& ctx, double band);

// Geometric partial sums of the cycle weight against the closed renewal
// factor 1/T(s).
struct EntryKernelIterates {
    double ratio;
    std::vector<double> partials;
    double limit;
};
EntryKernelIterates entry_kernel_iteration_oracle(const EntryFactors& factors, int terms);

// Density of the up-crossing overshoot at height x on a grid of u > 0:
// the exact exponential-sum form, and a route that inverts the closed
// z-transform numerically instead (one-dimensional inversion; kept as an
// independent check).
std::vector<double> overshoot_density_curve(const ResolventContext& ctx, double x,
                                            const std::vector<double>& grid);
std::vector<double> overshoot_density_curve_numeric(const ResolventContext& ctx, double x,
                                                    const std::vector<double>& grid);

}
