#pragma once

#include <map>
#include <memory>
#include <optional>

#include "cpexp/inversion.hpp"
#include "cpexp/model.hpp"
#include "cpexp/rational_oracle.hpp"

namespace cpexp {

// Unique root of k(p) = s on (0, lambda).  k is increasing there, from
// the negative half onto all of (0, infinity), so bracketed bisection
// with a Newton finish always lands; |k(c) - s| <= root_rel * (1 + s).
double root_c(const ProcessParams& params, double s, const Tolerances& tol = {});

// R(p, s) = 1 / D(p); guards the zeros of D (the transform's poles).
Complex resolvent_transform(const ProcessParams& params, double s, Complex p,
                            const Tolerances& tol = {});

enum class ResolventPath { automatic, exact, numeric };

struct ResolventOptions {
    ResolventPath path = ResolventPath::automatic;
    InversionMethod method = BromwichShifted{};
    Tolerances tol{};
};

struct ResolventIntegrals {
    double cumulative;            // S_x
    double tail_exp_density;      // int_B^inf e^{-lambda u} R_u du
    double tail_exp_cumulative;   // int_B^inf e^{-lambda u} S_u du
};

// Everything downstream evaluates through one of these: a fixed (theta, s)
// pair with the root, the derivative factor, and either the exact partial
// fraction form (rational jump laws) or a cached numerical-inversion grid.
class ResolventContext {
public:
    static ResolventContext build(const ProcessParams& params, double s,
                                  const ResolventOptions& opts = {});

    const ProcessParams& params() const { return params_; }
    double s() const { return s_; }
    double root() const { return root_; }

    // r(c(s), s) = D'(c(s)), the derivative factor in the two-sided forms.
    double root_factor() const { return root_factor_; }

    bool exact() const { return form_.has_value(); }
    const PartialFractionForm& form() const;
    const Tolerances& tol() const { return opts_.tol; }

    // Resolvent density R_x; zero for x < 0, 1/(c + s) at x = 0.
    double density(double x) const;

    // S_x by cumulative integration of the density.
    double cumulative(double x) const;

    // The three integrals entering the two-boundary forms, for a band
    // width b > 0.
    ResolventIntegrals integrals(double x, double b) const;

    Complex transform(Complex p) const;

    // (p - c(s)) R(p, s) continued through its removable point at the
    // root; equals 1 / q(p) with q(p) = D(p)/(p - c(s)).
    Complex pole_scaled_transform(Complex p) const;

private:
    ResolventContext(ProcessParams params, double s, ResolventOptions opts);
    double density_numeric(double x) const;
    void ensure_grid(double upto) const;
    double weighted_head(double b) const;

    ProcessParams params_;
    double s_;
    ResolventOptions opts_;
    double root_ = 0.0;
    double root_factor_ = 0.0;
    std::optional<PartialFractionForm> form_;

    struct GridNode {
        double density;
        double cumulative;
    };
    mutable std::map<double, GridNode> grid_;
    mutable double grid_step_ = 0.0;
};

}
