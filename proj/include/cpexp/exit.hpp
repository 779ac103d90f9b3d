#pragma once

#include <vector>

#include "cpexp/one_boundary.hpp"

namespace cpexp {

// First exit from the band [0, band], started at start inside it.  Exit
// means strictly outside: a path touching a boundary point exactly is
// still inside.  The lower exit carries an Exp(lambda) depth overshoot;
// the upper exit's overshoot follows the jump-law tail.
struct ExitQuery {
    double band;
    double start;

    ExitQuery(double band_, double start_);
};

enum class ExitRepresentation { resolvent_form, factor_form };

// Renewal denominator K(s) = 1 - q(s), where q(s) is the weight of one
// down-up excursion cycle.  The closed route rewrites it through the
// resolvent tail integral; the quadrature route integrates the cycle
// weight directly and is kept as an independent representation.
double k_factor(const ResolventContext& ctx, double band);
double k_factor_quadrature(const ResolventContext& ctx, double band);

// E[exp(-s tau_exit); lower exit].  Computes both representations and
// raises consistency_error if they disagree beyond tolerance.
double exit_down(const ResolventContext& ctx, const ExitQuery& query);
double exit_down(const ResolventContext& ctx, const ExitQuery& query,
                 ExitRepresentation rep);

// E[exp(-s tau_exit); upper exit], subtracting the lower-exit recursion
// from the one-boundary passage transform.
double exit_up(const ResolventContext& ctx, const ExitQuery& query);

// Alternative assembly of the upper-exit transform through the resolvent
// tail integrals; equals exit_up analytically.
double exit_up_dual(const ResolventContext& ctx, const ExitQuery& query);

// E[exp(-s tau_exit - z overshoot); upper exit]; z = 0 reduces to exit_up.
double exit_up_overshoot_lt(const ResolventContext& ctx, const ExitQuery& query, double z);

// Laplace transform (in s, at the context's s) of t -> P[no exit by t].
// Checks the closure identity down + up + s * survival = 1 and raises
// consistency_error when it fails.
double survival_lt(const ResolventContext& ctx, const ExitQuery& query);

// P[no exit by t], by Gaver-Stehfest inversion of survival_lt across a
// fresh context per abscissa; clamped to [0, 1].
double survival_time_domain(const ProcessParams& params, const ExitQuery& query, double t,
                            const GaverStehfest& method = {},
                            const ResolventOptions& opts = {});

// Partial sums of the excursion-cycle geometric series against the closed
// kernel; the tail bound is geometric with the returned ratio.
struct KernelIterates {
    double ratio;                  // q(s)
    std::vector<double> partials;  // sum_{k<=n} q^k
    double limit;                  // 1 / K(s), closed route
};
KernelIterates kernel_iteration_oracle(const ResolventContext& ctx, double band, int terms);

}
