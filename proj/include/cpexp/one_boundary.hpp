#pragma once

#include "cpexp/resolvent.hpp"

namespace cpexp {

// Single-boundary passage functionals and the law of the running extremes
// over an independent Exp(s) window, all evaluated through a fixed
// ResolventContext.  Heights are measured from the start point: the
// downward passage time crosses strictly below -x, the upward one
// strictly above x.

// E[exp(-s tau_down(x))], finite in closed form (1 - c(s)/lambda) e^{-x c(s)}.
// The depth overshoot below the level is an independent Exp(lambda) draw,
// which simulation checks exploit.
double down_transform(const ResolventContext& ctx, double x);

// P[tau_up(x) < e_s] = P[sup over the window > x]
//   = 1 - (s lambda / c(s)) R_x + s lambda S_x.
double up_transform(const ResolventContext& ctx, double x);

// E[exp(-s tau_up(x) - c(s) * crossing position)], the position being the
// level plus its overshoot: 1 - e^{-c(s) x} R_x r(c(s), s).
double up_transform_at_root(const ResolventContext& ctx, double x);

// Double transform of the joint law of the upward passage time and the
// crossing position x + overshoot, across start heights:
//   int_0^inf e^{-p x} E[e^{-s tau_up(x) - z (x + overshoot)}] dx
//     = (1/p) (1 - q(z) / q(p + z)),    q(w) = D(w) / (w - c(s)).
// Analytic for Re p > max(0, c(s) - Re z); both removable points at the
// root are continued through the partial fraction form or a local
// expansion of q.
Complex up_joint_double_lt(const ResolventContext& ctx, Complex p, Complex z);

// E[exp(-s tau_up(x) - z (x + overshoot))] at a single height: the
// position-weighted closed form on exact contexts, contour inversion of
// the double transform otherwise.
double up_position_lt(const ResolventContext& ctx, double x, double z);
double up_position_lt(const ResolventContext& ctx, double x, double z,
                      const BromwichShifted& method);

// Window extremes.  sup_window_lt is E[e^{-p sup}] for Re p >= 0 (the
// point p = c(s) is removable); inf_window_lt is E[e^{p inf}] for
// Re p <= 0.  Both laws mix an atom at zero with an absolutely
// continuous part.
Complex sup_window_lt(const ResolventContext& ctx, Complex p);
Complex inf_window_lt(const ResolventContext& ctx, Complex p);
double sup_window_atom(const ResolventContext& ctx);
double inf_window_atom(const ResolventContext& ctx);

}
