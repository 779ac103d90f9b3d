#pragma once

#include <cstdint>

namespace cpexp {

// Every numeric guard and stopping rule in the library reads its threshold
// from this struct, so the defaults below are the single place where
// accuracy policy lives.  Callers may override individual fields.
struct Tolerances {
    // Root solve: |k(c) - s| <= root_rel * (1 + s).
    double root_rel = 1e-12;
    // Bracket inset as a fraction of lambda when bisecting on (0, lambda).
    double root_bracket_eps = 1e-14;

    // Pole guard: evaluating within pole_guard_rel * lambda of the
    // transform pole (or within pole_guard_abs of a resolvent zero) throws.
    double pole_guard_rel = 1e-9;
    double pole_guard_abs = 1e-12;

    // Bromwich contour: node doubling stops once successive results agree
    // to bromwich_rel (with bromwich_abs as an absolute floor); exceeding
    // bromwich_max_nodes is a convergence failure.  alias_exponent fixes
    // the contour offset so the discretisation alias is exp(-alias_exponent).
    double bromwich_rel = 1e-9;
    double bromwich_abs = 1e-13;
    double alias_exponent = 31.6;
    int bromwich_initial_nodes = 512;
    std::int64_t bromwich_max_nodes = std::int64_t(1) << 22;

    // Semi-infinite quadrature: relative target and the number of decay
    // lengths retained before the tail is truncated.
    double quad_rel = 1e-10;
    double tail_lengths = 40.0;

    // Partial fraction construction: polished roots must satisfy the
    // residual bound, and pairwise pole separation below root_cluster
    // (relative to scale) is rejected as a degenerate configuration.
    double poly_residual = 1e-12;
    double root_cluster = 1e-8;

    // Removable-singularity guards: switch to the local expansion of
    // D(z)/(z - c) within z_root_guard of c, and of (p - c) R(p) within
    // sup_guard of c.
    double z_root_guard = 1e-4;
    double sup_guard = 1e-6;

    // Cross-checks between independent representations of the same
    // quantity: two-sided exit probabilities must agree to rep_check, the
    // exit closure identity to closure_check, and the overshoot density
    // mass to mass_check.
    double rep_check = 1e-5;
    double closure_check = 1e-6;
    double mass_check = 1e-5;

    // Resolvent grid cache: base spacing (possibly scaled down to
    // span / grid_divisor) for cumulative integrals.
    double grid_step = 0.05;
    double grid_divisor = 200.0;
};

}
