#pragma once

#include <vector>

#include "cpexp/model.hpp"
#include "cpexp/tolerances.hpp"

namespace cpexp {

// Exact partial fraction decomposition of the resolvent transform for the
// rational jump families.  Clearing denominators in
//   1 / (a1 p + (p - lambda)(s + a2 (1 - A(p)/Q(p))))
// gives R(p, s) = Q(p) / P(p) with
//   P(p) = a1 p Q(p) + (p - lambda)((s + a2) Q(p) - a2 A(p)),
// of degree deg Q + 1 and leading coefficient (c + s).  One pole is the
// positive root c(s); every other pole lies strictly in the left
// half-plane, so densities are finite exponential sums and the two-sided
// functionals reduce to closed forms.  This module is the independent
// oracle the contour inversion is validated against.
struct PartialFractionForm {
    ProcessParams params;
    double s;

    std::vector<double> cleared_numerator;    // Q, ascending, monic
    std::vector<double> cleared_denominator;  // P, ascending

    // poles[0] is the root c(s); residues align by index.
    std::vector<Complex> poles;
    std::vector<Complex> residues;
    double root;         // c(s)
    double root_factor;  // r(c(s), s) = 1 / residues[0] = D'(c(s))

    // P with the factor (p - root) divided out; P/(p - c) has no zero at
    // the root, so (p - c) R(p, s) evaluates exactly there.
    std::vector<Complex> root_deflated_denominator;

    // R(p, s) = Q(p)/P(p), valid at any p away from the poles (rational
    // continuation past the jump transform's abscissa).
    Complex transform(Complex p) const;

    // Exponential-sum closed forms.
    double density(double x) const;              // R_x
    double cumulative(double x) const;           // S_x = int_0^x R_u du
    double tail_exp_density(double b) const;     // int_b^inf e^{-lambda u} R_u du
    double tail_exp_cumulative(double b) const;  // int_b^inf e^{-lambda u} S_u du

    // Joint transform of the upward passage time over x and the overshoot:
    //   M_x(z) = E[ e^{-s T(x)} e^{-z (X(T(x)) - x)} ; T(x) < infinity ],
    // assembled from the non-root poles: M_x(z) = sum_j c_j e^{p_j x} B_j(z)
    // with c_j = residues[j] (p_j - c) and B_j = P / ((z - c)(z - p_j) Q)
    // evaluated as a polynomial quotient.
    Complex joint_transform(double x, Complex z) const;

    // Overshoot density in u > 0 and its restricted transforms: head over
    // [0, b], tail over [b, infinity) at real argument z.
    double overshoot_density(double x, double u) const;
    double overshoot_head_lt(double x, double z, double b) const;
    double overshoot_tail_lt(double x, double z, double b) const;

    // The same functionals with the start height x replaced by shift plus
    // an independent Exp(lambda) excess, i.e. averaged against
    // lambda e^{-lambda t} dt at height t + shift.
    Complex joint_transform_gamma(double shift, Complex z) const;
    double overshoot_head_lt_gamma(double shift, double z, double b) const;
    double overshoot_tail_lt_gamma(double shift, double z, double b) const;

    // Internal basis, exposed for tests: per non-root pole j the factor
    // c_j, and per denominator pole i of multiplicity k_i the partial
    // fraction weights beta[j][i][l-1] of (z + mu_i)^-l in B_j.
    std::vector<Complex> overshoot_coeffs;                       // c_j
    std::vector<std::vector<Complex>> overshoot_numerators;      // numer_j coeffs
    std::vector<std::vector<std::vector<Complex>>> overshoot_beta;

private:
    std::vector<Complex> height_weights(double x) const;
    std::vector<Complex> gamma_weights(double shift) const;
    Complex joint_with(const std::vector<Complex>& w, Complex z) const;
    double head_with(const std::vector<Complex>& w, double z, double b) const;
    double tail_with(const std::vector<Complex>& w, double z, double b) const;
};

// Builds the decomposition; throws domain_error for the point-mass jump
// law, consistency_error if the computed poles fail their invariants
// (root mismatch, cluster, residue sum).
PartialFractionForm build_partial_fractions(const ProcessParams& params, double s,
                                            const Tolerances& tol = {});

}
