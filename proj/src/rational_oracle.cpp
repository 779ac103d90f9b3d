#include "cpexp/rational_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpexp/errors.hpp"
#include "cpexp/poly.hpp"
#include "cpexp/resolvent.hpp"

namespace cpexp {

namespace {

// Magnitude scale of a polynomial evaluation, for residual thresholds.
double eval_scale(const std::vector<double>& c, double absp) {
    double scale = 0.0, power = 1.0;
    const double base = std::max(1.0, absp);
    for (double coeff : c) {
        scale += std::abs(coeff) * power;
        power *= base;
    }
    return scale;
}

std::vector<Complex> companion_roots(const std::vector<double>& p) {
    const std::size_t n = p.size() - 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t i = 0; i < n; ++i) {
        m(Eigen::Index(i), Eigen::Index(n - 1)) = -p[i] / p[n];
        if (i > 0) m(Eigen::Index(i), Eigen::Index(i - 1)) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    if (solver.info() != Eigen::Success)
        throw consistency_error("partial fractions: eigenvalue iteration failed");
    std::vector<Complex> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ev = solver.eigenvalues()(Eigen::Index(i));
        roots[i] = Complex(ev.real(), ev.imag());
    }
    return roots;
}

// Taylor coefficients of (sum a_k w^k) / (sum b_k w^k) through order n-1.
std::vector<Complex> series_divide(const std::vector<Complex>& a,
                                   const std::vector<Complex>& b, std::size_t n) {
    std::vector<Complex> t(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc = k < a.size() ? a[k] : Complex(0.0);
        for (std::size_t i = 1; i <= k; ++i)
            if (i < b.size()) acc -= b[i] * t[k - i];
        t[k] = acc / b[0];
    }
    return t;
}

// int_b^inf u^(l-1) e^(-a u) / (l-1)! du for a > 0.
double gamma_tail(double a, int l, double b) {
    double acc = 0.0, term = 1.0 / std::pow(a, l);  // t = 0
    double bpow = 1.0, fact = 1.0;
    acc = term;
    for (int t = 1; t < l; ++t) {
        bpow *= b;
        fact *= t;
        acc += bpow / (fact * std::pow(a, l - t));
    }
    return std::exp(-a * b) * acc;
}

double gamma_head(double a, int l, double b) {
    return 1.0 / std::pow(a, l) - gamma_tail(a, l, b);
}

}

Complex PartialFractionForm::transform(Complex p) const {
    const Complex den = poly::eval(cleared_denominator, p);
    const double scale = eval_scale(cleared_denominator, std::abs(p));
    if (std::abs(den) <= Tolerances{}.pole_guard_abs * scale)
        throw domain_error("resolvent transform evaluated at one of its poles");
    return poly::eval(cleared_numerator, p) / den;
}

double PartialFractionForm::density(double x) const {
    if (x < 0.0) return 0.0;
    Complex acc = 0.0;
    for (std::size_t j = 0; j < poles.size(); ++j)
        acc += residues[j] * std::exp(poles[j] * x);
    return acc.real();
}

double PartialFractionForm::cumulative(double x) const {
    if (x <= 0.0) return 0.0;
    Complex acc = 0.0;
    for (std::size_t j = 0; j < poles.size(); ++j) {
        const Complex px = poles[j] * x;
        // (e^(p x) - 1)/p, series-stabilised near zero
        Complex grow;
        if (std::abs(px) < 1e-4)
            grow = x * (1.0 + px / 2.0 * (1.0 + px / 3.0 * (1.0 + px / 4.0)));
        else
            grow = (std::exp(px) - 1.0) / poles[j];
        acc += residues[j] * grow;
    }
    return acc.real();
}

double PartialFractionForm::tail_exp_density(double b) const {
    const double lambda = params.lambda;
    Complex acc = 0.0;
    for (std::size_t j = 0; j < poles.size(); ++j)
        acc += residues[j] * std::exp((poles[j] - lambda) * b) / (lambda - poles[j]);
    return acc.real();
}

double PartialFractionForm::tail_exp_cumulative(double b) const {
    const double lambda = params.lambda;
    Complex acc = 0.0;
    for (std::size_t j = 0; j < poles.size(); ++j)
        acc += residues[j] / poles[j] *
               (std::exp((poles[j] - lambda) * b) / (lambda - poles[j]) -
                std::exp(-lambda * b) / lambda);
    return acc.real();
}

std::vector<Complex> PartialFractionForm::height_weights(double x) const {
    std::vector<Complex> w(overshoot_coeffs.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = overshoot_coeffs[j] * std::exp(poles[j + 1] * x);
    return w;
}

std::vector<Complex> PartialFractionForm::gamma_weights(double shift) const {
    const double lambda = params.lambda;
    std::vector<Complex> w(overshoot_coeffs.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = overshoot_coeffs[j] * lambda * std::exp(poles[j + 1] * shift) /
               (lambda - poles[j + 1]);
    return w;
}

Complex PartialFractionForm::joint_with(const std::vector<Complex>& w, Complex z) const {
    const Complex qz = poly::eval(cleared_numerator, z);
    if (std::abs(qz) <= Tolerances{}.pole_guard_abs * eval_scale(cleared_numerator, std::abs(z)))
        throw domain_error("overshoot transform evaluated at a jump-law pole");
    Complex acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        acc += w[j] * poly::eval(overshoot_numerators[j], z);
    return acc / qz;
}

double PartialFractionForm::head_with(const std::vector<Complex>& w, double z, double b) const {
    Complex acc = 0.0;
    const auto& jump_poles = params.eta.poles();
    for (std::size_t j = 0; j < w.size(); ++j)
        for (std::size_t i = 0; i < jump_poles.size(); ++i) {
            const double a = jump_poles[i].rate + z;
            if (!(a > 0.0))
                throw domain_error("overshoot transform requires z above the jump-law abscissa");
            for (int l = 1; l <= jump_poles[i].multiplicity; ++l)
                acc += w[j] * overshoot_beta[j][i][std::size_t(l - 1)] * gamma_head(a, l, b);
        }
    return acc.real();
}

double PartialFractionForm::tail_with(const std::vector<Complex>& w, double z, double b) const {
    Complex acc = 0.0;
    const auto& jump_poles = params.eta.poles();
    for (std::size_t j = 0; j < w.size(); ++j)
        for (std::size_t i = 0; i < jump_poles.size(); ++i) {
            const double a = jump_poles[i].rate + z;
            if (!(a > 0.0))
                throw domain_error("overshoot transform requires z above the jump-law abscissa");
            for (int l = 1; l <= jump_poles[i].multiplicity; ++l)
                acc += w[j] * overshoot_beta[j][i][std::size_t(l - 1)] * gamma_tail(a, l, b);
        }
    return acc.real();
}

Complex PartialFractionForm::joint_transform(double x, Complex z) const {
    return joint_with(height_weights(x), z);
}

double PartialFractionForm::overshoot_density(double x, double u) const {
    const auto w = height_weights(x);
    const auto& jump_poles = params.eta.poles();
    Complex acc = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        for (std::size_t i = 0; i < jump_poles.size(); ++i) {
            double upow = 1.0, fact = 1.0;
            for (int l = 1; l <= jump_poles[i].multiplicity; ++l) {
                acc += w[j] * overshoot_beta[j][i][std::size_t(l - 1)] * upow / fact *
                       std::exp(-jump_poles[i].rate * u);
                upow *= u;
                fact *= l;
            }
        }
    return acc.real();
}

double PartialFractionForm::overshoot_head_lt(double x, double z, double b) const {
    return head_with(height_weights(x), z, b);
}

double PartialFractionForm::overshoot_tail_lt(double x, double z, double b) const {
    return tail_with(height_weights(x), z, b);
}

Complex PartialFractionForm::joint_transform_gamma(double shift, Complex z) const {
    return joint_with(gamma_weights(shift), z);
}

double PartialFractionForm::overshoot_head_lt_gamma(double shift, double z, double b) const {
    return head_with(gamma_weights(shift), z, b);
}

double PartialFractionForm::overshoot_tail_lt_gamma(double shift, double z, double b) const {
    return tail_with(gamma_weights(shift), z, b);
}

PartialFractionForm build_partial_fractions(const ProcessParams& params, double s,
                                            const Tolerances& tol) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("partial fractions: s must be positive and finite");
    if (!params.eta.rational())
        throw domain_error("partial fractions require a rational jump transform");

    const std::vector<double>& q = params.eta.denominator();
    const std::vector<double>& a = params.eta.numerator();

    // P = a1 p Q + (p - lambda)((s + a2) Q - a2 A)
    std::vector<double> inner = poly::add(poly::scale(q, s + params.a2()),
                                          poly::scale(a, -params.a2()));
    std::vector<double> p = poly::add(poly::mul(std::vector<double>{0.0, params.a1()}, q),
                                      poly::mul(std::vector<double>{-params.lambda, 1.0}, inner));
    while (p.size() > 1 && p.back() == 0.0) p.pop_back();
    if (p.size() != q.size() + 1 ||
        std::abs(p.back() - (params.c + s)) > 1e-10 * (params.c + s))
        throw consistency_error("partial fractions: cleared denominator has unexpected shape");

    // Companion-matrix roots with a Newton polish.
    std::vector<Complex> pc(p.begin(), p.end());
    std::vector<Complex> pd(p.size() - 1);
    {
        auto d = poly::derivative(p);
        for (std::size_t i = 0; i < d.size(); ++i) pd[i] = d[i];
    }
    std::vector<Complex> roots = companion_roots(p);
    for (auto& r : roots) {
        for (int it = 0; it < 4; ++it) {
            const Complex f = poly::eval(pc, r);
            const Complex df = poly::eval(pd, r);
            if (std::abs(df) == 0.0) break;
            r -= f / df;
        }
        if (std::abs(r.imag()) <= 1e-9 * (1.0 + std::abs(r.real()))) r = Complex(r.real(), 0.0);
    }

    // Invariants: residual bound, cluster rejection, pole layout.
    for (const auto& r : roots) {
        const double scale = eval_scale(p, std::abs(r));
        if (std::abs(poly::eval(pc, r)) > tol.poly_residual * scale)
            throw consistency_error("partial fractions: polished root fails its residual bound");
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            const double sep = std::abs(roots[i] - roots[j]);
            if (sep < tol.root_cluster * std::max(1.0, std::abs(roots[i])))
                throw consistency_error(
                    "partial fractions: pole cluster (degenerate parameter set)");
        }

    std::size_t root_index = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (roots[i].real() > roots[root_index].real()) root_index = i;
    std::swap(roots[0], roots[root_index]);
    if (roots[0].imag() != 0.0 || !(roots[0].real() > 0.0) ||
        !(roots[0].real() < params.lambda))
        throw consistency_error("partial fractions: rightmost pole not in (0, lambda)");
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (!(roots[i].real() < 0.0))
            throw consistency_error("partial fractions: secondary pole in right half-plane");

    const double bisected = root_c(params, s, tol);
    if (std::abs(roots[0].real() - bisected) > 1e-10 * (1.0 + bisected))
        throw consistency_error("partial fractions: rightmost pole disagrees with the root solve");

    PartialFractionForm form{params, s, q, p, roots, {}, roots[0].real(), 0.0, {}, {}, {}, {}};
    form.residues.resize(roots.size());
    Complex residue_sum = 0.0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        form.residues[j] = poly::eval(std::vector<Complex>(q.begin(), q.end()), roots[j]) /
                           poly::eval(pd, roots[j]);
        residue_sum += form.residues[j];
    }
    if (std::abs(residue_sum - 1.0 / (params.c + s)) > 1e-8 / (params.c + s))
        throw consistency_error("partial fractions: residues do not sum to the density at zero");
    form.root_factor = 1.0 / form.residues[0].real();

    // Overshoot basis: peel the root off P, then one secondary pole at a
    // time; expand each quotient over the jump-law poles.
    const auto p1 = poly::deflate(pc, roots[0]);
    form.root_deflated_denominator = p1;
    const auto& jump_poles = params.eta.poles();
    const std::vector<Complex> qc(q.begin(), q.end());
    for (std::size_t j = 1; j < roots.size(); ++j) {
        form.overshoot_coeffs.push_back(form.residues[j] * (roots[j] - roots[0]));
        auto numer = poly::deflate(p1, roots[j]);
        form.overshoot_numerators.push_back(numer);
        std::vector<std::vector<Complex>> beta_j;
        for (const auto& pole : jump_poles) {
            const Complex center(-pole.rate, 0.0);
            auto shifted_num = poly::taylor_shift(numer, center);
            auto cofactor = qc;
            for (int l = 0; l < pole.multiplicity; ++l) cofactor = poly::deflate(cofactor, center);
            auto shifted_den = poly::taylor_shift(cofactor, center);
            auto series = series_divide(shifted_num, shifted_den, std::size_t(pole.multiplicity));
            std::vector<Complex> beta_i(std::size_t(pole.multiplicity));
            for (int l = 1; l <= pole.multiplicity; ++l)
                beta_i[std::size_t(l - 1)] = series[std::size_t(pole.multiplicity - l)];
            beta_j.push_back(std::move(beta_i));
        }
        form.overshoot_beta.push_back(std::move(beta_j));
    }
    return form;
}

}
