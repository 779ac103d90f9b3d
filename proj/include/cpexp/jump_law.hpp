#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cpexp/rng.hpp"

namespace cpexp {

using Complex = std::complex<double>;

// Law of the positive jump component.  Four families: a point mass, an
// exponential, an Erlang, and a finite mixture of exponentials.  All but
// the point mass have rational transforms A(p)/Q(p), which the partial
// fraction machinery consumes directly.
class JumpLaw {
public:
    enum class Family { dirac, exponential, erlang, hyper_exponential };

    struct Pole {
        double rate;
        int multiplicity;
    };

    static JumpLaw dirac(double point);
    static JumpLaw exponential(double rate);
    static JumpLaw erlang(int shape, double rate);
    static JumpLaw hyper_exponential(std::vector<double> weights,
                                     std::vector<double> rates);

    Family family() const { return family_; }
    bool rational() const { return family_ != Family::dirac; }
    double mean() const { return mean_; }

    // Rightmost singularity of the transform on the real axis; the point
    // mass has an entire transform and reports -infinity.
    double abscissa() const { return abscissa_; }

    // E[exp(-p eta)] and its first two derivatives; requires
    // Re(p) > abscissa() for the rational families.
    Complex lt(Complex p) const;
    Complex lt_prime(Complex p) const;
    Complex lt_second(Complex p) const;

    // A(p)/Q(p) with real ascending coefficients, Q monic.  Throws
    // domain_error for the point mass.
    const std::vector<double>& numerator() const;
    const std::vector<double>& denominator() const;
    const std::vector<Pole>& poles() const;

    double sample(PathRng& rng) const;

    std::string describe() const;

    // Family parameters (valid only for the matching family).
    double dirac_point() const { return point_; }
    double rate() const { return rates_.empty() ? 0.0 : rates_[0]; }
    int shape() const { return shape_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& rates() const { return rates_; }

private:
    JumpLaw() = default;
    void check_domain(Complex p) const;

    Family family_ = Family::exponential;
    double point_ = 0.0;
    int shape_ = 1;
    std::vector<double> weights_;
    std::vector<double> rates_;
    std::vector<double> num_;
    std::vector<double> den_;
    std::vector<Pole> poles_;
    double mean_ = 0.0;
    double abscissa_ = 0.0;
};

}
