#include "cpexp/jump_law.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cpexp/errors.hpp"
#include "cpexp/poly.hpp"

namespace cpexp {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}

JumpLaw JumpLaw::dirac(double point) {
    require(point > 0.0 && std::isfinite(point), "dirac jump: point must be positive and finite");
    JumpLaw law;
    law.family_ = Family::dirac;
    law.point_ = point;
    law.mean_ = point;
    law.abscissa_ = -std::numeric_limits<double>::infinity();
    return law;
}

JumpLaw JumpLaw::exponential(double rate) {
    require(rate > 0.0 && std::isfinite(rate), "exponential jump: rate must be positive and finite");
    JumpLaw law;
    law.family_ = Family::exponential;
    law.rates_ = {rate};
    law.weights_ = {1.0};
    law.mean_ = 1.0 / rate;
    law.abscissa_ = -rate;
    law.num_ = {rate};
    law.den_ = {rate, 1.0};
    law.poles_ = {{rate, 1}};
    return law;
}

JumpLaw JumpLaw::erlang(int shape, double rate) {
    require(shape >= 1, "erlang jump: shape must be a positive integer");
    require(rate > 0.0 && std::isfinite(rate), "erlang jump: rate must be positive and finite");
    JumpLaw law;
    law.family_ = Family::erlang;
    law.shape_ = shape;
    law.rates_ = {rate};
    law.weights_ = {1.0};
    law.mean_ = shape / rate;
    law.abscissa_ = -rate;
    law.num_ = {std::pow(rate, shape)};
    law.den_ = {1.0};
    for (int i = 0; i < shape; ++i) law.den_ = poly::mul(law.den_, {rate, 1.0});
    law.poles_ = {{rate, shape}};
    return law;
}

JumpLaw JumpLaw::hyper_exponential(std::vector<double> weights, std::vector<double> rates) {
    require(!weights.empty(), "hyper-exponential jump: needs at least one phase");
    require(weights.size() == rates.size(), "hyper-exponential jump: weights and rates must have equal length");
    double total = 0.0;
    for (double w : weights) {
        require(w > 0.0 && std::isfinite(w), "hyper-exponential jump: weights must be positive and finite");
        total += w;
    }
    require(std::abs(total - 1.0) <= 1e-12, "hyper-exponential jump: weights must sum to one");
    for (double r : rates)
        require(r > 0.0 && std::isfinite(r), "hyper-exponential jump: rates must be positive and finite");
    for (std::size_t i = 0; i < rates.size(); ++i)
        for (std::size_t j = i + 1; j < rates.size(); ++j)
            require(rates[i] != rates[j], "hyper-exponential jump: rates must be distinct (merge equal phases)");

    JumpLaw law;
    law.family_ = Family::hyper_exponential;
    law.weights_ = weights;
    law.rates_ = rates;
    law.mean_ = 0.0;
    double abscissa = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rates.size(); ++i) {
        law.mean_ += weights[i] / rates[i];
        abscissa = std::max(abscissa, -rates[i]);
        law.poles_.push_back({rates[i], 1});
    }
    law.abscissa_ = abscissa;
    // Q = prod (mu_i + p), A = sum w_i mu_i prod_{j != i} (mu_j + p)
    law.den_ = {1.0};
    for (double r : rates) law.den_ = poly::mul(law.den_, {r, 1.0});
    law.num_ = {0.0};
    for (std::size_t i = 0; i < rates.size(); ++i) {
        std::vector<double> term = {weights[i] * rates[i]};
        for (std::size_t j = 0; j < rates.size(); ++j)
            if (j != i) term = poly::mul(term, {rates[j], 1.0});
        law.num_ = poly::add(law.num_, term);
    }
    return law;
}

void JumpLaw::check_domain(Complex p) const {
    if (family_ == Family::dirac) return;
    if (p.real() <= abscissa_)
        throw domain_error("jump transform requires Re(p) > " + std::to_string(abscissa_));
}

Complex JumpLaw::lt(Complex p) const {
    check_domain(p);
    switch (family_) {
        case Family::dirac:
            return std::exp(-p * point_);
        case Family::exponential:
            return rates_[0] / (rates_[0] + p);
        case Family::erlang:
            return std::pow(rates_[0] / (rates_[0] + p), shape_);
        case Family::hyper_exponential: {
            Complex acc = 0.0;
            for (std::size_t i = 0; i < rates_.size(); ++i)
                acc += weights_[i] * rates_[i] / (rates_[i] + p);
            return acc;
        }
    }
    return {};
}

Complex JumpLaw::lt_prime(Complex p) const {
    check_domain(p);
    switch (family_) {
        case Family::dirac:
            return -point_ * std::exp(-p * point_);
        case Family::exponential: {
            const Complex q = rates_[0] + p;
            return -rates_[0] / (q * q);
        }
        case Family::erlang: {
            const Complex q = rates_[0] + p;
            return -double(shape_) * std::pow(rates_[0], shape_) * std::pow(q, -shape_ - 1);
        }
        case Family::hyper_exponential: {
            Complex acc = 0.0;
            for (std::size_t i = 0; i < rates_.size(); ++i) {
                const Complex q = rates_[i] + p;
                acc -= weights_[i] * rates_[i] / (q * q);
            }
            return acc;
        }
    }
    return {};
}

Complex JumpLaw::lt_second(Complex p) const {
    check_domain(p);
    switch (family_) {
        case Family::dirac:
            return point_ * point_ * std::exp(-p * point_);
        case Family::exponential: {
            const Complex q = rates_[0] + p;
            return 2.0 * rates_[0] / (q * q * q);
        }
        case Family::erlang: {
            const Complex q = rates_[0] + p;
            return double(shape_) * double(shape_ + 1) * std::pow(rates_[0], shape_) *
                   std::pow(q, -shape_ - 2);
        }
        case Family::hyper_exponential: {
            Complex acc = 0.0;
            for (std::size_t i = 0; i < rates_.size(); ++i) {
                const Complex q = rates_[i] + p;
                acc += 2.0 * weights_[i] * rates_[i] / (q * q * q);
            }
            return acc;
        }
    }
    return {};
}

const std::vector<double>& JumpLaw::numerator() const {
    if (!rational()) throw domain_error("point-mass jump has no rational transform");
    return num_;
}

const std::vector<double>& JumpLaw::denominator() const {
    if (!rational()) throw domain_error("point-mass jump has no rational transform");
    return den_;
}

const std::vector<JumpLaw::Pole>& JumpLaw::poles() const {
    if (!rational()) throw domain_error("point-mass jump has no rational transform");
    return poles_;
}

double JumpLaw::sample(PathRng& rng) const {
    switch (family_) {
        case Family::dirac:
            return point_;
        case Family::exponential:
            return rng.exponential(rates_[0]);
        case Family::erlang: {
            double total = 0.0;
            for (int i = 0; i < shape_; ++i) total += rng.exponential(rates_[0]);
            return total;
        }
        case Family::hyper_exponential: {
            const double u = rng.uniform();
            double acc = 0.0;
            for (std::size_t i = 0; i < weights_.size(); ++i) {
                acc += weights_[i];
                if (u <= acc || i + 1 == weights_.size()) return rng.exponential(rates_[i]);
            }
        }
    }
    return 0.0;
}

std::string JumpLaw::describe() const {
    std::ostringstream out;
    switch (family_) {
        case Family::dirac:
            out << "dirac(point=" << point_ << ")";
            break;
        case Family::exponential:
            out << "exponential(rate=" << rates_[0] << ")";
            break;
        case Family::erlang:
            out << "erlang(shape=" << shape_ << ",rate=" << rates_[0] << ")";
            break;
        case Family::hyper_exponential:
            out << "hyper_exponential(weights=[";
            for (std::size_t i = 0; i < weights_.size(); ++i)
                out << (i ? "," : "") << weights_[i];
            out << "],rates=[";
            for (std::size_t i = 0; i < rates_.size(); ++i)
                out << (i ? "," : "") << rates_[i];
            out << "])";
            break;
    }
    return out.str();
}

}
