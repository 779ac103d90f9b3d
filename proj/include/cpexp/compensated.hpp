#pragma once

#include <cmath>

namespace cpexp {

// Neumaier-compensated accumulator for long sums.
struct Compensated {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + carry; }
};

}
