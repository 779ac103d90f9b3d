#pragma once

#include <complex>
#include <vector>

// Small dense-polynomial helpers shared by the jump laws and the partial
// fraction machinery.  Coefficients are stored ascending: c[0] + c[1] p + ...

namespace cpexp::poly {

template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

template <class T>
std::vector<T> add(std::vector<T> a, const std::vector<T>& b) {
    if (b.size() > a.size()) a.resize(b.size(), T(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

template <class T>
std::vector<T> scale(std::vector<T> a, T k) {
    for (auto& v : a) v *= k;
    return a;
}

template <class T, class X>
auto eval(const std::vector<T>& c, X x) -> decltype(T(0) * x) {
    using R = decltype(T(0) * x);
    R acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + R(c[i]);
    return acc;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& c) {
    if (c.size() <= 1) return {T(0)};
    std::vector<T> out(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = T(double(i)) * c[i];
    return out;
}

// Divides c by (x - root) exactly (synthetic division), dropping the
// remainder.  Used to peel linear factors off a cleared denominator.
template <class T>
std::vector<T> deflate(const std::vector<T>& c, T root) {
    std::vector<T> out(c.size() - 1);
    T carry = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        out[i] = carry;
        carry = c[i] + carry * root;
    }
    return out;
}

// Rewrites c in powers of (x - center); repeated synthetic division.
template <class T>
std::vector<T> taylor_shift(std::vector<T> c, T center) {
    std::vector<T> out;
    out.reserve(c.size());
    while (true) {
        out.push_back(eval(c, center));
        if (c.size() == 1) break;
        c = deflate(c, center);
    }
    return out;
}

}
