#pragma once

#include <cstddef>
#include <vector>

#include "qres/rational.hpp"

namespace qres {

// Dense univariate polynomials, coeffs[i] = coefficient of x^i.
template <class T>
using Poly = std::vector<T>;

using PolyInt = Poly<BigInt>;
using PolyExact = Poly<BigRational>;

template <class T>
void poly_trim(Poly<T>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Degree with deg(0) = -1.
template <class T>
long poly_degree(const Poly<T>& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<long>(i);
    return -1;
}

template <class T>
Poly<T> poly_add(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r(std::max(a.size(), b.size()), T(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

template <class T>
Poly<T> poly_sub(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r(std::max(a.size(), b.size()), T(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

template <class T>
Poly<T> poly_mul(const Poly<T>& a, const Poly<T>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<T> r(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    poly_trim(r);
    return r;
}

template <class T, class S>
Poly<T> poly_scale(const Poly<T>& a, const S& c) {
    Poly<T> r = a;
    for (auto& x : r) x *= c;
    poly_trim(r);
    return r;
}

template <class T>
Poly<T> poly_derivative(const Poly<T>& a) {
    if (a.size() <= 1) return {};
    Poly<T> r(a.size() - 1, T(0));
    for (std::size_t i = 1; i < a.size(); ++i)
        r[i - 1] = a[i] * static_cast<unsigned long>(i);
    poly_trim(r);
    return r;
}

// Horner evaluation; the value type may widen the coefficient type
// (e.g. integer coefficients at a rational point).
template <class T, class V>
V poly_eval(const Poly<T>& a, const V& x) {
    V acc(0);
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + V(a[i]);
    return acc;
}

// p(inner(x)) by Horner over polynomial arithmetic; meant for low-degree
// inner substitutions such as 1 - x.
template <class T>
Poly<T> poly_compose(const Poly<T>& p, const Poly<T>& inner) {
    Poly<T> acc;
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = poly_mul(acc, inner);
        if (acc.empty()) acc.push_back(T(0));
        acc[0] += p[i];
        poly_trim(acc);
    }
    return acc;
}

template <class T>
bool poly_equal(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> x = a, y = b;
    poly_trim(x);
    poly_trim(y);
    return x == y;
}

// x^k (1 + c*x)^e expanded by the binomial theorem.
inline PolyInt poly_shifted_binomial_power(std::size_t k, const BigInt& c,
                                           unsigned long e) {
    PolyInt r(k + e + 1, BigInt(0));
    BigInt cpow = 1;
    for (unsigned long i = 0; i <= e; ++i) {
        r[k + i] = binomial(e, i) * cpow;
        cpow *= c;
    }
    poly_trim(r);
    return r;
}

} // namespace qres
