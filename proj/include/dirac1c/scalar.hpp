#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include "dirac1c/rational.hpp"

namespace dirac1c {

/// Complex scalar in exact mode: a pair of arbitrary-precision rationals.
struct RComplex {
    Rational re{0};
    Rational im{0};

    RComplex() = default;
    RComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RComplex(long r, long i = 0) : re(r), im(i) {}

    friend RComplex operator+(const RComplex& a, const RComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RComplex operator-(const RComplex& a, const RComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RComplex operator-(const RComplex& a) { return {-a.re, -a.im}; }
    friend RComplex operator*(const RComplex& a, const RComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RComplex operator/(const RComplex& a, const RComplex& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (sgn(n) == 0) throw std::domain_error("division by zero RComplex");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    RComplex& operator+=(const RComplex& b) { return *this = *this + b; }
    RComplex& operator-=(const RComplex& b) { return *this = *this - b; }
    RComplex& operator*=(const RComplex& b) { return *this = *this * b; }
    RComplex& operator/=(const RComplex& b) { return *this = *this / b; }
    friend bool operator==(const RComplex& a, const RComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Complex scalar in float mode.
using DComplex = std::complex<double>;

template <class S>
concept ScalarMode = std::same_as<S, RComplex> || std::same_as<S, DComplex>;

// ---- mode-generic helpers -------------------------------------------------

inline RComplex conj_of(const RComplex& z) { return {z.re, -z.im}; }
inline DComplex conj_of(const DComplex& z) { return std::conj(z); }

inline bool exactly_zero(const RComplex& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }
inline bool exactly_zero(const DComplex& z) { return z.real() == 0.0 && z.imag() == 0.0; }

/// |z|^2 in the mode's own arithmetic (rational in exact mode).
inline Rational abs_sq(const RComplex& z) { return z.re * z.re + z.im * z.im; }
inline double abs_sq(const DComplex& z) { return std::norm(z); }

inline double to_double(const Rational& r) { return r.get_d(); }
inline DComplex to_dcomplex(const RComplex& z) { return {z.re.get_d(), z.im.get_d()}; }
inline DComplex to_dcomplex(const DComplex& z) { return z; }

template <ScalarMode S>
S scalar_from_int(long re, long im = 0) {
    if constexpr (std::same_as<S, RComplex>)
        return RComplex(re, im);
    else
        return DComplex(double(re), double(im));
}

template <ScalarMode S>
S scalar_from_rational(const Rational& re, const Rational& im) {
    if constexpr (std::same_as<S, RComplex>)
        return RComplex(re, im);
    else
        return DComplex(re.get_d(), im.get_d());
}

template <ScalarMode S>
S imag_unit() { return scalar_from_int<S>(0, 1); }

/// Float comparisons go through one policy: relative 1e-10 with
/// absolute floor 1e-13. Exact mode compares with == (zero tolerance).
struct Tolerance {
    double rel = 1e-10;
    double abs_floor = 1e-13;
    bool near(const DComplex& a, const DComplex& b) const {
        double scale = std::max(std::abs(a), std::abs(b));
        return std::abs(a - b) <= std::max(abs_floor, rel * scale);
    }
    bool near(double a, double b) const { return near(DComplex(a, 0), DComplex(b, 0)); }
};

inline bool same_scalar(const RComplex& a, const RComplex& b, const Tolerance& = {}) {
    return a == b;
}
inline bool same_scalar(const DComplex& a, const DComplex& b, const Tolerance& tol = {}) {
    return tol.near(a, b);
}

/// Principal complex square root: result has re > 0, or re = 0 and im >= 0.
inline DComplex sqrt_principal(const DComplex& z) {
    DComplex r = std::sqrt(z);
    if (r.real() < 0 || (r.real() == 0 && r.imag() < 0)) r = -r;
    return r;
}

/// Exact principal square root; empty unless z is a perfect Gaussian-rational
/// square. Writing z = (x+iy)^2 gives x^2 = (re + |z|)/2 and y = im/(2x).
inline std::optional<RComplex> sqrt_principal(const RComplex& z) {
    auto r = exact_sqrt(abs_sq(z));
    if (!r) return std::nullopt;
    auto x = exact_sqrt(Rational((z.re + *r) / 2));
    if (!x) return std::nullopt;
    if (sgn(*x) != 0) return RComplex(*x, Rational(z.im / (2 * *x)));
    if (sgn(z.im) != 0) return std::nullopt;
    auto y = exact_sqrt(Rational(-z.re));
    if (!y) return std::nullopt;
    return RComplex(Rational(0), *y);
}

inline std::string to_string(const RComplex& z) {
    return "(" + z.re.get_str() + ", " + z.im.get_str() + ")";
}
inline std::string to_string(const DComplex& z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace dirac1c
