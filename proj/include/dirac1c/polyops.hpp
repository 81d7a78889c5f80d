#pragma once

#include "dirac1c/fields.hpp"

namespace dirac1c {

/// Lower-index potential components A_mu = g_{mu mu} A^mu.
inline PolyVec4 lower_index(const PolyVec4& upper) {
    PolyVec4 lower;
    for (int mu = 0; mu < 4; ++mu)
        lower[size_t(mu)] = scalar_from_int<RComplex>(metric_sign(mu)) * upper[size_t(mu)];
    return lower;
}

/// Minimally coupled momentum (i d_mu - A_mu) f, a lower-index covector.
inline Poly gauge_momentum(const Poly& f, const PolyVec4& a_upper, int mu) {
    RComplex i = imag_unit<RComplex>();
    Poly a_mu = scalar_from_int<RComplex>(metric_sign(mu)) * a_upper[size_t(mu)];
    return i * f.deriv(mu) - a_mu * f;
}

/// The first-order operator i gamma^mu d_mu psi - A_mu gamma^mu psi.
inline PolySpinor dirac_apply(const PolySpinor& psi, const PolyVec4& a_upper) {
    PolySpinor r;
    RComplex i = imag_unit<RComplex>();
    for (int mu = 0; mu < 4; ++mu) {
        Poly a_mu = scalar_from_int<RComplex>(metric_sign(mu)) * a_upper[size_t(mu)];
        const Mat4<RComplex>& g = gamma<RComplex>(mu);
        PolySpinor slice;
        for (int j = 0; j < 4; ++j) slice[j] = i * psi[j].deriv(mu) - a_mu * psi[j];
        r = r + matrix_apply(g, slice);
    }
    return r;
}

/// Residual of the first-order equation: dirac_apply(psi) - psi.
inline PolySpinor dirac_residual(const PolySpinor& psi, const PolyVec4& a_upper) {
    return dirac_apply(psi, a_upper) - psi;
}

/// Scalar second-order operator
///   d^mu d_mu f + 2i A^mu d_mu f + i (d_mu A^mu) f - A^mu A_mu f + f.
inline Poly box_prime(const Poly& f, const PolyVec4& a_upper) {
    RComplex two_i(0, 2);
    RComplex i = imag_unit<RComplex>();
    Poly r = f;
    for (int mu = 0; mu < 4; ++mu) {
        RComplex g = scalar_from_int<RComplex>(metric_sign(mu));
        r = r + g * f.deriv(mu).deriv(mu);
        r = r + two_i * (a_upper[size_t(mu)] * f.deriv(mu));
        r = r + i * (a_upper[size_t(mu)].deriv(mu) * f);
        r = r - g * (a_upper[size_t(mu)] * a_upper[size_t(mu)] * f);
    }
    return r;
}

inline PolySpinor box_prime(const PolySpinor& psi, const PolyVec4& a_upper) {
    PolySpinor r;
    for (int j = 0; j < 4; ++j) r[j] = box_prime(psi[j], a_upper);
    return r;
}

/// Residual of the operator identity D^2 = (1 - box') - F, namely
/// D(D psi) - psi + box'(psi) + F psi. Vanishes identically for every
/// polynomial psi and potential.
inline PolySpinor second_order_residual(const PolySpinor& psi, const PolyVec4& a_upper) {
    Faraday f = faraday_from_potential(a_upper);
    PolySpinor dd = dirac_apply(dirac_apply(psi, a_upper), a_upper);
    PolySpinor fpsi = matrix_apply(faraday_matrix_poly(f), psi);
    return dd - psi + box_prime(psi, a_upper) + fpsi;
}

/// (box' + F) psi, the second-order operator whose kernel contains every
/// solution of the first-order equation.
inline PolySpinor second_order_apply(const PolySpinor& psi, const PolyVec4& a_upper) {
    Faraday f = faraday_from_potential(a_upper);
    return box_prime(psi, a_upper) + matrix_apply(faraday_matrix_poly(f), psi);
}

}  // namespace dirac1c
