#pragma once

#include <cmath>

#include "dirac1c/random.hpp"

namespace dirac1c {

/// Element of SL(2,C); the caller is responsible for det = 1.
template <ScalarMode S>
struct SpinHalfMap {
    S s11, s12, s21, s22;

    S det() const { return s11 * s22 - s12 * s21; }
    friend SpinHalfMap operator-(const SpinHalfMap& s) {
        return {-s.s11, -s.s12, -s.s21, -s.s22};
    }
    friend SpinHalfMap operator*(const SpinHalfMap& a, const SpinHalfMap& b) {
        return {a.s11 * b.s11 + a.s12 * b.s21, a.s11 * b.s12 + a.s12 * b.s22,
                a.s21 * b.s11 + a.s22 * b.s21, a.s21 * b.s12 + a.s22 * b.s22};
    }

    static SpinHalfMap identity() {
        SpinHalfMap s{};
        s.s11 = scalar_from_int<S>(1);
        s.s22 = scalar_from_int<S>(1);
        return s;
    }
};

/// Bispinor representation: block-diagonal (s, (s-dagger)^-1), acting on the
/// chirality-plus block with s and the minus block with the adjugate form
/// [[conj s22, -conj s21], [-conj s12, conj s11]] (exact for det = 1).
template <ScalarMode S>
Mat4<S> spinor_rep(const SpinHalfMap<S>& s) {
    Mat4<S> m;
    m(0, 0) = s.s11;
    m(0, 1) = s.s12;
    m(1, 0) = s.s21;
    m(1, 1) = s.s22;
    m(2, 2) = conj_of(s.s22);
    m(2, 3) = -conj_of(s.s21);
    m(3, 2) = -conj_of(s.s12);
    m(3, 3) = conj_of(s.s11);
    return m;
}

/// Vector (tensor-index) representation Lambda^mu_nu as the half product of
/// two explicit 4x4 matrices, one in the entries of s and one in their
/// conjugates. Real and metric-orthogonal for any det-1 s.
template <ScalarMode S>
Mat4<S> vector_rep(const SpinHalfMap<S>& s) {
    const S i = imag_unit<S>();
    const S a = s.s11, b = s.s12, c = s.s21, d = s.s22;
    const S ac = conj_of(a), bc = conj_of(b), cc = conj_of(c), dc = conj_of(d);

    Mat4<S> left;
    auto setrow = [&left](int r, S x0, S x1, S x2, S x3) {
        left(r, 0) = x0; left(r, 1) = x1; left(r, 2) = x2; left(r, 3) = x3;
    };
    setrow(0, a, b, c, d);
    setrow(1, c, d, a, b);
    setrow(2, -(i * c), -(i * d), i * a, i * b);
    setrow(3, a, b, -c, -d);

    Mat4<S> right;
    auto setrow2 = [&right](int r, S x0, S x1, S x2, S x3) {
        right(r, 0) = x0; right(r, 1) = x1; right(r, 2) = x2; right(r, 3) = x3;
    };
    setrow2(0, ac, bc, -(i * bc), ac);
    setrow2(1, bc, ac, i * ac, -bc);
    setrow2(2, cc, dc, -(i * dc), cc);
    setrow2(3, dc, cc, i * cc, -dc);

    return scalar_from_rational<S>(Rational(1, 2), Rational(0)) * (left * right);
}

/// Transform both tensor indices: T' = Lambda T Lambda^T. Branch tags are
/// preserved by any proper orthochronous map.
template <ScalarMode S>
Bivector<S> transform_bivector(const Mat4<S>& lambda, const Bivector<S>& b) {
    return {lambda * b.t * lambda.transpose(), b.tag};
}

/// Check Lambda^T g Lambda = g within the mode's comparison policy.
template <ScalarMode S>
bool preserves_metric(const Mat4<S>& lambda, const Tolerance& tol = {}) {
    Mat4<S> g;
    for (int m = 0; m < 4; ++m) g(m, m) = scalar_from_int<S>(metric_sign(m));
    Mat4<S> lhs = lambda.transpose() * g * lambda;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            if (!same_scalar(lhs(m, n), g(m, n), tol)) return false;
    return true;
}

/// Pure boost along axis (1..3) with rapidity r: cosh(r/2) + sinh(r/2) sigma.
inline SpinHalfMap<DComplex> boost(int axis, double rapidity) {
    double ch = std::cosh(rapidity / 2), sh = std::sinh(rapidity / 2);
    switch (axis) {
        case 1: return {{ch, 0}, {sh, 0}, {sh, 0}, {ch, 0}};
        case 2: return {{ch, 0}, {0, -sh}, {0, sh}, {ch, 0}};
        case 3: return {{ch + sh, 0}, {0, 0}, {0, 0}, {ch - sh, 0}};
        default: throw IndexError("boost axis must be 1..3");
    }
}

/// Rotation about axis (1..3) by angle t: cos(t/2) - i sin(t/2) sigma.
inline SpinHalfMap<DComplex> rotation(int axis, double angle) {
    double c = std::cos(angle / 2), s = std::sin(angle / 2);
    switch (axis) {
        case 1: return {{c, 0}, {0, -s}, {0, -s}, {c, 0}};
        case 2: return {{c, 0}, {-s, 0}, {s, 0}, {c, 0}};
        case 3: return {{c, -s}, {0, 0}, {0, 0}, {c, s}};
        default: throw IndexError("rotation axis must be 1..3");
    }
}

/// Exact random SL(2,C): small Gaussian-rational entries, determinant made
/// exactly 1 by dividing one row by det (redraw on det = 0).
inline SpinHalfMap<RComplex> random_sl2c_exact(RandomSource& rng) {
    for (;;) {
        SpinHalfMap<RComplex> s{rng.scalar<RComplex>(), rng.scalar<RComplex>(),
                                rng.scalar<RComplex>(), rng.scalar<RComplex>()};
        RComplex d = s.det();
        if (exactly_zero(d)) continue;
        s.s21 = s.s21 / d;
        s.s22 = s.s22 / d;
        return s;
    }
}

/// Float random SL(2,C): normalize by a principal square root of det,
/// redrawing nearly singular samples.
inline SpinHalfMap<DComplex> random_sl2c_float(RandomSource& rng) {
    for (;;) {
        SpinHalfMap<DComplex> s{rng.scalar<DComplex>(), rng.scalar<DComplex>(),
                                rng.scalar<DComplex>(), rng.scalar<DComplex>()};
        DComplex d = s.det();
        if (std::abs(d) < 1e-6) continue;
        DComplex r = sqrt_principal(d);
        s.s11 /= r; s.s12 /= r; s.s21 /= r; s.s22 /= r;
        return s;
    }
}

}  // namespace dirac1c
