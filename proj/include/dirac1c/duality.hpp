#pragma once

#include "dirac1c/clifford.hpp"

namespace dirac1c {

/// Duality branch of an antisymmetric rank-2 tensor:
///   plus  : *T = +i T  (component layout T^{23} = +i T^{01} etc.,
///           generated by chirality-plus spinor pairs),
///   minus : *T = -i T,
///   none  : untagged / not self-dual.
enum class Duality : int8_t { plus = +1, minus = -1, none = 0 };

inline Duality duality_of(Chirality c) {
    return c == Chirality::plus ? Duality::plus : Duality::minus;
}

inline Duality flip(Duality d) {
    if (d == Duality::plus) return Duality::minus;
    if (d == Duality::minus) return Duality::plus;
    return Duality::none;
}

/// Antisymmetric rank-2 tensor with both indices upper, plus a duality tag.
template <ScalarMode S>
struct Bivector {
    Mat4<S> t;
    Duality tag = Duality::none;

    S& operator()(int mu, int nu) { return t(mu, nu); }
    const S& operator()(int mu, int nu) const { return t(mu, nu); }

    friend Bivector operator+(const Bivector& a, const Bivector& b) {
        return {a.t + b.t, a.tag == b.tag ? a.tag : Duality::none};
    }
    friend Bivector operator-(const Bivector& a, const Bivector& b) {
        return {a.t - b.t, a.tag == b.tag ? a.tag : Duality::none};
    }
    friend Bivector operator-(const Bivector& a) { return {-a.t, a.tag}; }
    friend Bivector operator*(const S& s, const Bivector& a) { return {s * a.t, a.tag}; }
    friend bool operator==(const Bivector& a, const Bivector& b) {
        return a.t == b.t && a.tag == b.tag;
    }

    bool is_zero() const {
        for (const S& z : t.m)
            if (!exactly_zero(z)) return false;
        return true;
    }
};

/// Elementwise conjugate; flips the duality branch.
template <ScalarMode S>
Bivector<S> conj_bivector(const Bivector<S>& b) {
    return {b.t.conj(), flip(b.tag)};
}

/// Hodge dual *T^{ab} = (1/2) eps^{abcd} T_{cd}. Satisfies **T = -T.
/// A tagged tensor keeps its tag (it only gets scaled by +-i).
template <ScalarMode S>
Bivector<S> hodge_dual(const Bivector<S>& b) {
    Bivector<S> r;
    r.tag = b.tag;
    for (int a = 0; a < 4; ++a)
        for (int c = a + 1; c < 4; ++c) {
            S sum{};
            for (int g = 0; g < 4; ++g)
                for (int d = 0; d < 4; ++d) {
                    int e = epsilon4(a, c, g, d);
                    if (e == 0) continue;
                    long w = long(e) * metric_sign(g) * metric_sign(d);
                    sum += scalar_from_int<S>(w) * b(g, d);
                }
            // the two (g,d) orderings contribute equally, hence the 1/2
            sum = scalar_from_rational<S>(Rational(1, 2), Rational(0)) * sum;
            r(a, c) = sum;
            r(c, a) = -sum;
        }
    return r;
}

/// Full contraction T^{mn} U_{mn} (second factor lowered twice).
/// Symmetric in its arguments; equals -4 dot3 on a shared branch.
template <ScalarMode S>
S contract(const Bivector<S>& a, const Bivector<S>& b) {
    S r{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            if (exactly_zero(a(mu, nu))) continue;
            long w = long(metric_sign(mu)) * metric_sign(nu);
            r += scalar_from_int<S>(w) * a(mu, nu) * b(mu, nu);
        }
    return r;
}

/// Build the self-dual tensor of branch `tag` whose (0i) row is the complex
/// 3-vector a: space-space entries are +-i times the dual component.
template <ScalarMode S>
Bivector<S> tensor_from_vec3(const Vec3<S>& a, Duality tag) {
    if (tag == Duality::none) throw BranchUnknown("tensor_from_vec3 needs a branch");
    const S i_or_minus_i =
        scalar_from_int<S>(0, tag == Duality::plus ? 1 : -1);
    Bivector<S> r;
    r.tag = tag;
    auto set = [&r](int mu, int nu, const S& v) {
        r(mu, nu) = v;
        r(nu, mu) = -v;
    };
    set(0, 1, a[0]);
    set(0, 2, a[1]);
    set(0, 3, a[2]);
    set(1, 2, i_or_minus_i * a[2]);
    set(1, 3, -(i_or_minus_i * a[1]));
    set(2, 3, i_or_minus_i * a[0]);
    return r;
}

/// Inverse of tensor_from_vec3: read off the (0i) row of a tagged tensor.
template <ScalarMode S>
Vec3<S> vec3_from_tensor(const Bivector<S>& b) {
    if (b.tag == Duality::none) throw BranchUnknown("vec3_from_tensor needs a branch");
    return {{{b(0, 1), b(0, 2), b(0, 3)}}};
}

/// Structural check: antisymmetric, and if tagged, *T = (tag) i T.
template <ScalarMode S>
bool bivector_consistent(const Bivector<S>& b, const Tolerance& tol = {}) {
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (!same_scalar(b(mu, nu), -b(nu, mu), tol)) return false;
    if (b.tag == Duality::none) return true;
    Bivector<S> star = hodge_dual(b);
    const S lam = scalar_from_int<S>(0, b.tag == Duality::plus ? 1 : -1);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (!same_scalar(star(mu, nu), lam * b(mu, nu), tol)) return false;
    return true;
}

/// theta tensor of a spinor pair: (chi-bar)_w sigma^{mn} (zeta_w)-c with both
/// spinors restricted to the chirality block `which`. Branch tag follows the
/// chirality sign.
template <ScalarMode S>
Bivector<S> spinor_pair_tensor(const Spinor<S>& chi, const Spinor<S>& zeta,
                               Chirality which) {
    Spinor<S> row = dirac_adjoint(chiral_project(chi, which));
    Spinor<S> col = charge_conjugate(chiral_project(zeta, which));
    Bivector<S> r;
    r.tag = duality_of(which);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            S v = row_dot(row, sigma<S>(mu, nu) * col);
            r(mu, nu) = v;
            r(nu, mu) = -v;
        }
    return r;
}

/// Tensor square of one chiral block of psi: (psi_w)^T C sigma^{mn} psi_w.
/// Quadratic in psi; the branch tag is opposite to the chirality sign.
template <ScalarMode S>
Bivector<S> spinor_tensor(const Spinor<S>& psi, Chirality which) {
    Spinor<S> w = chiral_project(psi, which);
    Spinor<S> row;  // (psi_w)^T C
    const Mat4<S>& c = charge_conj_matrix<S>();
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) row[j] += w[k] * c(k, j);
    Bivector<S> r;
    r.tag = duality_of(flip(which));
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            S v = row_dot(row, sigma<S>(mu, nu) * w);
            r(mu, nu) = v;
            r(nu, mu) = -v;
        }
    return r;
}

template <ScalarMode S>
Bivector<DComplex> to_dcomplex(const Bivector<S>& b) {
    return {to_dcomplex(b.t), b.tag};
}

}  // namespace dirac1c
