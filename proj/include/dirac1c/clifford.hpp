#pragma once

#include <array>

#include "dirac1c/matrix.hpp"

namespace dirac1c {

// Conventions used throughout: metric diag(+1,-1,-1,-1), epsilon^{0123} = +1,
// units hbar = c = m = 1, and the chiral basis
//   gamma^0 = [[0,-I],[-I,0]],  gamma^i = [[0,sigma^i],[-sigma^i,0]],
//   gamma^5 = diag(I,-I),       C = diag(-i sigma^2, i sigma^2).

/// g^{mu mu} diagonal entries (+1,-1,-1,-1) as integers.
inline constexpr std::array<int, 4> metric_diag = {1, -1, -1, -1};

inline int metric_sign(int mu) {
    if (mu < 0 || mu > 3) throw IndexError("metric index out of range");
    return metric_diag[size_t(mu)];
}

/// Totally antisymmetric symbol with epsilon^{0123} = +1.
inline int epsilon4(int a, int b, int c, int d) {
    int p[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
        if (p[i] < 0 || p[i] > 3) throw IndexError("epsilon index out of range");
    int sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (p[i] == p[j]) return 0;
            if (p[i] > p[j]) sign = -sign;
        }
    return sign;
}

namespace detail {
// Entries as (re, im) integer pairs, row-major.
using IMat = std::array<std::array<int, 2>, 16>;

inline constexpr IMat g0_entries = {{{0,0},{0,0},{-1,0},{0,0},
                                     {0,0},{0,0},{0,0},{-1,0},
                                     {-1,0},{0,0},{0,0},{0,0},
                                     {0,0},{-1,0},{0,0},{0,0}}};
inline constexpr IMat g1_entries = {{{0,0},{0,0},{0,0},{1,0},
                                     {0,0},{0,0},{1,0},{0,0},
                                     {0,0},{-1,0},{0,0},{0,0},
                                     {-1,0},{0,0},{0,0},{0,0}}};
inline constexpr IMat g2_entries = {{{0,0},{0,0},{0,0},{0,-1},
                                     {0,0},{0,0},{0,1},{0,0},
                                     {0,0},{0,1},{0,0},{0,0},
                                     {0,-1},{0,0},{0,0},{0,0}}};
inline constexpr IMat g3_entries = {{{0,0},{0,0},{1,0},{0,0},
                                     {0,0},{0,0},{0,0},{-1,0},
                                     {-1,0},{0,0},{0,0},{0,0},
                                     {0,0},{1,0},{0,0},{0,0}}};
inline constexpr IMat g5_entries = {{{1,0},{0,0},{0,0},{0,0},
                                     {0,0},{1,0},{0,0},{0,0},
                                     {0,0},{0,0},{-1,0},{0,0},
                                     {0,0},{0,0},{0,0},{-1,0}}};
inline constexpr IMat cc_entries = {{{0,0},{-1,0},{0,0},{0,0},
                                     {1,0},{0,0},{0,0},{0,0},
                                     {0,0},{0,0},{0,0},{1,0},
                                     {0,0},{0,0},{-1,0},{0,0}}};

template <ScalarMode S>
Mat4<S> from_entries(const IMat& e) {
    Mat4<S> a;
    for (size_t i = 0; i < 16; ++i) a.m[i] = scalar_from_int<S>(e[i][0], e[i][1]);
    return a;
}
}  // namespace detail

template <ScalarMode S>
const Mat4<S>& gamma(int mu) {
    static const std::array<Mat4<S>, 4> g = {
        detail::from_entries<S>(detail::g0_entries),
        detail::from_entries<S>(detail::g1_entries),
        detail::from_entries<S>(detail::g2_entries),
        detail::from_entries<S>(detail::g3_entries)};
    if (mu < 0 || mu > 3) throw IndexError("gamma index out of range");
    return g[size_t(mu)];
}

template <ScalarMode S>
const Mat4<S>& gamma5() {
    static const Mat4<S> g = detail::from_entries<S>(detail::g5_entries);
    return g;
}

/// Charge-conjugation matrix C (real, antisymmetric, C^2 = -1).
template <ScalarMode S>
const Mat4<S>& charge_conj_matrix() {
    static const Mat4<S> c = detail::from_entries<S>(detail::cc_entries);
    return c;
}

/// sigma^{mu nu} = (i/2)[gamma^mu, gamma^nu].
template <ScalarMode S>
const Mat4<S>& sigma(int mu, int nu) {
    static const std::array<Mat4<S>, 16> table = [] {
        std::array<Mat4<S>, 16> t;
        const S half_i = scalar_from_rational<S>(Rational(0), Rational(1, 2));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const Mat4<S>&ga = gamma<S>(a), &gb = gamma<S>(b);
                t[size_t(4 * a + b)] = half_i * (ga * gb - gb * ga);
            }
        return t;
    }();
    if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw IndexError("sigma index out of range");
    return table[size_t(4 * mu + nu)];
}

/// Dirac adjoint as a row vector: (psi-bar)_j = sum_k conj(psi_k) gamma^0_{kj}.
template <ScalarMode S>
Spinor<S> dirac_adjoint(const Spinor<S>& psi) {
    Spinor<S> row;
    const Mat4<S>& g0 = gamma<S>(0);
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) row[j] += conj_of(psi[k]) * g0(k, j);
    return row;
}

/// psi-c = C (psi-bar)^T = C gamma^0 conj(psi). Involutive: (psi-c)-c = psi.
template <ScalarMode S>
Spinor<S> charge_conjugate(const Spinor<S>& psi) {
    // C gamma^0 is the antidiagonal (+1,-1,-1,+1), so spell it out.
    Spinor<S> r;
    r[0] = conj_of(psi[3]);
    r[1] = -conj_of(psi[2]);
    r[2] = -conj_of(psi[1]);
    r[3] = conj_of(psi[0]);
    return r;
}

/// Row-times-column pairing: (psi-bar) phi.
template <ScalarMode S>
S row_dot(const Spinor<S>& row, const Spinor<S>& col) {
    S r{};
    for (int i = 0; i < 4; ++i) r += row[i] * col[i];
    return r;
}

/// alpha-bar applied to psi, i.e. the scalar (alpha-bar psi).
template <ScalarMode S>
S bar_dot(const Spinor<S>& alpha, const Spinor<S>& psi) {
    return row_dot(dirac_adjoint(alpha), psi);
}

/// Sandwich scalar alpha-bar M beta-c.
template <ScalarMode S>
S sandwich(const Spinor<S>& alpha, const Mat4<S>& m, const Spinor<S>& beta) {
    return row_dot(dirac_adjoint(alpha), m * charge_conjugate(beta));
}

enum class Chirality : int8_t { plus = +1, minus = -1 };

inline Chirality flip(Chirality c) {
    return c == Chirality::plus ? Chirality::minus : Chirality::plus;
}

/// Projection (1 +- gamma^5)/2: keeps components (0,1) for plus, (2,3) for minus.
template <ScalarMode S>
Spinor<S> chiral_project(const Spinor<S>& psi, Chirality which) {
    Spinor<S> r;
    if (which == Chirality::plus) {
        r[0] = psi[0];
        r[1] = psi[1];
    } else {
        r[2] = psi[2];
        r[3] = psi[3];
    }
    return r;
}

/// True if psi lies entirely in the given chirality block (exact-zero test).
template <ScalarMode S>
bool is_chiral(const Spinor<S>& psi, Chirality which) {
    int lo = which == Chirality::plus ? 2 : 0;
    return exactly_zero(psi[lo]) && exactly_zero(psi[lo + 1]);
}

/// gamma^{mu nu}: the product gamma^mu gamma^nu for mu != nu, zero otherwise.
template <ScalarMode S>
Mat4<S> gamma_pair(int mu, int nu) {
    if (mu == nu) return Mat4<S>::zero();
    return gamma<S>(mu) * gamma<S>(nu);
}

/// gamma^{mu nu sigma lambda}: the ordered product when the indices are a
/// permutation of {0,1,2,3}, zero otherwise.
template <ScalarMode S>
Mat4<S> gamma_quad(int mu, int nu, int sg, int la) {
    if (epsilon4(mu, nu, sg, la) == 0) return Mat4<S>::zero();
    return gamma<S>(mu) * gamma<S>(nu) * gamma<S>(sg) * gamma<S>(la);
}

/// Expansion of gamma^mu gamma^nu gamma^sigma gamma^lambda into metric
/// coefficients, antisymmetrised pair products and the quad product:
///   g g - g g + g g  (three scalar terms)
/// + g^{mn}G^{sl} - g^{ms}G^{nl} + g^{ml}G^{ns} + g^{ns}G^{ml} - g^{nl}G^{ms}
/// + g^{sl}G^{mn} + G^{mnsl},
/// where G^{ab} vanishes for a = b and G^{abcd} vanishes off-permutations.
/// Valid for all 256 index tuples.
template <ScalarMode S>
Mat4<S> four_gamma_expand(int mu, int nu, int sg, int la) {
    auto g = [](int a, int b) -> long { return a == b ? metric_sign(a) : 0; };
    long scalar = g(mu, nu) * g(sg, la) - g(mu, sg) * g(nu, la) + g(mu, la) * g(nu, sg);
    Mat4<S> r = scalar_from_int<S>(scalar) * Mat4<S>::identity();

    auto add = [&r](long coeff, const Mat4<S>& m) {
        if (coeff != 0) r = r + scalar_from_int<S>(coeff) * m;
    };
    add(g(mu, nu), gamma_pair<S>(sg, la));
    add(-g(mu, sg), gamma_pair<S>(nu, la));
    add(g(mu, la), gamma_pair<S>(nu, sg));
    add(g(nu, sg), gamma_pair<S>(mu, la));
    add(-g(nu, la), gamma_pair<S>(mu, sg));
    add(g(sg, la), gamma_pair<S>(mu, nu));
    return r + gamma_quad<S>(mu, nu, sg, la);
}

/// Slash contraction a_mu gamma^mu for a covector a (lower index).
template <ScalarMode S>
Mat4<S> slash_lower(const Vec4<S>& a_lower) {
    Mat4<S> r;
    for (int mu = 0; mu < 4; ++mu)
        if (!exactly_zero(a_lower[size_t(mu)]))
            r = r + a_lower[size_t(mu)] * gamma<S>(mu);
    return r;
}

}  // namespace dirac1c
