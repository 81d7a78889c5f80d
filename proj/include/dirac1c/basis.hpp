#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirac1c/duality.hpp"

namespace dirac1c {

/// The tensor triple (u, v, w) generated by a normalized chiral spinor pair.
/// All three live on one duality branch; the defining contractions are
///   u.u = 0, u.v = 0, v.v = 4, u.w = -8, v.w = 0, w.w = 0.
template <ScalarMode S>
struct BasisTriple {
    Bivector<S> u, v, w;
    Chirality sign = Chirality::plus;
    std::optional<std::pair<Spinor<S>, Spinor<S>>> spinors;  // generating (xi, eta)

    const Spinor<S>& xi() const {
        if (!spinors) throw PreconditionViolated("triple carries no spinors");
        return spinors->first;
    }
    const Spinor<S>& eta() const {
        if (!spinors) throw PreconditionViolated("triple carries no spinors");
        return spinors->second;
    }
};

namespace detail {
template <ScalarMode S>
std::optional<Chirality> infer_chirality(const Spinor<S>& s) {
    bool hi = !exactly_zero(s[0]) || !exactly_zero(s[1]);
    bool lo = !exactly_zero(s[2]) || !exactly_zero(s[3]);
    if (hi && !lo) return Chirality::plus;
    if (lo && !hi) return Chirality::minus;
    return std::nullopt;
}
}  // namespace detail

/// Build the triple from a chiral pair with xi-bar eta-c = 1.
template <ScalarMode S>
BasisTriple<S> triple_from_spinors(const Spinor<S>& xi, const Spinor<S>& eta,
                                   const Tolerance& tol = {}) {
    auto cx = detail::infer_chirality(xi);
    auto ce = detail::infer_chirality(eta);
    if (!cx || !ce || *cx != *ce)
        throw NotChiral("xi and eta must be chiral of one common sign");
    const S one = scalar_from_int<S>(1);
    if (!same_scalar(sandwich(xi, Mat4<S>::identity(), eta), one, tol))
        throw NotNormalized("xi-bar eta-c != 1");
    BasisTriple<S> t;
    t.sign = *cx;
    t.u = spinor_pair_tensor(xi, xi, t.sign);
    t.v = spinor_pair_tensor(xi, eta, t.sign);
    t.w = spinor_pair_tensor(eta, eta, t.sign);
    if (t.u.is_zero()) throw DegenerateU("u vanishes");
    t.spinors = {xi, eta};
    return t;
}

/// The two reference triples. Sign plus is generated by xi = e1, eta = e2;
/// sign minus by xi = e3, eta = -e4.
template <ScalarMode S>
BasisTriple<S> builtin_triple(Chirality sign) {
    Spinor<S> xi, eta;
    if (sign == Chirality::plus) {
        xi[0] = scalar_from_int<S>(1);
        eta[1] = scalar_from_int<S>(1);
    } else {
        xi[2] = scalar_from_int<S>(1);
        eta[3] = scalar_from_int<S>(-1);
    }
    return triple_from_spinors(xi, eta);
}

namespace detail {
template <ScalarMode S>
bool is_small(const S& z, const Tolerance& tol = {}) {
    if constexpr (std::same_as<S, RComplex>)
        return exactly_zero(z);
    else
        return std::abs(z) <= tol.abs_floor;
}
}  // namespace detail

/// Solve for the third basis tensor given u, v on one branch:
///   w = a1 u + a2 v + a3 k,
///   a1 = -(v.k)^2/(u.k)^2, a2 = 2(v.k)/(u.k), a3 = -8/(u.k),
/// for any admissible k (same branch, k.k = 0, u.k != 0). The result is
/// independent of the choice of k.
template <ScalarMode S>
Bivector<S> solve_w(const Bivector<S>& u, const Bivector<S>& v,
                    const Bivector<S>& k, const Tolerance& tol = {}) {
    if (u.tag == Duality::none || u.tag != v.tag || u.tag != k.tag)
        throw BranchUnknown("u, v, k must share one duality branch");
    if (u.is_zero()) throw DegenerateU("u vanishes");
    const S zero{}, four = scalar_from_int<S>(4);
    if (!same_scalar(contract(u, u), zero, tol) ||
        !same_scalar(contract(u, v), zero, tol) ||
        !same_scalar(contract(v, v), four, tol))
        throw PreconditionViolated("u, v fail the contraction preconditions");
    if (!same_scalar(contract(k, k), zero, tol))
        throw PreconditionViolated("k is not null");
    S uk = contract(u, k);
    if (detail::is_small(uk, tol)) throw PreconditionViolated("u.k vanishes");
    S vk = contract(v, k);
    S a1 = -(vk * vk) / (uk * uk);
    S a2 = (scalar_from_int<S>(2) * vk) / uk;
    S a3 = scalar_from_int<S>(-8) / uk;
    return a1 * u + a2 * v + a3 * k;
}

/// Canonical k: the same-branch tensor built from the conjugated 3-vector of
/// u. It is automatically null, and u.k = -4 sum |u_i|^2 < 0 for u != 0.
template <ScalarMode S>
Bivector<S> solve_w(const Bivector<S>& u, const Bivector<S>& v,
                    const Tolerance& tol = {}) {
    if (u.tag == Duality::none) throw BranchUnknown("u must carry a branch");
    Bivector<S> k = tensor_from_vec3(conj_vec3(vec3_from_tensor(u)), u.tag);
    return solve_w(u, v, k, tol);
}

struct UvCheck {
    std::string name;
    bool ok;
    std::string detail;
};

struct UvReport {
    std::vector<UvCheck> items;
    bool ok() const {
        for (const auto& c : items)
            if (!c.ok) return false;
        return true;
    }
};

/// Structural validation of a (u, v) pair; collects failures, never throws.
template <ScalarMode S>
UvReport validate_uv(const Bivector<S>& u, const Bivector<S>& v,
                     const Tolerance& tol = {}) {
    UvReport rep;
    auto push = [&rep](std::string name, bool ok, std::string detail = "") {
        rep.items.push_back({std::move(name), ok, std::move(detail)});
    };
    bool tagged = u.tag != Duality::none;
    push("u-tagged-selfdual", tagged && bivector_consistent(u, tol));
    push("v-same-branch", tagged && v.tag == u.tag && bivector_consistent(v, tol));
    push("u-nonzero", !u.is_zero());
    if (!tagged || v.tag != u.tag) return rep;

    const S zero{}, four = scalar_from_int<S>(4);
    push("u.u = 0", same_scalar(contract(u, u), zero, tol));
    push("u.v = 0", same_scalar(contract(u, v), zero, tol));
    push("v.v = 4", same_scalar(contract(v, v), four, tol));

    // mixed-index contraction: u^m_s v^{sn} = -i u^{mn}
    const S minus_i = scalar_from_int<S>(0, -1);
    bool mixed_ok = true;
    for (int mu = 0; mu < 4 && mixed_ok; ++mu)
        for (int nu = 0; nu < 4 && mixed_ok; ++nu) {
            S acc{};
            for (int s = 0; s < 4; ++s)
                acc += scalar_from_int<S>(metric_sign(s)) * u(mu, s) * v(s, nu);
            mixed_ok = same_scalar(acc, minus_i * u(mu, nu), tol);
        }
    push("u^m_s v^{sn} = -i u^{mn}", mixed_ok);

    // cross-component condition, applicable when u^{01} != 0:
    // u^{03} v^{02} - u^{02} v^{03} = (branch) u^{01}
    if (!detail::is_small(u(0, 1), tol)) {
        S lhs = u(0, 3) * v(0, 2) - u(0, 2) * v(0, 3);
        S rhs = u.tag == Duality::plus ? u(0, 1) : -u(0, 1);
        push("u^{03}v^{02} - u^{02}v^{03} = (sign) u^{01}", same_scalar(lhs, rhs, tol));
    }

    // 3-vector form: u = -(branch) u x v
    Vec3<S> uv = vec3_from_tensor(u), vv = vec3_from_tensor(v);
    Vec3<S> expect = scalar_from_int<S>(u.tag == Duality::plus ? -1 : 1) * cross3(uv, vv);
    bool cross_ok = true;
    for (int i = 0; i < 3; ++i) cross_ok = cross_ok && same_scalar(uv[i], expect[i], tol);
    push("u = -(sign) u x v", cross_ok);
    return rep;
}

/// Recover a generating spinor from u alone (unique up to overall sign).
/// Writing a = vec3(u), the chiral components obey
///   (xi1*)^2 = (-i a1 + a2)/2, (xi2*)^2 = (i a1 + a2)/2, -2i xi1* xi2* = a3;
/// the better-conditioned square root is taken first, principal branch.
template <ScalarMode S>
Spinor<S> spinor_from_u(const Bivector<S>& u, const Tolerance& tol = {}) {
    if (u.tag == Duality::none) throw BranchUnknown("u must carry a branch");
    if (u.is_zero()) throw DegenerateU("u vanishes");
    if (!same_scalar(contract(u, u), S{}, tol))
        throw PreconditionViolated("u is not null");
    Vec3<S> a = vec3_from_tensor(u);
    const S i = imag_unit<S>(), two = scalar_from_int<S>(2);
    S c1 = (a[1] - i * a[0]) / two;  // (xi1*)^2
    S c2 = (a[1] + i * a[0]) / two;  // (xi2*)^2

    auto root = [](const S& z) -> S {
        if constexpr (std::same_as<S, RComplex>) {
            auto r = sqrt_principal(z);
            if (!r) throw PreconditionViolated("u has no exact spinor root");
            return *r;
        } else {
            return sqrt_principal(z);
        }
    };

    S x1s, x2s;
    if (abs_sq(c1) >= abs_sq(c2)) {
        x1s = root(c1);
        x2s = a[2] / (-two * i * x1s);  // c1 >= c2 and u != 0 imply x1s != 0
    } else {
        x2s = root(c2);
        x1s = a[2] / (-two * i * x2s);
    }
    Spinor<S> xi;
    int base = u.tag == Duality::plus ? 0 : 2;
    xi[base] = conj_of(x1s);
    xi[base + 1] = conj_of(x2s);
    return xi;
}

/// Recover eta from (u, v) and a generating spinor xi of u. A chiral
/// component of xi counts as zero when |xi_i| <= 1e-12 ||xi|| (float mode)
/// or is exactly zero (exact mode).
template <ScalarMode S>
Spinor<S> eta_from_uv(const Bivector<S>& u, const Bivector<S>& v,
                      const Spinor<S>& xi, const Tolerance& tol = {}) {
    if (u.tag == Duality::none || v.tag != u.tag)
        throw BranchUnknown("u, v must share one duality branch");
    Chirality sign = u.tag == Duality::plus ? Chirality::plus : Chirality::minus;
    {
        Bivector<S> check = spinor_pair_tensor(xi, xi, sign);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu)
                if (!same_scalar(check(mu, nu), u(mu, nu), tol))
                    throw PreconditionViolated("xi does not generate u");
    }
    int base = sign == Chirality::plus ? 0 : 2;
    S x1s = conj_of(xi[base]), x2s = conj_of(xi[base + 1]);

    bool z1, z2;
    if constexpr (std::same_as<S, RComplex>) {
        z1 = exactly_zero(x1s);
        z2 = exactly_zero(x2s);
    } else {
        double n = std::sqrt(abs_sq(xi[0]) + abs_sq(xi[1]) + abs_sq(xi[2]) + abs_sq(xi[3]));
        z1 = std::abs(x1s) <= 1e-12 * n;
        z2 = std::abs(x2s) <= 1e-12 * n;
    }
    if (z1 && z2) throw DegenerateU("xi vanishes");

    Vec3<S> b = vec3_from_tensor(v);
    const S i = imag_unit<S>(), two = scalar_from_int<S>(2);
    S e1s, e2s;
    if (!z1 && !z2) {
        e1s = (b[1] - i * b[0]) / (two * x1s);
        e2s = (b[1] + i * b[0]) / (two * x2s);
    } else if (z1) {
        e1s = b[2] / (-i * x2s);
        e2s = b[0] / (-i * x2s);
    } else {
        e1s = b[0] / (i * x1s);
        e2s = b[2] / (-i * x1s);
    }
    Spinor<S> eta;
    eta[base] = conj_of(e1s);
    eta[base + 1] = conj_of(e2s);
    return eta;
}

template <ScalarMode S>
BasisTriple<DComplex> to_dcomplex(const BasisTriple<S>& t) {
    BasisTriple<DComplex> r;
    r.u = to_dcomplex(t.u);
    r.v = to_dcomplex(t.v);
    r.w = to_dcomplex(t.w);
    r.sign = t.sign;
    if (t.spinors) r.spinors = {to_dcomplex(t.spinors->first), to_dcomplex(t.spinors->second)};
    return r;
}

}  // namespace dirac1c
