#pragma once

#include "dirac1c/polyops.hpp"

namespace dirac1c {

/// Which route computes the three field scalars entering the scalar
/// equation: a spinor sandwich, a full tensor contraction, or complex
/// 3-vector dot products. All three give exactly the same values; the
/// kernel they feed is shared.
enum class ResidualForm { spinor, tensor, vec3 };

inline FScalarRoute route_of(ResidualForm form) {
    switch (form) {
        case ResidualForm::spinor: return FScalarRoute::sandwich;
        case ResidualForm::tensor: return FScalarRoute::contract;
        case ResidualForm::vec3: return FScalarRoute::vec3dot;
    }
    throw Error("unknown residual form");
}

/// The two scalar projections of a spinor field onto a basis pair.
struct PolyComponents {
    Poly phi0;  // xi-bar psi
    Poly phi1;  // eta-bar psi, or the value eliminated from phi0
};

namespace detail {
inline FieldScalars transversal_scalars(const Faraday& f, const BasisTriple<RComplex>& triple,
                                        ResidualForm form) {
    FieldScalars s = field_scalars(f, triple, route_of(form));
    if (exactly_zero(s.f_u))
        throw NonTransversal("field scalar on the u tensor vanishes; the second scalar "
                             "component cannot be eliminated");
    return s;
}
}  // namespace detail

/// Project psi onto the basis pair and eliminate the second component:
/// phi1 = f_u^{-1} (box' + f_v) phi0. Requires a constant field tensor
/// with nonvanishing u projection.
inline PolyComponents eliminate(const PolySpinor& psi, const BasisTriple<RComplex>& triple,
                                const FieldConfig& cfg) {
    Faraday f = faraday_from_config(cfg);
    FieldScalars s = detail::transversal_scalars(f, triple, ResidualForm::tensor);
    PolyVec4 a = cfg.potential();
    PolyComponents sc;
    sc.phi0 = bar_dot(triple.xi(), psi);
    Poly inner = box_prime(sc.phi0, a) + s.f_v * sc.phi0;
    sc.phi1 = (RComplex(1) / s.f_u) * inner;
    return sc;
}

/// Residual of the single fourth-order scalar equation
///   ((box' - f_v) f_u^{-1} (box' + f_v) + f_w) phi0.
/// The kernel is identical for every form; only the field scalar route
/// differs, and the routes agree exactly.
inline Poly fourth_order_residual(const Poly& phi0, const BasisTriple<RComplex>& triple,
                                  const FieldConfig& cfg, ResidualForm form) {
    Faraday f = faraday_from_config(cfg);
    FieldScalars s = detail::transversal_scalars(f, triple, form);
    PolyVec4 a = cfg.potential();
    Poly inner = (RComplex(1) / s.f_u) * (box_prime(phi0, a) + s.f_v * phi0);
    return box_prime(inner, a) - s.f_v * inner + s.f_w * phi0;
}

/// The spinor rebuilt from the two scalar components. The lower part is
/// the opposite-chirality combination phi0 eta-c - phi1 xi-c; applying the
/// first-order operator to it yields the remaining chirality.
struct Reconstruction {
    PolySpinor lower;  // chirality opposite to the triple
    PolySpinor upper;  // chirality of the triple
    PolySpinor total() const { return lower + upper; }
};

inline Reconstruction reconstruct(const PolyComponents& sc, const BasisTriple<RComplex>& triple,
                                  const FieldConfig& cfg) {
    Reconstruction r;
    Spinor<RComplex> xi_c = charge_conjugate(triple.xi());
    Spinor<RComplex> eta_c = charge_conjugate(triple.eta());
    r.lower = scale_spinor(sc.phi0, eta_c) - scale_spinor(sc.phi1, xi_c);
    r.upper = dirac_apply(r.lower, cfg.potential());
    return r;
}

// ---- currents ---------------------------------------------------------------

/// Upper-index current density j^mu = psi-bar gamma^mu psi, split into the
/// two chiral contributions. Every entry is a polynomial with real values.
struct ChiralCurrents {
    PolyVec4 total{}, plus_part{}, minus_part{};
};

inline ChiralCurrents current_direct(const PolySpinor& psi) {
    ChiralCurrents out;
    for (Chirality s : {Chirality::plus, Chirality::minus}) {
        PolySpinor w = chiral_project(psi, s);
        PolySpinor row = conj_spinor(w);
        PolyVec4& part = s == Chirality::plus ? out.plus_part : out.minus_part;
        for (int mu = 0; mu < 4; ++mu) {
            Mat4<RComplex> m = gamma<RComplex>(0) * gamma<RComplex>(mu);
            Poly j;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    if (!exactly_zero(m(a, b))) j = j + row[a] * (m(a, b) * w[b]);
            part[size_t(mu)] = j;
        }
    }
    for (int mu = 0; mu < 4; ++mu)
        out.total[size_t(mu)] = out.plus_part[size_t(mu)] + out.minus_part[size_t(mu)];
    return out;
}

/// The product tensor j^mu j^nu of one chiral current, computed from the
/// chiral tensor square alone: -(1/2) g_{sigma lambda} T^{sigma mu}
/// conj(T^{lambda nu}).
inline std::array<Poly, 16> current_product(const PolyBivector& tensor) {
    std::array<Poly, 16> p{};
    RComplex half(Rational(-1, 2), Rational(0));
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            Poly total;
            for (int sg = 0; sg < 4; ++sg) {
                Poly term = tensor(sg, mu) * tensor(sg, nu).conj();
                total = total + scalar_from_int<RComplex>(metric_sign(sg)) * term;
            }
            p[size_t(4 * mu + nu)] = half * total;
        }
    return p;
}

inline PolyBivector scale_bivector(const Poly& s, const Bivector<RComplex>& b) {
    PolyBivector r;
    r.tag = b.tag;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (!exactly_zero(b(mu, nu))) r(mu, nu) = s * Poly::constant(b(mu, nu));
    return r;
}

/// Tensor square of the triple-chirality part, expanded in the basis
/// tensors with coefficients built from the gauge momenta of the two
/// scalar components: B_mu = -(i d_mu - A_mu) phi1, C_mu = (i d_mu - A_mu)
/// phi0. Equals the direct tensor square of the rebuilt spinor.
inline PolyBivector upper_tensor_from_momenta(const PolyVec4& b_lower, const PolyVec4& c_lower,
                                              const BasisTriple<RComplex>& triple) {
    PolyVec4 b_up, c_up;
    for (int mu = 0; mu < 4; ++mu) {
        RComplex g = scalar_from_int<RComplex>(metric_sign(mu));
        b_up[size_t(mu)] = g * b_lower[size_t(mu)];
        c_up[size_t(mu)] = g * c_lower[size_t(mu)];
    }
    Poly bb, bc, cc;
    for (int la = 0; la < 4; ++la) {
        bb = bb + b_up[size_t(la)] * b_lower[size_t(la)];
        bc = bc + b_up[size_t(la)] * c_lower[size_t(la)];
        cc = cc + c_up[size_t(la)] * c_lower[size_t(la)];
    }
    auto contract_into = [](const PolyVec4& x_lower, const Bivector<RComplex>& a) {
        PolyVec4 r;
        for (int nu = 0; nu < 4; ++nu) {
            Poly total;
            for (int la = 0; la < 4; ++la)
                if (!exactly_zero(a(nu, la)))
                    total = total + a(nu, la) * x_lower[size_t(la)];
            r[size_t(nu)] = total;
        }
        return r;
    };
    PolyVec4 bu = contract_into(b_lower, triple.u);
    PolyVec4 bv = contract_into(b_lower, triple.v);
    PolyVec4 cv = contract_into(c_lower, triple.v);
    PolyVec4 cw = contract_into(c_lower, triple.w);

    RComplex two(2), two_i(0, 2);
    RComplex eps_sign = triple.sign == Chirality::plus ? RComplex(2) : RComplex(-2);
    PolyBivector r;
    r.tag = flip(duality_of(triple.sign));
    for (int nu = 0; nu < 4; ++nu)
        for (int sg = nu + 1; sg < 4; ++sg) {
            Poly v;
            v = v - two * (b_up[size_t(nu)] * bu[size_t(sg)]);
            v = v + two * (b_up[size_t(sg)] * bu[size_t(nu)]);
            if (!exactly_zero(triple.u(nu, sg))) v = v - triple.u(nu, sg) * bb;
            v = v - two_i * (b_up[size_t(nu)] * c_up[size_t(sg)]);
            v = v + two_i * (b_up[size_t(sg)] * c_up[size_t(nu)]);
            v = v - two * (b_up[size_t(nu)] * cv[size_t(sg)]);
            v = v + two * (b_up[size_t(sg)] * cv[size_t(nu)]);
            if (!exactly_zero(triple.v(nu, sg)))
                v = v - (two * triple.v(nu, sg)) * bc;
            v = v - two * (c_up[size_t(nu)] * bv[size_t(sg)]);
            v = v + two * (c_up[size_t(sg)] * bv[size_t(nu)]);
            for (int mu = 0; mu < 4; ++mu)
                for (int la = 0; la < 4; ++la) {
                    int e = epsilon4(mu, nu, sg, la);
                    if (e == 0) continue;
                    RComplex coeff = eps_sign * scalar_from_int<RComplex>(e);
                    v = v + coeff * (b_lower[size_t(mu)] * c_lower[size_t(la)]);
                }
            v = v - two * (c_up[size_t(nu)] * cw[size_t(sg)]);
            v = v + two * (c_up[size_t(sg)] * cw[size_t(nu)]);
            if (!exactly_zero(triple.w(nu, sg))) v = v - triple.w(nu, sg) * cc;
            r(nu, sg) = v;
            r(sg, nu) = -v;
        }
    return r;
}

/// Everything the current pipeline derives from the two scalar components:
/// both chiral tensor squares and the rebuilt spinor parts. The upper
/// tensor is computed twice, by the momentum expansion and by the direct
/// quadratic of the rebuilt spinor; both are kept so consumers can
/// cross-check them. Current product tensors follow via current_product.
struct ScalarCurrentPipeline {
    Chirality sign = Chirality::plus;
    Reconstruction spinors;
    PolyVec4 b_lower{}, c_lower{};
    PolyBivector tensor_lower, tensor_upper, tensor_upper_direct;
};

inline ScalarCurrentPipeline current_from_scalar(const PolyComponents& sc,
                                                 const BasisTriple<RComplex>& triple,
                                                 const FieldConfig& cfg) {
    ScalarCurrentPipeline out;
    out.sign = triple.sign;
    PolyVec4 a = cfg.potential();
    for (int mu = 0; mu < 4; ++mu) {
        out.b_lower[size_t(mu)] = -gauge_momentum(sc.phi1, a, mu);
        out.c_lower[size_t(mu)] = gauge_momentum(sc.phi0, a, mu);
    }
    out.spinors = reconstruct(sc, triple, cfg);
    RComplex mtwo(-2);
    out.tensor_lower = scale_bivector(sc.phi0 * sc.phi0, triple.w) +
                       scale_bivector(mtwo * (sc.phi1 * sc.phi0), triple.v) +
                       scale_bivector(sc.phi1 * sc.phi1, triple.u);
    out.tensor_lower.tag = duality_of(triple.sign);
    out.tensor_upper = upper_tensor_from_momenta(out.b_lower, out.c_lower, triple);
    out.tensor_upper_direct = spinor_tensor(out.spinors.upper, triple.sign);
    return out;
}

/// Squared scalar component recovered from the opposite-chirality tensor
/// square: phi0^2 = -(1/8) T^{mu nu} u_{mu nu}.
inline Poly phi_squared_from_tensor(const PolyBivector& tensor, const Bivector<RComplex>& u) {
    return scalar_from_rational<RComplex>(Rational(-1, 8), Rational(0)) * contract(tensor, u);
}

/// Evaluate one chiral current at a point from its product tensor. The
/// time component is the nonnegative square root of P^{00}; the spatial
/// components follow by dividing P^{i0}.
inline Vec4<RComplex> current_at(const std::array<Poly, 16>& prod,
                                 const std::array<Rational, 4>& x) {
    RComplex j00 = prod[0].eval(x);
    if (j00.im != 0) throw NonPositiveDensity("squared density has an imaginary part");
    if (j00.re < 0) throw NonPositiveDensity("squared density is negative");
    auto root = exact_sqrt(j00.re);
    if (!root) throw Error("squared density is not an exact square at this point");
    Vec4<RComplex> j{};
    j[0] = RComplex(*root, Rational(0));
    if (exactly_zero(j[0])) return j;
    for (int i = 1; i < 4; ++i) j[size_t(i)] = prod[size_t(4 * i)].eval(x) / j[0];
    return j;
}

}  // namespace dirac1c
