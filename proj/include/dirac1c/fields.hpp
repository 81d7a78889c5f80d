#pragma once

#include <string>

#include "dirac1c/basis.hpp"
#include "dirac1c/poly.hpp"

namespace dirac1c {

/// External electromagnetic field configuration. Two families:
///  - constant_f: homogeneous field given by real rational E and H vectors,
///  - poly: explicit polynomial four-potential A^mu (upper index).
struct FieldConfig {
    enum class Family { constant_f, poly };

    Family family = Family::constant_f;
    std::array<Rational, 3> electric{};
    std::array<Rational, 3> magnetic{};
    PolyVec4 potential_poly{};
    std::string description;

    static FieldConfig constant_field(const std::array<Rational, 3>& e,
                                      const std::array<Rational, 3>& h,
                                      std::string desc = "") {
        FieldConfig c;
        c.family = Family::constant_f;
        c.electric = e;
        c.magnetic = h;
        c.description = std::move(desc);
        return c;
    }

    static FieldConfig zero_field(std::string desc = "vanishing potential") {
        return constant_field({}, {}, std::move(desc));
    }

    static FieldConfig polynomial_field(PolyVec4 a_upper, std::string desc = "") {
        FieldConfig c;
        c.family = Family::poly;
        c.potential_poly = std::move(a_upper);
        c.description = std::move(desc);
        return c;
    }

    bool has_magnetic_part() const {
        for (const Rational& h : magnetic)
            if (h != 0) return true;
        return false;
    }

    /// Upper-index potential A^mu(x). For the constant family this is the
    /// covariant gauge A^mu = -(1/2) F^{mu nu} x_nu, which supports both E
    /// and H but is not periodic in any coordinate the field acts on.
    PolyVec4 potential() const;

    /// Gauge with A^0 = 0 and A^i = -E^i x^0: periodic in space, so usable
    /// on a spatial grid. Only available for a purely electric constant
    /// field; throws ConfigError otherwise.
    PolyVec4 temporal_potential() const;
};

/// Field strength tensor F^{mu nu}(x) with polynomial entries.
/// Layout: F^{0i} = -E^i, F^{12} = -H^3, F^{13} = H^2, F^{23} = -H^1.
struct Faraday {
    std::array<Poly, 16> up{};

    Poly& operator()(int mu, int nu) { return up[size_t(4 * mu + nu)]; }
    const Poly& operator()(int mu, int nu) const { return up[size_t(4 * mu + nu)]; }

    bool is_constant() const {
        for (const Poly& p : up)
            if (p.degree() > 0) return false;
        return true;
    }

    bool is_zero() const {
        for (const Poly& p : up)
            if (!p.is_zero()) return false;
        return true;
    }

    /// Constant value of one entry; requires is_constant().
    RComplex const_at(int mu, int nu) const {
        const Poly& p = (*this)(mu, nu);
        if (p.degree() > 0) throw PreconditionViolated("field tensor entry is not constant");
        return p.is_zero() ? RComplex{} : p.terms.begin()->second;
    }

    /// Largest coefficient magnitude over all entries, the scale used by
    /// floating-point transversality thresholds.
    double sup_norm() const {
        double m = 0;
        for (const Poly& p : up)
            for (const auto& [mono, c] : p.terms) m = std::max(m, std::abs(to_dcomplex(c)));
        return m;
    }

    Vec3<RComplex> electric_const() const {
        return {-const_at(0, 1), -const_at(0, 2), -const_at(0, 3)};
    }
    Vec3<RComplex> magnetic_const() const {
        return {-const_at(2, 3), const_at(1, 3), -const_at(1, 2)};
    }
};

/// F^{mu nu} = d^mu A^nu - d^nu A^mu from an upper-index potential.
inline Faraday faraday_from_potential(const PolyVec4& a_upper) {
    Faraday f;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            if (mu == nu) continue;
            Poly up = scalar_from_int<RComplex>(metric_sign(mu)) * a_upper[size_t(nu)].deriv(mu);
            Poly vn = scalar_from_int<RComplex>(metric_sign(nu)) * a_upper[size_t(mu)].deriv(nu);
            f(mu, nu) = up - vn;
        }
    return f;
}

inline Faraday faraday_from_config(const FieldConfig& cfg) {
    if (cfg.family == FieldConfig::Family::poly)
        return faraday_from_potential(cfg.potential_poly);
    Faraday f;
    auto set = [&f](int mu, int nu, const Rational& value) {
        f(mu, nu) = Poly::constant(RComplex(value, Rational(0)));
        f(nu, mu) = -f(mu, nu);
    };
    set(0, 1, -cfg.electric[0]);
    set(0, 2, -cfg.electric[1]);
    set(0, 3, -cfg.electric[2]);
    set(1, 2, -cfg.magnetic[2]);
    set(1, 3, cfg.magnetic[1]);
    set(2, 3, -cfg.magnetic[0]);
    return f;
}

inline PolyVec4 FieldConfig::potential() const {
    if (family == Family::poly) return potential_poly;
    Faraday f = faraday_from_config(*this);
    PolyVec4 a;
    for (int mu = 0; mu < 4; ++mu) {
        Poly p;
        for (int nu = 0; nu < 4; ++nu) {
            if (mu == nu) continue;
            RComplex c = scalar_from_rational<RComplex>(Rational(-1, 2) * metric_sign(nu), Rational(0)) *
                         f.const_at(mu, nu);
            p = p + Poly::constant(c) * Poly::coordinate(nu);
        }
        a[size_t(mu)] = p;
    }
    return a;
}

inline PolyVec4 FieldConfig::temporal_potential() const {
    if (family != Family::constant_f)
        throw ConfigError("temporal gauge requires the constant-field family");
    if (has_magnetic_part())
        throw ConfigError("temporal gauge requires a vanishing magnetic field");
    PolyVec4 a;
    for (int i = 0; i < 3; ++i)
        a[size_t(i + 1)] =
            Poly::constant(scalar_from_rational<RComplex>(-electric[size_t(i)], Rational(0))) *
            Poly::coordinate(0);
    return a;
}

// ---- scalar projections of the field tensor --------------------------------

namespace detail {
inline void require_constant(const Faraday& f) {
    if (!f.is_constant()) throw PreconditionViolated("field tensor is not constant");
}
}  // namespace detail

/// The complex 3-vector E - (tag) i H that a branch-tagged antisymmetric
/// tensor pairs with: E - iH for the self-dual branch, E + iH for the other.
inline Vec3<RComplex> weber_vector(const Faraday& f, Duality tag) {
    detail::require_constant(f);
    if (tag == Duality::none) throw BranchUnknown("weber vector needs a branch tag");
    Vec3<RComplex> e = f.electric_const();
    Vec3<RComplex> h = f.magnetic_const();
    RComplex factor = tag == Duality::plus ? RComplex(0, -1) : RComplex(0, 1);
    return e + factor * h;
}

/// (1/2) F_{mu nu} a^{mu nu} for a constant field tensor.
inline RComplex f_scalar_contract(const Faraday& f, const Bivector<RComplex>& a) {
    detail::require_constant(f);
    RComplex total{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            long g = long(metric_sign(mu)) * metric_sign(nu);
            total += scalar_from_int<RComplex>(g) * f.const_at(mu, nu) * a(mu, nu);
        }
    return scalar_from_rational<RComplex>(Rational(1, 2), Rational(0)) * total;
}

/// Same projection for a polynomial field tensor; returns a polynomial.
inline Poly f_scalar_contract_poly(const Faraday& f, const Bivector<RComplex>& a) {
    Poly total;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            if (exactly_zero(a(mu, nu))) continue;
            Rational g(long(metric_sign(mu)) * metric_sign(nu), 2);
            total = total + (scalar_from_rational<RComplex>(g, Rational(0)) * a(mu, nu)) * f(mu, nu);
        }
    return total;
}

/// The matrix (1/2) F_{mu nu} sigma^{mu nu} appearing in the squared
/// first-order operator, for a constant field tensor.
inline Mat4<RComplex> faraday_matrix(const Faraday& f) {
    detail::require_constant(f);
    Mat4<RComplex> m = Mat4<RComplex>::zero();
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            RComplex flow = scalar_from_int<RComplex>(long(metric_sign(mu)) * metric_sign(nu)) *
                            f.const_at(mu, nu);
            if (exactly_zero(flow)) continue;
            m = m + flow * sigma<RComplex>(mu, nu);
        }
    return m;
}

/// Polynomial version of the same matrix.
inline std::array<Poly, 16> faraday_matrix_poly(const Faraday& f) {
    std::array<Poly, 16> m{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            Rational g(long(metric_sign(mu)) * metric_sign(nu), 1);
            Poly flow = scalar_from_rational<RComplex>(g, Rational(0)) * f(mu, nu);
            if (flow.is_zero()) continue;
            const Mat4<RComplex>& s = sigma<RComplex>(mu, nu);
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    if (!exactly_zero(s(j, k)))
                        m[size_t(4 * j + k)] = m[size_t(4 * j + k)] + s(j, k) * flow;
        }
    return m;
}

/// alpha-bar M beta-c with M the faraday matrix: the spinor sandwich route
/// to the same scalar that f_scalar_contract computes from the pair tensor.
inline RComplex f_scalar_sandwich(const Faraday& f, const Spinor<RComplex>& alpha,
                                  const Spinor<RComplex>& beta) {
    return sandwich(alpha, faraday_matrix(f), beta);
}

/// Complex 3-vector route: a branch-tagged tensor reduces to its 3-vector,
/// and the projection becomes a plain dot product with the weber vector.
inline RComplex f_scalar_weber(const Faraday& f, const Bivector<RComplex>& a) {
    return dot3(vec3_from_tensor(a), weber_vector(f, a.tag));
}

enum class FScalarRoute { sandwich, contract, vec3dot };

/// The three scalar projections of a constant field onto a basis triple.
struct FieldScalars {
    RComplex f_u, f_v, f_w;
};

inline FieldScalars field_scalars(const Faraday& f, const BasisTriple<RComplex>& triple,
                                  FScalarRoute route) {
    switch (route) {
        case FScalarRoute::sandwich: {
            const Spinor<RComplex>& xi = triple.xi();
            const Spinor<RComplex>& eta = triple.eta();
            return {f_scalar_sandwich(f, xi, xi), f_scalar_sandwich(f, xi, eta),
                    f_scalar_sandwich(f, eta, eta)};
        }
        case FScalarRoute::contract:
            return {f_scalar_contract(f, triple.u), f_scalar_contract(f, triple.v),
                    f_scalar_contract(f, triple.w)};
        case FScalarRoute::vec3dot: {
            Vec3<RComplex> w = weber_vector(f, duality_of(triple.sign));
            return {dot3(vec3_from_tensor(triple.u), w), dot3(vec3_from_tensor(triple.v), w),
                    dot3(vec3_from_tensor(triple.w), w)};
        }
    }
    throw Error("unknown field scalar route");
}

}  // namespace dirac1c
