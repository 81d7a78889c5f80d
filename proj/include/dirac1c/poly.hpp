#pragma once

#include <cstdint>
#include <map>

#include "dirac1c/clifford.hpp"
#include "dirac1c/duality.hpp"
#include "dirac1c/random.hpp"

namespace dirac1c {

/// Exponents of (x^0, x^1, x^2, x^3) in one monomial.
using Monomial = std::array<uint8_t, 4>;

/// Multivariate polynomial in the four coordinates with exact complex
/// rational coefficients. Canonical form: no zero coefficients stored.
struct Poly {
    std::map<Monomial, RComplex> terms;

    static Poly constant(const RComplex& c) {
        Poly p;
        if (!exactly_zero(c)) p.terms[{0, 0, 0, 0}] = c;
        return p;
    }
    static Poly coordinate(int mu) {
        if (mu < 0 || mu > 3) throw IndexError("coordinate index out of range");
        Poly p;
        Monomial m{};
        m[size_t(mu)] = 1;
        p.terms[m] = RComplex(1);
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms)
            d = std::max(d, int(m[0]) + int(m[1]) + int(m[2]) + int(m[3]));
        return d;
    }

    void prune() {
        for (auto it = terms.begin(); it != terms.end();)
            it = exactly_zero(it->second) ? terms.erase(it) : std::next(it);
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms) r.terms[m] += c;
        r.prune();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (const auto& [m, c] : b.terms) r.terms[m] -= c;
        r.prune();
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& [m, c] : r.terms) c = -c;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                Monomial m;
                for (int i = 0; i < 4; ++i) {
                    int e = int(ma[size_t(i)]) + int(mb[size_t(i)]);
                    if (e > 255) throw Error("polynomial degree overflow");
                    m[size_t(i)] = uint8_t(e);
                }
                r.terms[m] += ca * cb;
            }
        r.prune();
        return r;
    }
    friend Poly operator*(const RComplex& s, const Poly& a) {
        Poly r;
        if (exactly_zero(s)) return r;
        r = a;
        for (auto& [m, c] : r.terms) c = s * c;
        r.prune();
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }

    /// Partial derivative with respect to x^mu (a lower-index derivative).
    Poly deriv(int mu) const {
        if (mu < 0 || mu > 3) throw IndexError("derivative index out of range");
        Poly r;
        for (const auto& [m, c] : terms) {
            uint8_t e = m[size_t(mu)];
            if (e == 0) continue;
            Monomial n = m;
            n[size_t(mu)] = uint8_t(e - 1);
            r.terms[n] += RComplex(long(e)) * c;
        }
        r.prune();
        return r;
    }

    /// Complex conjugate as a function of real coordinates.
    Poly conj() const {
        Poly r = *this;
        for (auto& [m, c] : r.terms) c = conj_of(c);
        return r;
    }

    RComplex eval(const std::array<Rational, 4>& x) const {
        RComplex total{};
        for (const auto& [m, c] : terms) {
            Rational p(1);
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < int(m[size_t(i)]); ++k) p *= x[size_t(i)];
            total += RComplex(p, Rational(0)) * c;
        }
        return total;
    }

    DComplex eval(const std::array<double, 4>& x) const {
        DComplex total{};
        for (const auto& [m, c] : terms) {
            double p = 1;
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < int(m[size_t(i)]); ++k) p *= x[size_t(i)];
            total += p * to_dcomplex(c);
        }
        return total;
    }
};

/// Spinor with polynomial components.
struct PolySpinor {
    std::array<Poly, 4> c{};

    Poly& operator[](int i) { return c[size_t(i)]; }
    const Poly& operator[](int i) const { return c[size_t(i)]; }

    friend PolySpinor operator+(const PolySpinor& a, const PolySpinor& b) {
        PolySpinor r;
        for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend PolySpinor operator-(const PolySpinor& a, const PolySpinor& b) {
        PolySpinor r;
        for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
        return r;
    }
    friend PolySpinor operator-(const PolySpinor& a) {
        PolySpinor r;
        for (int i = 0; i < 4; ++i) r[i] = -a[i];
        return r;
    }
    friend PolySpinor operator*(const Poly& s, const PolySpinor& a) {
        PolySpinor r;
        for (int i = 0; i < 4; ++i) r[i] = s * a[i];
        return r;
    }
    friend bool operator==(const PolySpinor& a, const PolySpinor& b) { return a.c == b.c; }

    bool is_zero() const {
        for (const Poly& p : c)
            if (!p.is_zero()) return false;
        return true;
    }
};

/// Four polynomials indexed by a spacetime index (no fixed variance; the
/// caller tracks whether entries are upper or lower components).
using PolyVec4 = std::array<Poly, 4>;

/// Antisymmetric rank-2 tensor with polynomial entries.
struct PolyBivector {
    std::array<Poly, 16> t{};
    Duality tag = Duality::none;

    Poly& operator()(int mu, int nu) { return t[size_t(4 * mu + nu)]; }
    const Poly& operator()(int mu, int nu) const { return t[size_t(4 * mu + nu)]; }

    friend PolyBivector operator+(const PolyBivector& a, const PolyBivector& b) {
        PolyBivector r;
        r.tag = a.tag == b.tag ? a.tag : Duality::none;
        for (size_t i = 0; i < 16; ++i) r.t[i] = a.t[i] + b.t[i];
        return r;
    }
    friend PolyBivector operator-(const PolyBivector& a, const PolyBivector& b) {
        PolyBivector r;
        r.tag = a.tag == b.tag ? a.tag : Duality::none;
        for (size_t i = 0; i < 16; ++i) r.t[i] = a.t[i] - b.t[i];
        return r;
    }
    friend bool operator==(const PolyBivector& a, const PolyBivector& b) {
        return a.t == b.t && a.tag == b.tag;
    }

    bool is_zero() const {
        for (const Poly& p : t)
            if (!p.is_zero()) return false;
        return true;
    }
};

// ---- spinor algebra lifted to polynomial components ------------------------

inline PolySpinor scale_spinor(const Poly& s, const Spinor<RComplex>& a) {
    PolySpinor r;
    for (int i = 0; i < 4; ++i) r[i] = s * Poly::constant(a[i]);
    return r;
}

inline PolySpinor matrix_apply(const Mat4<RComplex>& m, const PolySpinor& psi) {
    PolySpinor r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!exactly_zero(m(i, j))) r[i] = r[i] + m(i, j) * psi[j];
    return r;
}

inline PolySpinor matrix_apply(const std::array<Poly, 16>& m, const PolySpinor& psi) {
    PolySpinor r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r[i] = r[i] + m[size_t(4 * i + j)] * psi[j];
    return r;
}

/// (alpha-bar psi)(x) for a constant spinor alpha.
inline Poly bar_dot(const Spinor<RComplex>& alpha, const PolySpinor& psi) {
    Spinor<RComplex> row = dirac_adjoint(alpha);
    Poly r;
    for (int i = 0; i < 4; ++i)
        if (!exactly_zero(row[i])) r = r + row[i] * psi[i];
    return r;
}

inline PolySpinor chiral_project(const PolySpinor& psi, Chirality which) {
    PolySpinor r;
    int base = which == Chirality::plus ? 0 : 2;
    r[base] = psi[base];
    r[base + 1] = psi[base + 1];
    return r;
}

inline PolySpinor conj_spinor(const PolySpinor& psi) {
    PolySpinor r;
    for (int i = 0; i < 4; ++i) r[i] = psi[i].conj();
    return r;
}

/// Tensor square of one chiral block: (psi_w)^T C sigma^{mn} psi_w with
/// polynomial components. Branch tag opposite to the chirality sign.
inline PolyBivector spinor_tensor(const PolySpinor& psi, Chirality which) {
    PolySpinor w = chiral_project(psi, which);
    PolySpinor row;  // (psi_w)^T C
    const Mat4<RComplex>& c = charge_conj_matrix<RComplex>();
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            if (!exactly_zero(c(k, j))) row[j] = row[j] + c(k, j) * w[k];
    PolyBivector r;
    r.tag = duality_of(flip(which));
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            const Mat4<RComplex>& s = sigma<RComplex>(mu, nu);
            Poly v;
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    if (!exactly_zero(s(j, k))) v = v + row[j] * (s(j, k) * w[k]);
            r(mu, nu) = v;
            r(nu, mu) = -v;
        }
    return r;
}

/// Full contraction T^{mn} U_{mn} of a polynomial tensor with a constant one.
inline Poly contract(const PolyBivector& a, const Bivector<RComplex>& b) {
    Poly r;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            if (exactly_zero(b(mu, nu))) continue;
            long w = long(metric_sign(mu)) * metric_sign(nu);
            r = r + (scalar_from_int<RComplex>(w) * b(mu, nu)) * a(mu, nu);
        }
    return r;
}

// ---- seeded random polynomial inputs ---------------------------------------

inline Poly random_poly(RandomSource& rng, int max_degree, int num_terms = 4) {
    Poly p;
    for (int t = 0; t < num_terms; ++t) {
        Monomial m{};
        int budget = max_degree;
        for (int i = 0; i < 4; ++i) {
            int e = int(rng.int_in(0, budget));
            m[size_t(i)] = uint8_t(e);
            budget -= e;
        }
        p.terms[m] += rng.scalar<RComplex>();
    }
    p.prune();
    return p;
}

inline PolySpinor random_poly_spinor(RandomSource& rng, int max_degree, int num_terms = 3) {
    PolySpinor s;
    for (int i = 0; i < 4; ++i) s[i] = random_poly(rng, max_degree, num_terms);
    return s;
}

inline PolyVec4 random_poly_vec4(RandomSource& rng, int max_degree, int num_terms = 3) {
    PolyVec4 a;
    for (int i = 0; i < 4; ++i) a[size_t(i)] = random_poly(rng, max_degree, num_terms);
    return a;
}

}  // namespace dirac1c
