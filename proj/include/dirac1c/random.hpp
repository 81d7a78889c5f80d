#pragma once

#include <random>
#include <utility>

#include "dirac1c/basis.hpp"

namespace dirac1c {

/// Deterministic seeded source for all randomized checks. Exact-mode draws
/// are small Gaussian rationals so downstream algebra stays cheap.
class RandomSource {
public:
    explicit RandomSource(uint64_t seed) : eng_(seed) {}

    long int_in(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(eng_);
    }
    double real_in(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(eng_);
    }

    Rational rational(long num_range = 9, long den_max = 4) {
        Rational r(int_in(-num_range, num_range), int_in(1, den_max));
        r.canonicalize();
        return r;
    }
    Rational rational_nonzero(long num_range = 9, long den_max = 4) {
        for (;;) {
            Rational r = rational(num_range, den_max);
            if (sgn(r) != 0) return r;
        }
    }

    template <ScalarMode S>
    S scalar() {
        if constexpr (std::same_as<S, RComplex>)
            return RComplex(rational(), rational());
        else
            return DComplex(real_in(-1, 1), real_in(-1, 1));
    }

    template <ScalarMode S>
    S scalar_nonzero() {
        for (;;) {
            S z = scalar<S>();
            if (!exactly_zero(z) && abs_sq(to_dcomplex(z)) > 1e-8) return z;
        }
    }

    template <ScalarMode S>
    Vec3<S> vec3() {
        return {{{scalar<S>(), scalar<S>(), scalar<S>()}}};
    }

    template <ScalarMode S>
    Spinor<S> spinor() {
        Spinor<S> s;
        for (int i = 0; i < 4; ++i) s[i] = scalar<S>();
        return s;
    }

    template <ScalarMode S>
    Spinor<S> chiral_spinor(Chirality which) {
        Spinor<S> s;
        int base = which == Chirality::plus ? 0 : 2;
        do {
            s[base] = scalar<S>();
            s[base + 1] = scalar<S>();
        } while (exactly_zero(s[base]) && exactly_zero(s[base + 1]));
        return s;
    }

    /// Chiral pair with the unit pairing xi-bar eta-c = 1, rescaling eta.
    template <ScalarMode S>
    std::pair<Spinor<S>, Spinor<S>> normalized_chiral_pair(Chirality which) {
        for (;;) {
            Spinor<S> xi = chiral_spinor<S>(which);
            Spinor<S> eta = chiral_spinor<S>(which);
            S c = sandwich(xi, Mat4<S>::identity(), eta);
            if (exactly_zero(c)) continue;
            if constexpr (std::same_as<S, DComplex>)
                if (abs_sq(c) < 1e-6) continue;
            // pairing is conjugate-linear in eta: scale by 1/conj(c)
            S lam = scalar_from_int<S>(1) / conj_of(c);
            return {xi, lam * eta};
        }
    }

    template <ScalarMode S>
    BasisTriple<S> triple(Chirality which) {
        auto [xi, eta] = normalized_chiral_pair<S>(which);
        return triple_from_spinors(xi, eta);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace dirac1c
