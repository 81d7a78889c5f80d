#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "dirac1c/clifford.hpp"
#include "dirac1c/fields.hpp"
#include "dirac1c/grid.hpp"

namespace dirac1c {

/// Time history of one integrated run plus everything needed to interpret it.
struct GridSolution {
    FieldConfig config;
    GridSpec spec;
    SpinorField psi;
    PolyVec4 a;  // upper-index potential actually used; depends on x0 only

    double t_at(int it) const { return it * spec.dt; }
    double x_at(int ix) const { return ix * spec.dx(); }

    std::array<double, 4> a_at(double t) const {
        std::array<double, 4> r{};
        const std::array<double, 4> x{t, 0, 0, 0};
        for (int mu = 0; mu < 4; ++mu) r[size_t(mu)] = a[size_t(mu)].eval(x).real();
        return r;
    }
};

/// The gauge used on the periodic grid. The potential may depend on x0 only
/// (anything x-dependent cannot close on the circle), and must be real.
inline PolyVec4 grid_potential(const FieldConfig& cfg) {
    PolyVec4 a = cfg.family == FieldConfig::Family::constant_f
                     ? cfg.temporal_potential()
                     : cfg.potential_poly;
    for (const auto& comp : a) {
        for (const auto& [mono, coeff] : comp.terms) {
            if (mono[1] != 0 || mono[2] != 0 || mono[3] != 0)
                throw ConfigError("grid potential must depend on x0 only");
            if (!(coeff.im == Rational(0)))
                throw ConfigError("grid potential must be real");
        }
    }
    return a;
}

struct PlaneWave {
    double p = 0, energy = 1;
    Spinor<DComplex> amp;
};

/// Free positive-energy wave with momentum 2*pi*m/length: the column
/// (p-slash + 1) e1, which the mass-1 dispersion makes an exact solution
/// when the potential vanishes.
inline PlaneWave free_plane_wave(double length, double momentum_index) {
    if (std::abs(momentum_index - std::llround(momentum_index)) > 1e-9)
        throw NonPeriodicInit("plane-wave momentum must be an integer mode");
    PlaneWave w;
    const double two_pi = 6.283185307179586476925286766559;
    w.p = two_pi * momentum_index / length;
    w.energy = std::sqrt(1 + w.p * w.p);
    w.amp[0] = 1;
    w.amp[1] = 0;
    w.amp[2] = -w.energy;
    w.amp[3] = w.p;
    return w;
}

inline Spinor<DComplex> plane_wave_at(const PlaneWave& w, double t, double x) {
    DComplex phase = std::exp(DComplex(0, w.p * x - w.energy * t));
    Spinor<DComplex> s;
    for (int c = 0; c < 4; ++c) s[c] = w.amp[c] * phase;
    return s;
}

namespace detail {

inline void fill_initial_slice(SpinorField& psi, const GridSpec& spec) {
    const InitSpec& init = spec.init;
    const double dx = spec.dx();
    switch (init.family) {
        case InitSpec::Family::zero:
            for (int ix = 0; ix < spec.nx; ++ix)
                for (int c = 0; c < 4; ++c) psi.at(0, ix, c) = 0;
            return;
        case InitSpec::Family::plane_wave: {
            PlaneWave w = free_plane_wave(spec.length, init.momentum);
            for (int ix = 0; ix < spec.nx; ++ix)
                psi.set_spinor(0, ix, plane_wave_at(w, 0.0, ix * dx));
            return;
        }
        case InitSpec::Family::modes: break;
    }
    if (init.modes.empty()) throw ConfigError("modes init needs at least one mode");
    std::vector<long> m;
    for (double md : init.modes) {
        if (std::abs(md - std::llround(md)) > 1e-9)
            throw NonPeriodicInit("init modes must be integers");
        long mi = std::llround(md);
        if (3 * std::abs(mi) > spec.nx)
            throw ConfigError("init mode too high for nx");
        m.push_back(mi);
    }
    std::mt19937_64 rng(init.seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const double two_pi = 6.283185307179586476925286766559;
    double sup = 0;
    for (int c = 0; c < 4; ++c) {
        for (long mi : m) {
            DComplex ap(coef(rng), coef(rng));
            DComplex am(coef(rng), coef(rng));
            double k = two_pi * mi / spec.length;
            for (int ix = 0; ix < spec.nx; ++ix) {
                double x = ix * dx;
                psi.at(0, ix, c) += ap * std::exp(DComplex(0, k * x)) +
                                    am * std::exp(DComplex(0, -k * x));
            }
        }
    }
    for (int ix = 0; ix < spec.nx; ++ix)
        for (int c = 0; c < 4; ++c)
            sup = std::max(sup, std::abs(psi.at(0, ix, c)));
    if (sup > 0)
        for (int ix = 0; ix < spec.nx; ++ix)
            for (int c = 0; c < 4; ++c) psi.at(0, ix, c) /= sup;
}

/// -i g0 (1 + a-slash(t)); the local (derivative-free) part of the
/// first-order-in-time evolution d0 psi = M(t) psi - g0 g1 d1 psi.
inline Mat4<DComplex> mass_gauge_matrix(const std::array<double, 4>& a) {
    Mat4<DComplex> aslash =
        DComplex(a[0]) * gamma<DComplex>(0) - DComplex(a[1]) * gamma<DComplex>(1) -
        DComplex(a[2]) * gamma<DComplex>(2) - DComplex(a[3]) * gamma<DComplex>(3);
    return DComplex(0, -1) * (gamma<DComplex>(0) * (Mat4<DComplex>::identity() + aslash));
}

}  // namespace detail

/// Integrate d0 psi = -i g0 (1 + a-slash) psi - g0 g1 d1 psi with classical
/// four-stage Runge-Kutta, storing every slice. The time step is rejected up
/// front when it violates the scheme's stability bound, and the run aborts
/// if the sup norm still blows past a million times its initial size.
inline GridSolution integrate_dirac(const FieldConfig& config, const GridSpec& spec) {
    spec.validate();
    GridSolution sol;
    sol.config = config;
    sol.spec = spec;
    sol.a = grid_potential(config);

    const int nx = spec.nx;
    const int steps = spec.steps();
    const double dt = spec.dt;
    SpatialDeriv deriv(spec.stencil, nx, spec.length);

    double amax = 0;
    for (int i = 0; i <= 2 * steps; ++i) {
        auto av = sol.a_at(0.5 * dt * i);
        double s = 0;
        for (double c : av) s += std::abs(c);
        amax = std::max(amax, s);
    }
    double lam = deriv.symbol_sup() + 1 + amax;
    if (dt * lam > 2.8)
        throw UnstableStep("dt too large for " + std::string(stencil_name(spec.stencil)) +
                           ": need dt <= " + std::to_string(2.8 / lam));

    sol.psi = SpinorField(steps + 1, nx);
    detail::fill_initial_slice(sol.psi, spec);
    const double cap = 1e6 * (sup_abs_slice(sol.psi, 0) + 1);

    const Mat4<DComplex> dxmat = -(gamma<DComplex>(0) * gamma<DComplex>(1));
    const size_t n = size_t(nx) * 4;
    std::vector<DComplex> y(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
    std::vector<DComplex> comp(nx), dcomp(nx);

    auto rhs = [&](const std::vector<DComplex>& state, double t,
                   std::vector<DComplex>& out) {
        Mat4<DComplex> m = detail::mass_gauge_matrix(sol.a_at(t));
        for (int c = 0; c < 4; ++c) {
            for (int ix = 0; ix < nx; ++ix) comp[size_t(ix)] = state[size_t(ix) * 4 + c];
            deriv.d1(comp.data(), dcomp.data());
            for (int ix = 0; ix < nx; ++ix) out[size_t(ix) * 4 + c] = dcomp[size_t(ix)];
        }
        for (int ix = 0; ix < nx; ++ix) {
            Spinor<DComplex> s, d;
            for (int c = 0; c < 4; ++c) {
                s[c] = state[size_t(ix) * 4 + c];
                d[c] = out[size_t(ix) * 4 + c];
            }
            Spinor<DComplex> r = m * s + dxmat * d;
            for (int c = 0; c < 4; ++c) out[size_t(ix) * 4 + c] = r[c];
        }
    };

    for (int ix = 0; ix < nx; ++ix)
        for (int c = 0; c < 4; ++c) y[size_t(ix) * 4 + c] = sol.psi.at(0, ix, c);

    for (int step = 0; step < steps; ++step) {
        double t = step * dt;
        rhs(y, t, k1);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        rhs(tmp, t + 0.5 * dt, k2);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        rhs(tmp, t + 0.5 * dt, k3);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
        rhs(tmp, t + dt, k4);
        for (size_t i = 0; i < n; ++i)
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (int ix = 0; ix < nx; ++ix)
            for (int c = 0; c < 4; ++c) sol.psi.at(step + 1, ix, c) = y[size_t(ix) * 4 + c];
        if (sup_abs_slice(sol.psi, step + 1) > cap)
            throw UnstableStep("solution blew up at step " + std::to_string(step + 1));
    }
    return sol;
}

/// Halo (in slices) that dirac_residual_grid cannot fill at either end.
inline int dirac_residual_halo(const GridSpec& spec) {
    return stencil_halo(time_stencil(spec.stencil));
}

/// r = i d-slash psi - a-slash psi - psi evaluated with the grid stencils;
/// boundary slices inside the halo are left zero.
inline SpinorField dirac_residual_grid(const GridSolution& sol) {
    const GridSpec& spec = sol.spec;
    const int nx = spec.nx;
    const int slices = sol.psi.slices;
    const Stencil ts = time_stencil(spec.stencil);
    const int th = stencil_halo(ts);
    SpatialDeriv deriv(spec.stencil, nx, spec.length);

    SpinorField r(slices, nx);
    const Mat4<DComplex> ig0 = DComplex(0, 1) * gamma<DComplex>(0);
    const Mat4<DComplex> ig1 = DComplex(0, 1) * gamma<DComplex>(1);
    std::vector<DComplex> comp(nx), dcomp(nx);
    SpinorField dx(slices, nx);
    for (int it = 0; it < slices; ++it)
        for (int c = 0; c < 4; ++c) {
            for (int ix = 0; ix < nx; ++ix) comp[size_t(ix)] = sol.psi.at(it, ix, c);
            deriv.d1(comp.data(), dcomp.data());
            for (int ix = 0; ix < nx; ++ix) dx.at(it, ix, c) = dcomp[size_t(ix)];
        }

    for (int it = th; it < slices - th; ++it) {
        auto av = sol.a_at(sol.t_at(it));
        Mat4<DComplex> aslash = DComplex(av[0]) * gamma<DComplex>(0) -
                                DComplex(av[1]) * gamma<DComplex>(1) -
                                DComplex(av[2]) * gamma<DComplex>(2) -
                                DComplex(av[3]) * gamma<DComplex>(3);
        for (int ix = 0; ix < nx; ++ix) {
            Spinor<DComplex> dtpsi;
            for (int c = 0; c < 4; ++c) dtpsi[c] = ddt(sol.psi, it, ix, c, spec.dt, ts);
            Spinor<DComplex> psi = sol.psi.spinor_at(it, ix);
            Spinor<DComplex> dxpsi = dx.spinor_at(it, ix);
            Spinor<DComplex> res =
                ig0 * dtpsi + ig1 * dxpsi - (aslash * psi) - psi;
            r.set_spinor(it, ix, res);
        }
    }
    return r;
}

}  // namespace dirac1c
