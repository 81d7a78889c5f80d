#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "dirac1c/basis.hpp"
#include "dirac1c/fields.hpp"
#include "dirac1c/grid.hpp"
#include "dirac1c/integrate.hpp"

namespace dirac1c {

/// Inclusive range of time slices on which a derived field is meaningful.
/// Every application of a time stencil eats one halo from each end.
struct SliceRange {
    int lo = 0, hi = -1;
    SliceRange shrink(int h) const { return {lo + h, hi - h}; }
    bool contains(int it) const { return it >= lo && it <= hi; }
    bool ok() const { return lo <= hi; }
};

inline SliceRange full_range(int slices) { return {0, slices - 1}; }

inline int time_halo(const GridSpec& spec) {
    return stencil_halo(time_stencil(spec.stencil));
}

/// The comparison window: the central half of the run intersected with a
/// validity range.
inline TimeWindow window_in(SliceRange r, int slices) {
    TimeWindow w = central_window(slices, 0);
    w.it0 = std::max(w.it0, r.lo);
    w.it1 = std::min(w.it1, r.hi);
    if (w.it0 > w.it1) throw ConfigError("validity range misses the central window");
    return w;
}

/// Field scalars per time slice, all three routes in double arithmetic.
/// On this grid the potential may depend on time, so the electromagnetic
/// tensor and the scalars built from it are slice-indexed.
struct GridFieldScalars {
    std::vector<DComplex> f_u, f_v, f_w;
    double faraday_sup = 0;
};

inline GridFieldScalars field_scalars_grid(const GridSolution& sol,
                                           const BasisTriple<DComplex>& tr,
                                           FScalarRoute route) {
    const int slices = sol.spec.steps() + 1;
    Faraday far = faraday_from_potential(sol.a);
    GridFieldScalars out;
    out.f_u.resize(size_t(slices));
    out.f_v.resize(size_t(slices));
    out.f_w.resize(size_t(slices));

    std::array<DComplex, 16> fd{};
    for (int it = 0; it < slices; ++it) {
        const std::array<double, 4> x{sol.t_at(it), 0, 0, 0};
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                fd[size_t(4 * mu + nu)] = far(mu, nu).eval(x);
                out.faraday_sup =
                    std::max(out.faraday_sup, std::abs(fd[size_t(4 * mu + nu)]));
            }
        auto f_up = [&](int mu, int nu) { return fd[size_t(4 * mu + nu)]; };

        switch (route) {
            case FScalarRoute::contract: {
                auto scalar_of = [&](const Bivector<DComplex>& a) {
                    DComplex s = 0;
                    for (int mu = 0; mu < 4; ++mu)
                        for (int nu = 0; nu < 4; ++nu)
                            s += double(metric_sign(mu) * metric_sign(nu)) *
                                 f_up(mu, nu) * a(mu, nu);
                    return 0.5 * s;
                };
                out.f_u[size_t(it)] = scalar_of(tr.u);
                out.f_v[size_t(it)] = scalar_of(tr.v);
                out.f_w[size_t(it)] = scalar_of(tr.w);
                break;
            }
            case FScalarRoute::sandwich: {
                Mat4<DComplex> fm = Mat4<DComplex>::zero();
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = mu + 1; nu < 4; ++nu) {
                        DComplex flow =
                            double(metric_sign(mu) * metric_sign(nu)) * f_up(mu, nu);
                        fm = fm + flow * sigma<DComplex>(mu, nu);
                    }
                out.f_u[size_t(it)] = sandwich(tr.xi(), fm, tr.xi());
                out.f_v[size_t(it)] = sandwich(tr.xi(), fm, tr.eta());
                out.f_w[size_t(it)] = sandwich(tr.eta(), fm, tr.eta());
                break;
            }
            case FScalarRoute::vec3dot: {
                Vec3<DComplex> e{-f_up(0, 1), -f_up(0, 2), -f_up(0, 3)};
                Vec3<DComplex> h{-f_up(2, 3), f_up(1, 3), -f_up(1, 2)};
                DComplex fac = duality_of(tr.sign) == Duality::plus ? DComplex(0, -1)
                                                                    : DComplex(0, 1);
                Vec3<DComplex> weber = e + fac * h;
                out.f_u[size_t(it)] = dot3(vec3_from_tensor(tr.u), weber);
                out.f_v[size_t(it)] = dot3(vec3_from_tensor(tr.v), weber);
                out.f_w[size_t(it)] = dot3(vec3_from_tensor(tr.w), weber);
                break;
            }
        }
    }

    double eps = 1e-8 * std::max(1.0, out.faraday_sup);
    for (const DComplex& fu : out.f_u)
        if (std::abs(fu) <= eps)
            throw NonTransversal("field scalar on the u tensor vanishes on the grid");
    return out;
}

/// Pointwise row projection alpha-bar psi.
inline ScalarField bar_component(const SpinorField& psi, const Spinor<DComplex>& alpha) {
    ScalarField out(psi.slices, psi.nx);
    for (int it = 0; it < psi.slices; ++it)
        for (int ix = 0; ix < psi.nx; ++ix)
            out.at(it, ix) = bar_dot(alpha, psi.spinor_at(it, ix));
    return out;
}

/// Modified wave operator on a stored scalar history. Output is valid on
/// in.shrink(time_halo); slices outside stay zero.
inline ScalarField box_prime_grid(const ScalarField& phi, const GridSolution& sol,
                                  SliceRange in) {
    const GridSpec& spec = sol.spec;
    const int nx = spec.nx;
    const Stencil ts = time_stencil(spec.stencil);
    const int th = stencil_halo(ts);
    const SliceRange valid = in.shrink(th);
    SpatialDeriv deriv(spec.stencil, nx, spec.length);

    PolyVec4 adt;
    for (int mu = 0; mu < 4; ++mu) adt[size_t(mu)] = sol.a[size_t(mu)].deriv(0);

    ScalarField out(phi.slices, nx);
    std::vector<DComplex> row(nx), dx1(nx), dx2(nx);
    for (int it = valid.lo; it <= valid.hi; ++it) {
        for (int ix = 0; ix < nx; ++ix) row[size_t(ix)] = phi.at(it, ix);
        deriv.d1(row.data(), dx1.data());
        deriv.d2(row.data(), dx2.data());
        const double t = sol.t_at(it);
        const auto av = sol.a_at(t);
        const std::array<double, 4> xt{t, 0, 0, 0};
        const DComplex adiv = adt[0].eval(xt);
        const double asq =
            av[0] * av[0] - av[1] * av[1] - av[2] * av[2] - av[3] * av[3];
        for (int ix = 0; ix < nx; ++ix) {
            DComplex dt1 = ddt(phi, it, ix, spec.dt, ts);
            DComplex dt2 = d2dt2(phi, it, ix, spec.dt, ts);
            DComplex p = phi.at(it, ix);
            out.at(it, ix) = dt2 - dx2[size_t(ix)] +
                             DComplex(0, 2) * (av[0] * dt1 + av[1] * dx1[size_t(ix)]) +
                             DComplex(0, 1) * adiv * p - asq * p + p;
        }
    }
    return out;
}

/// The eliminated second component recovered from the first alone:
/// (box' + f_v) phi0 / f_u. Valid on in.shrink(time_halo).
inline ScalarField derive_phi1(const ScalarField& phi0, const GridSolution& sol,
                               const GridFieldScalars& fs, SliceRange in) {
    ScalarField box = box_prime_grid(phi0, sol, in);
    const SliceRange valid = in.shrink(time_halo(sol.spec));
    ScalarField out(phi0.slices, phi0.nx);
    for (int it = valid.lo; it <= valid.hi; ++it)
        for (int ix = 0; ix < phi0.nx; ++ix)
            out.at(it, ix) = (box.at(it, ix) + fs.f_v[size_t(it)] * phi0.at(it, ix)) /
                             fs.f_u[size_t(it)];
    return out;
}

/// Fourth-order one-component residual
///   (box' - f_v) [ (box' + f_v) phi0 / f_u ] + f_w phi0.
/// Valid on in.shrink(2 * time_halo).
inline ScalarField fourth_order_residual_grid(const ScalarField& phi0,
                                              const GridSolution& sol,
                                              const GridFieldScalars& fs,
                                              SliceRange in) {
    const int th = time_halo(sol.spec);
    ScalarField inner = derive_phi1(phi0, sol, fs, in);
    SliceRange v1 = in.shrink(th);
    ScalarField boxi = box_prime_grid(inner, sol, v1);
    SliceRange v2 = v1.shrink(th);
    ScalarField out(phi0.slices, phi0.nx);
    for (int it = v2.lo; it <= v2.hi; ++it)
        for (int ix = 0; ix < phi0.nx; ++ix)
            out.at(it, ix) = boxi.at(it, ix) -
                             fs.f_v[size_t(it)] * inner.at(it, ix) +
                             fs.f_w[size_t(it)] * phi0.at(it, ix);
    return out;
}

/// First-order operator g^mu (i d_mu - a_mu) on a stored spinor history.
/// Valid on in.shrink(time_halo).
inline SpinorField dirac_apply_grid(const SpinorField& f, const GridSolution& sol,
                                    SliceRange in) {
    const GridSpec& spec = sol.spec;
    const int nx = spec.nx;
    const Stencil ts = time_stencil(spec.stencil);
    const int th = stencil_halo(ts);
    const SliceRange valid = in.shrink(th);
    SpatialDeriv deriv(spec.stencil, nx, spec.length);

    const Mat4<DComplex> ig0 = DComplex(0, 1) * gamma<DComplex>(0);
    const Mat4<DComplex> ig1 = DComplex(0, 1) * gamma<DComplex>(1);
    SpinorField out(f.slices, nx);
    std::vector<DComplex> row(nx), drow(nx);
    SpinorField dx(f.slices, nx);
    for (int it = valid.lo; it <= valid.hi; ++it)
        for (int c = 0; c < 4; ++c) {
            for (int ix = 0; ix < nx; ++ix) row[size_t(ix)] = f.at(it, ix, c);
            deriv.d1(row.data(), drow.data());
            for (int ix = 0; ix < nx; ++ix) dx.at(it, ix, c) = drow[size_t(ix)];
        }
    for (int it = valid.lo; it <= valid.hi; ++it) {
        const auto av = sol.a_at(sol.t_at(it));
        Mat4<DComplex> aslash = DComplex(av[0]) * gamma<DComplex>(0) -
                                DComplex(av[1]) * gamma<DComplex>(1) -
                                DComplex(av[2]) * gamma<DComplex>(2) -
                                DComplex(av[3]) * gamma<DComplex>(3);
        for (int ix = 0; ix < nx; ++ix) {
            Spinor<DComplex> dtv;
            for (int c = 0; c < 4; ++c) dtv[c] = ddt(f, it, ix, c, spec.dt, ts);
            Spinor<DComplex> s = f.spinor_at(it, ix);
            Spinor<DComplex> r = ig0 * dtv + ig1 * dx.spinor_at(it, ix) - (aslash * s);
            out.set_spinor(it, ix, r);
        }
    }
    return out;
}

/// Rebuild the full spinor from the two scalar components: the flipped-
/// chirality part pointwise, the matching part by one application of the
/// first-order operator. Valid on phi_range.shrink(time_halo).
inline SpinorField reconstruct_grid(const ScalarField& phi0, const ScalarField& phi1,
                                    const GridSolution& sol,
                                    const BasisTriple<DComplex>& tr,
                                    SliceRange phi_range) {
    const Spinor<DComplex> etac = charge_conjugate(tr.eta());
    const Spinor<DComplex> xic = charge_conjugate(tr.xi());
    SpinorField lower(phi0.slices, phi0.nx);
    for (int it = phi_range.lo; it <= phi_range.hi; ++it)
        for (int ix = 0; ix < phi0.nx; ++ix) {
            DComplex p0 = phi0.at(it, ix), p1 = phi1.at(it, ix);
            for (int c = 0; c < 4; ++c)
                lower.at(it, ix, c) = p0 * etac[c] - p1 * xic[c];
        }
    SpinorField upper = dirac_apply_grid(lower, sol, phi_range);
    const SliceRange valid = phi_range.shrink(time_halo(sol.spec));
    SpinorField out(phi0.slices, phi0.nx);
    for (int it = valid.lo; it <= valid.hi; ++it)
        for (int ix = 0; ix < phi0.nx; ++ix)
            for (int c = 0; c < 4; ++c)
                out.at(it, ix, c) = lower.at(it, ix, c) + upper.at(it, ix, c);
    return out;
}

struct CurrentField {
    int slices = 0, nx = 0;
    std::vector<std::array<double, 4>> v;

    CurrentField() = default;
    CurrentField(int s, int n) : slices(s), nx(n), v(size_t(s) * size_t(n)) {}

    std::array<double, 4>& at(int it, int ix) { return v[size_t(it) * nx + ix]; }
    const std::array<double, 4>& at(int it, int ix) const {
        return v[size_t(it) * nx + ix];
    }
};

inline double rms(const CurrentField& f, TimeWindow w) {
    double s = 0;
    for (int it = w.it0; it <= w.it1; ++it)
        for (int ix = 0; ix < f.nx; ++ix)
            for (double c : f.at(it, ix)) s += c * c;
    return std::sqrt(s / (double(w.count()) * f.nx * 4));
}

inline double rms_diff(const CurrentField& a, const CurrentField& b, TimeWindow w) {
    double s = 0;
    for (int it = w.it0; it <= w.it1; ++it)
        for (int ix = 0; ix < a.nx; ++ix)
            for (int c = 0; c < 4; ++c) {
                double d = a.at(it, ix)[size_t(c)] - b.at(it, ix)[size_t(c)];
                s += d * d;
            }
    return std::sqrt(s / (double(w.count()) * a.nx * 4));
}

namespace detail {

inline const Mat4<DComplex>& g0gamma(int mu) {
    static const std::array<Mat4<DComplex>, 4> table = [] {
        std::array<Mat4<DComplex>, 4> t;
        for (int m = 0; m < 4; ++m) t[size_t(m)] = gamma<DComplex>(0) * gamma<DComplex>(m);
        return t;
    }();
    return table[size_t(mu)];
}

}  // namespace detail

inline std::array<double, 4> current_of_spinor(const Spinor<DComplex>& s) {
    std::array<double, 4> j{};
    for (int mu = 0; mu < 4; ++mu) {
        const Mat4<DComplex>& m = detail::g0gamma(mu);
        DComplex acc = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) acc += std::conj(s[a]) * m(a, b) * s[b];
        j[size_t(mu)] = acc.real();
    }
    return j;
}

/// Chirality-split currents; "lower" is the part with chirality opposite
/// to the triple's sign, the half that the scalar route rebuilds pointwise.
struct GridCurrents {
    CurrentField lower, upper, total;
};

inline GridCurrents current_direct_grid(const SpinorField& psi, Chirality sign,
                                        SliceRange in) {
    GridCurrents out;
    out.lower = CurrentField(psi.slices, psi.nx);
    out.upper = CurrentField(psi.slices, psi.nx);
    out.total = CurrentField(psi.slices, psi.nx);
    for (int it = in.lo; it <= in.hi; ++it)
        for (int ix = 0; ix < psi.nx; ++ix) {
            Spinor<DComplex> s = psi.spinor_at(it, ix);
            auto jl = current_of_spinor(chiral_project(s, flip(sign)));
            auto ju = current_of_spinor(chiral_project(s, sign));
            out.lower.at(it, ix) = jl;
            out.upper.at(it, ix) = ju;
            for (int c = 0; c < 4; ++c)
                out.total.at(it, ix)[size_t(c)] = jl[size_t(c)] + ju[size_t(c)];
        }
    return out;
}

/// Quadratic tensor of the flipped-chirality part, three-term form.
inline Bivector<DComplex> lower_tensor_point(DComplex p0, DComplex p1,
                                             const BasisTriple<DComplex>& tr) {
    Bivector<DComplex> r = (p0 * p0) * tr.w + (-2.0 * p1 * p0) * tr.v + (p1 * p1) * tr.u;
    r.tag = duality_of(tr.sign);
    return r;
}

/// Quadratic tensor of the matching-chirality part from the two gauge
/// momenta, expanded over the triple.
inline Bivector<DComplex> upper_tensor_point(const std::array<DComplex, 4>& b_lower,
                                             const std::array<DComplex, 4>& c_lower,
                                             const BasisTriple<DComplex>& tr) {
    std::array<DComplex, 4> b_up, c_up;
    for (int mu = 0; mu < 4; ++mu) {
        double g = metric_sign(mu);
        b_up[size_t(mu)] = g * b_lower[size_t(mu)];
        c_up[size_t(mu)] = g * c_lower[size_t(mu)];
    }
    DComplex bb = 0, bc = 0, cc = 0;
    for (int la = 0; la < 4; ++la) {
        bb += b_up[size_t(la)] * b_lower[size_t(la)];
        bc += b_up[size_t(la)] * c_lower[size_t(la)];
        cc += c_up[size_t(la)] * c_lower[size_t(la)];
    }
    auto contract_into = [](const std::array<DComplex, 4>& x_lower,
                            const Bivector<DComplex>& a) {
        std::array<DComplex, 4> r{};
        for (int nu = 0; nu < 4; ++nu)
            for (int la = 0; la < 4; ++la) r[size_t(nu)] += a(nu, la) * x_lower[size_t(la)];
        return r;
    };
    auto bu = contract_into(b_lower, tr.u);
    auto bv = contract_into(b_lower, tr.v);
    auto cv = contract_into(c_lower, tr.v);
    auto cw = contract_into(c_lower, tr.w);

    const DComplex two(2), two_i(0, 2);
    const DComplex eps_sign = tr.sign == Chirality::plus ? DComplex(2) : DComplex(-2);
    Bivector<DComplex> r;
    r.tag = flip(duality_of(tr.sign));
    for (int nu = 0; nu < 4; ++nu)
        for (int sg = nu + 1; sg < 4; ++sg) {
            DComplex v = 0;
            v -= two * (b_up[size_t(nu)] * bu[size_t(sg)]);
            v += two * (b_up[size_t(sg)] * bu[size_t(nu)]);
            v -= tr.u(nu, sg) * bb;
            v -= two_i * (b_up[size_t(nu)] * c_up[size_t(sg)]);
            v += two_i * (b_up[size_t(sg)] * c_up[size_t(nu)]);
            v -= two * (b_up[size_t(nu)] * cv[size_t(sg)]);
            v += two * (b_up[size_t(sg)] * cv[size_t(nu)]);
            v -= two * tr.v(nu, sg) * bc;
            v -= two * (c_up[size_t(nu)] * bv[size_t(sg)]);
            v += two * (c_up[size_t(sg)] * bv[size_t(nu)]);
            for (int mu = 0; mu < 4; ++mu)
                for (int la = 0; la < 4; ++la) {
                    int e = epsilon4(mu, nu, sg, la);
                    if (e == 0) continue;
                    v += eps_sign * double(e) * b_lower[size_t(mu)] * c_lower[size_t(la)];
                }
            v -= two * (c_up[size_t(nu)] * cw[size_t(sg)]);
            v += two * (c_up[size_t(sg)] * cw[size_t(nu)]);
            v -= tr.w(nu, sg) * cc;
            r(nu, sg) = v;
            r(sg, nu) = -v;
        }
    return r;
}

/// j extracted from one chiral product tensor P = -1/2 g T conj(T):
/// j0 is the nonnegative root of P^{00}, the space parts follow by division.
/// neg_tol flags corrupted input; zero_floor zeroes out vanishing density.
inline std::array<double, 4> current_point_from_tensor(const Bivector<DComplex>& t,
                                                       double neg_tol,
                                                       double zero_floor) {
    std::array<DComplex, 4> p0row{};
    for (int mu = 0; mu < 4; ++mu) {
        DComplex acc = 0;
        for (int sg = 0; sg < 4; ++sg)
            acc += double(metric_sign(sg)) * t(sg, mu) * std::conj(t(sg, 0));
        p0row[size_t(mu)] = -0.5 * acc;
    }
    double p00 = p0row[0].real();
    if (p00 < -neg_tol)
        throw NonPositiveDensity("squared density is negative beyond tolerance");
    std::array<double, 4> j{};
    if (p00 <= zero_floor) return j;
    j[0] = std::sqrt(p00);
    for (int i = 1; i < 4; ++i) j[size_t(i)] = p0row[size_t(i)].real() / j[0];
    return j;
}

/// Gauge momenta of the two scalar components on the grid:
/// b = -(i d - a) phi1, c = (i d - a) phi0, lower index.
/// Valid on in.shrink(time_halo).
struct MomentumFields {
    int slices = 0, nx = 0;
    std::vector<std::array<DComplex, 4>> b, c;

    std::array<DComplex, 4>& b_at(int it, int ix) { return b[size_t(it) * nx + ix]; }
    std::array<DComplex, 4>& c_at(int it, int ix) { return c[size_t(it) * nx + ix]; }
    const std::array<DComplex, 4>& b_at(int it, int ix) const {
        return b[size_t(it) * nx + ix];
    }
    const std::array<DComplex, 4>& c_at(int it, int ix) const {
        return c[size_t(it) * nx + ix];
    }
};

inline MomentumFields gauge_momenta_grid(const ScalarField& phi0,
                                         const ScalarField& phi1,
                                         const GridSolution& sol, SliceRange in) {
    const GridSpec& spec = sol.spec;
    const int nx = spec.nx;
    const Stencil ts = time_stencil(spec.stencil);
    const SliceRange valid = in.shrink(stencil_halo(ts));
    SpatialDeriv deriv(spec.stencil, nx, spec.length);

    MomentumFields out;
    out.slices = phi0.slices;
    out.nx = nx;
    out.b.resize(size_t(out.slices) * size_t(nx));
    out.c.resize(size_t(out.slices) * size_t(nx));

    std::vector<DComplex> row(nx), d0row(nx), d1row(nx);
    for (int it = valid.lo; it <= valid.hi; ++it) {
        const auto av = sol.a_at(sol.t_at(it));
        const std::array<double, 4> alow{av[0], -av[1], -av[2], -av[3]};
        for (int pass = 0; pass < 2; ++pass) {
            const ScalarField& phi = pass == 0 ? phi1 : phi0;
            for (int ix = 0; ix < nx; ++ix) row[size_t(ix)] = phi.at(it, ix);
            deriv.d1(row.data(), d1row.data());
            for (int ix = 0; ix < nx; ++ix) {
                DComplex f = phi.at(it, ix);
                std::array<DComplex, 4> m;
                m[0] = DComplex(0, 1) * ddt(phi, it, ix, spec.dt, ts) - alow[0] * f;
                m[1] = DComplex(0, 1) * d1row[size_t(ix)] - alow[1] * f;
                m[2] = -alow[2] * f;
                m[3] = -alow[3] * f;
                if (pass == 0)
                    for (int k = 0; k < 4; ++k) out.b_at(it, ix)[size_t(k)] = -m[size_t(k)];
                else
                    out.c_at(it, ix) = m;
            }
        }
    }
    return out;
}

/// Currents along the one-component route: the flipped part's tensor from
/// (phi0, phi1) pointwise, the matching part's from the gauge momenta, and
/// j from each product tensor. Valid on in.shrink(time_halo).
inline GridCurrents current_scalar_grid(const ScalarField& phi0, const ScalarField& phi1,
                                        const GridSolution& sol,
                                        const BasisTriple<DComplex>& tr, SliceRange in) {
    const int nx = sol.spec.nx;
    const SliceRange valid = in.shrink(time_halo(sol.spec));
    MomentumFields mom = gauge_momenta_grid(phi0, phi1, sol, in);

    double scale = 0;
    auto p00_of = [](const Bivector<DComplex>& t) {
        DComplex acc = 0;
        for (int sg = 0; sg < 4; ++sg)
            acc += double(metric_sign(sg)) * t(sg, 0) * std::conj(t(sg, 0));
        return (-0.5 * acc).real();
    };
    for (int it = valid.lo; it <= valid.hi; ++it)
        for (int ix = 0; ix < nx; ++ix) {
            DComplex p0 = phi0.at(it, ix), p1 = phi1.at(it, ix);
            scale = std::max(scale, std::abs(p00_of(lower_tensor_point(p0, p1, tr))));
            scale = std::max(scale, std::abs(p00_of(upper_tensor_point(
                                        mom.b_at(it, ix), mom.c_at(it, ix), tr))));
        }
    const double neg_tol = 1e-9 * (scale + 1e-30);
    const double zero_floor = 1e-13 * (scale + 1e-30);

    GridCurrents out;
    out.lower = CurrentField(phi0.slices, nx);
    out.upper = CurrentField(phi0.slices, nx);
    out.total = CurrentField(phi0.slices, nx);
    for (int it = valid.lo; it <= valid.hi; ++it)
        for (int ix = 0; ix < nx; ++ix) {
            DComplex p0 = phi0.at(it, ix), p1 = phi1.at(it, ix);
            auto jl = current_point_from_tensor(lower_tensor_point(p0, p1, tr),
                                                neg_tol, zero_floor);
            auto ju = current_point_from_tensor(
                upper_tensor_point(mom.b_at(it, ix), mom.c_at(it, ix), tr), neg_tol,
                zero_floor);
            out.lower.at(it, ix) = jl;
            out.upper.at(it, ix) = ju;
            for (int c = 0; c < 4; ++c)
                out.total.at(it, ix)[size_t(c)] = jl[size_t(c)] + ju[size_t(c)];
        }
    return out;
}

struct BranchRecord {
    int anchor_it = 0, anchor_ix = 0;
    int ambiguous = 0;
    double max_step = 0;
};

struct PhiExtraction {
    ScalarField phi;
    BranchRecord record;
};

/// Recover the scalar component from the flipped-chirality tensor square:
/// phi^2 = -T.u/8 pointwise, then a square root with the branch anchored at
/// the largest magnitude and grown one grid edge at a time, always across
/// the most decisive edge still available (largest |Re(r conj ref)|), so the
/// sign flows around zeros of the square instead of through them. A point
/// whose best remaining edge is indecisive gets the principal root and is
/// recorded, not guessed. A sign tear between two values far larger than
/// the local variation of the square is an error.
inline PhiExtraction phi_from_tensor_grid(const SpinorField& psi,
                                          const BasisTriple<DComplex>& tr,
                                          SliceRange in) {
    const int nx = psi.nx;
    PhiExtraction out;
    out.phi = ScalarField(psi.slices, nx);
    ScalarField sq(psi.slices, nx);

    double scale = 0;
    int best_it = in.lo, best_ix = 0;
    for (int it = in.lo; it <= in.hi; ++it)
        for (int ix = 0; ix < nx; ++ix) {
            Bivector<DComplex> t =
                spinor_tensor(psi.spinor_at(it, ix), flip(tr.sign));
            DComplex p = DComplex(-0.125) * contract(t, tr.u);
            sq.at(it, ix) = p;
            if (std::abs(p) > scale) {
                scale = std::abs(p);
                best_it = it;
                best_ix = ix;
            }
        }
    out.record.anchor_it = best_it;
    out.record.anchor_ix = best_ix;
    if (scale == 0) return out;
    const double floor = 1e-7 * std::sqrt(scale);

    struct Cand {
        double quality = 0, step = 0, rabs = 0;
        int it = 0, ix = 0;
        DComplex val;
    };
    auto worse = [](const Cand& a, const Cand& b) { return a.quality < b.quality; };
    std::priority_queue<Cand, std::vector<Cand>, decltype(worse)> heap(worse);

    std::vector<char> seen(size_t(psi.slices) * size_t(nx), 0);
    auto idx = [&](int it, int ix) { return size_t(it) * size_t(nx) + size_t(ix); };
    auto offer_neighbors = [&](int it, int ix) {
        const DComplex ref = out.phi.at(it, ix);
        const std::array<std::pair<int, int>, 4> nbrs{
            std::pair<int, int>{it - 1, ix}, {it + 1, ix},
            {it, (ix + 1) % nx}, {it, (ix + nx - 1) % nx}};
        for (auto [jt, jx] : nbrs) {
            if (jt < in.lo || jt > in.hi || seen[idx(jt, jx)]) continue;
            DComplex r = std::sqrt(sq.at(jt, jx));
            double plus = std::abs(r - ref), minus = std::abs(-r - ref);
            Cand c;
            c.quality = std::abs((r * std::conj(ref)).real());
            c.step = std::min(plus, minus);
            c.rabs = std::abs(r);
            c.it = jt;
            c.ix = jx;
            c.val = plus <= minus ? r : -r;
            heap.push(c);
        }
    };
    out.phi.at(best_it, best_ix) = std::sqrt(sq.at(best_it, best_ix));
    seen[idx(best_it, best_ix)] = 1;
    offer_neighbors(best_it, best_ix);
    while (!heap.empty()) {
        Cand c = heap.top();
        heap.pop();
        if (seen[idx(c.it, c.ix)]) continue;
        seen[idx(c.it, c.ix)] = 1;
        DComplex v = c.val;
        if (c.rabs > 10 * floor && c.quality < floor * c.rabs) {
            ++out.record.ambiguous;
            v = std::sqrt(sq.at(c.it, c.ix));
        }
        out.record.max_step = std::max(out.record.max_step, c.step);
        out.phi.at(c.it, c.ix) = v;
        offer_neighbors(c.it, c.ix);
    }

    // A genuine tear joins two values that are nearly opposite yet far larger
    // than the local variation of the squared field. Near a zero of a smooth
    // square, |sq| itself is at most a couple of local grid jumps, so such
    // straddling pairs are excluded by the jump gate rather than flagged.
    auto sq_jump_near = [&](int it, int ix) {
        double m = 0;
        const DComplex c = sq.at(it, ix);
        if (it - 1 >= in.lo) m = std::max(m, std::abs(c - sq.at(it - 1, ix)));
        if (it + 1 <= in.hi) m = std::max(m, std::abs(c - sq.at(it + 1, ix)));
        m = std::max(m, std::abs(c - sq.at(it, (ix + 1) % nx)));
        m = std::max(m, std::abs(c - sq.at(it, (ix + nx - 1) % nx)));
        return m;
    };
    int tears = 0;
    for (int it = in.lo; it <= in.hi; ++it)
        for (int ix = 0; ix < nx; ++ix) {
            DComplex a = out.phi.at(it, ix);
            const std::array<std::pair<int, int>, 2> fwd{
                std::pair<int, int>{it + 1, ix}, {it, (ix + 1) % nx}};
            for (auto [jt, jx] : fwd) {
                if (jt > in.hi) continue;
                DComplex b = out.phi.at(jt, jx);
                double hi = std::max(std::abs(a), std::abs(b));
                double lo = std::min(std::abs(a), std::abs(b));
                if (lo <= 10 * floor || std::abs(a - b) <= 0.6 * hi) continue;
                double sj = std::max(sq_jump_near(it, ix), sq_jump_near(jt, jx));
                if (lo * lo > 3.0 * sj) ++tears;
            }
        }
    if (tears > 0)
        throw BranchDiscontinuity("sign continuation tore at " +
                                  std::to_string(tears) + " grid edges");
    return out;
}

}  // namespace dirac1c
