#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "dirac1c/equivalence.hpp"
#include "dirac1c/gridequiv.hpp"

using namespace dirac1c;

namespace {

const double kTwoPi = 6.283185307179586476925286766559;

Rational rat(long n, long d = 1) { return Rational(n, d); }

std::array<Rational, 3> rat3(long a, long b, long c, long den = 1) {
    return {rat(a, den), rat(b, den), rat(c, den)};
}

FieldConfig dyadic_config() {
    return FieldConfig::constant_field({rat(3, 4), rat(1, 2), rat(1, 4)},
                                       rat3(0, 0, 0));
}

GridSolution make_run(int nx, int steps, Stencil st, std::uint64_t seed = 5) {
    GridSpec g;
    g.nx = nx;
    g.length = kTwoPi;
    g.dt = 1.0 / steps;
    g.t_final = 1.0;
    g.stencil = st;
    g.init.family = InitSpec::Family::modes;
    g.init.modes = {1, 2};
    g.init.seed = seed;
    return integrate_dirac(dyadic_config(), g);
}

struct Pipeline {
    GridSolution sol;
    BasisTriple<DComplex> tr;
    GridFieldScalars fs;
    ScalarField phi0, phi1_direct, phi1;
    SliceRange phi1_range;

    Pipeline(int nx, int steps, Stencil st, Chirality sign,
             std::uint64_t seed = 5)
        : sol(make_run(nx, steps, st, seed)),
          tr(to_dcomplex(builtin_triple<RComplex>(sign))),
          fs(field_scalars_grid(sol, tr, FScalarRoute::contract)) {
        phi0 = bar_component(sol.psi, tr.xi());
        phi1_direct = bar_component(sol.psi, tr.eta());
        SliceRange full = full_range(sol.psi.slices);
        phi1 = derive_phi1(phi0, sol, fs, full);
        phi1_range = full.shrink(time_halo(sol.spec));
    }
};

double rel_spinor_err(const SpinorField& got, const SpinorField& want, TimeWindow w) {
    return rms_diff(got, want, w) / rms(want, w);
}

}  // namespace

TEST_CASE("grid field scalars match the exact constant-field values") {
    GridSolution sol = make_run(16, 12, Stencil::central4);
    Faraday far = faraday_from_config(dyadic_config());
    for (Chirality sign : {Chirality::plus, Chirality::minus}) {
        BasisTriple<RComplex> exact_tr = builtin_triple<RComplex>(sign);
        BasisTriple<DComplex> tr = to_dcomplex(exact_tr);
        FieldScalars exact = field_scalars(far, exact_tr, FScalarRoute::contract);
        for (FScalarRoute route :
             {FScalarRoute::contract, FScalarRoute::sandwich, FScalarRoute::vec3dot}) {
            GridFieldScalars fs = field_scalars_grid(sol, tr, route);
            for (int it = 0; it < sol.psi.slices; ++it) {
                CHECK(fs.f_u[size_t(it)] == to_dcomplex(exact.f_u));
                CHECK(fs.f_v[size_t(it)] == to_dcomplex(exact.f_v));
                CHECK(fs.f_w[size_t(it)] == to_dcomplex(exact.f_w));
            }
        }
    }
}

TEST_CASE("vanishing field is rejected as non transversal on the grid") {
    GridSpec g;
    g.nx = 16;
    g.dt = 0.1;
    g.t_final = 1.0;
    GridSolution sol = integrate_dirac(FieldConfig::zero_field(), g);
    BasisTriple<DComplex> tr = to_dcomplex(builtin_triple<RComplex>(Chirality::plus));
    CHECK_THROWS_AS(field_scalars_grid(sol, tr, FScalarRoute::contract),
                    NonTransversal);
}

TEST_CASE("derived second component tracks the direct projection") {
    Pipeline p(64, 64, Stencil::central4, Chirality::plus);
    TimeWindow w = window_in(p.phi1_range, p.sol.psi.slices);
    double rel = rms_diff(p.phi1, p.phi1_direct, w) / rms(p.phi1_direct, w);
    CHECK(rel < 1e-2);
    CHECK(rel > 0);
}

TEST_CASE("fourth order residual shrinks at stencil order") {
    auto residual_at = [](int nx, int steps, Stencil st) {
        Pipeline p(nx, steps, st, Chirality::plus);
        SliceRange full = full_range(p.sol.psi.slices);
        ScalarField r = fourth_order_residual_grid(p.phi0, p.sol, p.fs, full);
        SliceRange valid = full.shrink(2 * time_halo(p.sol.spec));
        return rms(r, window_in(valid, p.sol.psi.slices));
    };
    double o4 = std::log2(residual_at(32, 40, Stencil::central4) /
                          residual_at(64, 80, Stencil::central4));
    CHECK(o4 > 3.5);
    CHECK(o4 < 4.7);
    double o2 = std::log2(residual_at(32, 40, Stencil::central2) /
                          residual_at(64, 80, Stencil::central2));
    CHECK(o2 > 1.7);
    CHECK(o2 < 2.5);
}

TEST_CASE("three residual forms agree bitwise on dyadic fields") {
    GridSolution sol = make_run(32, 40, Stencil::central4);
    BasisTriple<DComplex> tr = to_dcomplex(builtin_triple<RComplex>(Chirality::plus));
    ScalarField phi0 = bar_component(sol.psi, tr.xi());
    SliceRange full = full_range(sol.psi.slices);
    ScalarField r0 = fourth_order_residual_grid(
        phi0, sol, field_scalars_grid(sol, tr, FScalarRoute::contract), full);
    ScalarField r1 = fourth_order_residual_grid(
        phi0, sol, field_scalars_grid(sol, tr, FScalarRoute::sandwich), full);
    ScalarField r2 = fourth_order_residual_grid(
        phi0, sol, field_scalars_grid(sol, tr, FScalarRoute::vec3dot), full);
    REQUIRE(r0.v.size() == r1.v.size());
    bool same01 = true, same02 = true;
    for (size_t i = 0; i < r0.v.size(); ++i) {
        if (r0.v[i] != r1.v[i]) same01 = false;
        if (r0.v[i] != r2.v[i]) same02 = false;
    }
    CHECK(same01);
    CHECK(same02);
}

TEST_CASE("reconstruction from one component converges to the solution") {
    auto recon_err = [](int nx, int steps) {
        Pipeline p(nx, steps, Stencil::central4, Chirality::plus);
        SpinorField rec = reconstruct_grid(p.phi0, p.phi1, p.sol, p.tr, p.phi1_range);
        SliceRange valid = p.phi1_range.shrink(time_halo(p.sol.spec));
        TimeWindow w = window_in(valid, p.sol.psi.slices);
        return rel_spinor_err(rec, p.sol.psi, w);
    };
    double ea = recon_err(32, 40);
    double eb = recon_err(64, 80);
    CHECK(ea < 0.1);
    double order = std::log2(ea / eb);
    CHECK(order > 3.5);
    CHECK(order < 4.7);
}

TEST_CASE("scalar route currents converge to the direct currents") {
    auto current_err = [](int nx, int steps) {
        Pipeline p(nx, steps, Stencil::central4, Chirality::plus);
        SliceRange valid = p.phi1_range.shrink(time_halo(p.sol.spec));
        TimeWindow w = window_in(valid, p.sol.psi.slices);
        GridCurrents js =
            current_scalar_grid(p.phi0, p.phi1, p.sol, p.tr, p.phi1_range);
        GridCurrents jd =
            current_direct_grid(p.sol.psi, p.tr.sign, full_range(p.sol.psi.slices));
        double lower = rms_diff(js.lower, jd.lower, w) / rms(jd.lower, w);
        double total = rms_diff(js.total, jd.total, w) / rms(jd.total, w);
        return std::max(lower, total);
    };
    double ea = current_err(32, 40);
    double eb = current_err(64, 80);
    CHECK(ea < 0.1);
    double order = std::log2(ea / eb);
    CHECK(order > 3.4);
    CHECK(order < 4.8);
}

TEST_CASE("both formalism variants give one total current on solutions") {
    GridSolution sol = make_run(64, 64, Stencil::central4);
    SliceRange full = full_range(sol.psi.slices);
    std::array<GridCurrents, 2> js;
    int k = 0;
    for (Chirality sign : {Chirality::plus, Chirality::minus}) {
        BasisTriple<DComplex> tr = to_dcomplex(builtin_triple<RComplex>(sign));
        GridFieldScalars fs = field_scalars_grid(sol, tr, FScalarRoute::contract);
        ScalarField phi0 = bar_component(sol.psi, tr.xi());
        ScalarField phi1 = derive_phi1(phi0, sol, fs, full);
        js[size_t(k++)] =
            current_scalar_grid(phi0, phi1, sol, tr, full.shrink(time_halo(sol.spec)));
    }
    SliceRange valid = full.shrink(2 * time_halo(sol.spec));
    TimeWindow w = window_in(valid, sol.psi.slices);
    double rel = rms_diff(js[0].total, js[1].total, w) / rms(js[0].total, w);
    CHECK(rel < 1e-2);
}

TEST_CASE("extraction recovers a nowhere-zero scalar up to one global sign") {
    GridSpec g;
    g.nx = 24;
    g.dt = 1.0 / 24;
    g.t_final = 1.0;
    g.stencil = Stencil::central4;
    g.init.family = InitSpec::Family::plane_wave;
    g.init.momentum = 1;
    GridSolution sol = integrate_dirac(FieldConfig::zero_field(), g);
    for (Chirality sign : {Chirality::plus, Chirality::minus}) {
        BasisTriple<DComplex> tr = to_dcomplex(builtin_triple<RComplex>(sign));
        ScalarField phi0 = bar_component(sol.psi, tr.xi());
        PhiExtraction ext = phi_from_tensor_grid(sol.psi, tr, full_range(sol.psi.slices));
        TimeWindow w = central_window(sol.psi.slices, 0);
        ScalarField neg = ext.phi;
        for (DComplex& z : neg.v) z = -z;
        double rel = std::min(rms_diff(ext.phi, phi0, w), rms_diff(neg, phi0, w)) /
                     rms(phi0, w);
        CHECK(rel < 1e-10);
        CHECK(ext.record.ambiguous == 0);
    }
}

TEST_CASE("extraction matches the projection pointwise up to sign") {
    GridSolution sol = make_run(48, 48, Stencil::central4, 9);
    BasisTriple<DComplex> tr = to_dcomplex(builtin_triple<RComplex>(Chirality::plus));
    ScalarField phi0 = bar_component(sol.psi, tr.xi());
    PhiExtraction ext = phi_from_tensor_grid(sol.psi, tr, full_range(sol.psi.slices));
    double scale = 0;
    for (const DComplex& z : phi0.v) scale = std::max(scale, std::abs(z));
    for (int it = 0; it < sol.psi.slices; ++it)
        for (int ix = 0; ix < sol.psi.nx; ++ix) {
            DComplex p = ext.phi.at(it, ix);
            DComplex q = phi0.at(it, ix);
            CHECK(std::min(std::abs(p - q), std::abs(p + q)) < 1e-8 * scale);

            Bivector<DComplex> t =
                spinor_tensor(sol.psi.spinor_at(it, ix), flip(tr.sign));
            DComplex sq = DComplex(-0.125) * contract(t, tr.u);
            CHECK(std::abs(p * p - sq) < 1e-10 * scale * scale);
        }
}

namespace {

SpinorField scalar_times_etac(int slices, int nx, const BasisTriple<DComplex>& tr,
                              const std::function<DComplex(double)>& h) {
    Spinor<DComplex> etac = charge_conjugate(tr.eta());
    SpinorField psi(slices, nx);
    for (int it = 0; it < slices; ++it)
        for (int ix = 0; ix < nx; ++ix) {
            DComplex f = h(kTwoPi * ix / nx);
            for (int c = 0; c < 4; ++c) psi.at(it, ix, c) = f * etac[c];
        }
    return psi;
}

}  // namespace

TEST_CASE("odd winding of the squared scalar is a branch discontinuity") {
    const int nx = 32, slices = 5;
    BasisTriple<DComplex> tr = to_dcomplex(builtin_triple<RComplex>(Chirality::plus));
    SpinorField psi = scalar_times_etac(slices, nx, tr, [](double x) {
        return std::exp(DComplex(0, 0.5 * x));
    });
    CHECK_THROWS_AS(phi_from_tensor_grid(psi, tr, full_range(slices)),
                    BranchDiscontinuity);
}

TEST_CASE("continuation through an exact zero is recorded") {
    const int nx = 32, slices = 5;
    BasisTriple<DComplex> tr = to_dcomplex(builtin_triple<RComplex>(Chirality::plus));
    SpinorField psi = scalar_times_etac(slices, nx, tr,
                                        [](double x) { return std::sin(x); });
    PhiExtraction ext = phi_from_tensor_grid(psi, tr, full_range(slices));
    CHECK(ext.record.ambiguous > 0);
    CHECK(ext.record.anchor_ix == nx / 4);
}

TEST_CASE("corrupted product tensor trips the density guard") {
    Bivector<DComplex> t;
    t.tag = Duality::plus;
    t(0, 0) = 10.0;
    CHECK_THROWS_AS(current_point_from_tensor(t, 1e-9, 1e-13), NonPositiveDensity);
}

TEST_CASE("scalar route is invariant under a global sign flip") {
    Pipeline p(32, 40, Stencil::central4, Chirality::plus);
    GridCurrents a = current_scalar_grid(p.phi0, p.phi1, p.sol, p.tr, p.phi1_range);
    ScalarField n0 = p.phi0, n1 = p.phi1;
    for (DComplex& z : n0.v) z = -z;
    for (DComplex& z : n1.v) z = -z;
    GridCurrents b = current_scalar_grid(n0, n1, p.sol, p.tr, p.phi1_range);
    REQUIRE(a.total.v.size() == b.total.v.size());
    bool same = true;
    for (size_t i = 0; i < a.total.v.size(); ++i)
        for (int c = 0; c < 4; ++c)
            if (a.total.v[i][size_t(c)] != b.total.v[i][size_t(c)]) same = false;
    CHECK(same);
}

TEST_CASE("direct current splits into chiral parts") {
    GridSolution sol = make_run(16, 12, Stencil::central4);
    GridCurrents j = current_direct_grid(sol.psi, Chirality::plus,
                                         full_range(sol.psi.slices));
    for (int it = 0; it < sol.psi.slices; ++it)
        for (int ix = 0; ix < sol.psi.nx; ++ix) {
            auto s = sol.psi.spinor_at(it, ix);
            auto full = current_of_spinor(s);
            CHECK(j.total.at(it, ix)[0] == doctest::Approx(full[0]).epsilon(1e-12));
            CHECK(j.total.at(it, ix)[0] >= 0);
            double sum = j.lower.at(it, ix)[1] + j.upper.at(it, ix)[1];
            CHECK(sum == doctest::Approx(full[1]).epsilon(1e-12));
        }
}
