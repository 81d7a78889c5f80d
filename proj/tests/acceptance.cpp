// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails. Tolerances and
// time limits are pinned here, next to the criterion they guard.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dirac1c/basis.hpp"
#include "dirac1c/convergence.hpp"
#include "dirac1c/equivalence.hpp"
#include "dirac1c/lorentz.hpp"
#include "dirac1c/polyops.hpp"
#include "dirac1c/random.hpp"
#include "dirac1c/verify.hpp"

using namespace dirac1c;

namespace {

constexpr double kAlgebraTimeLimit = 5.0;     // seconds, criterion 1
constexpr double kOperatorTimeLimit = 60.0;   // seconds, criterion 6
constexpr double kNumericalTimeLimit = 120.0; // seconds, criterion 8
constexpr double kLorentzFloatTol = 1e-12;    // criterion 5
constexpr double kOrderMargin = 0.3;          // criterion 8

RComplex rc(long re, long im = 0) { return RComplex(Rational(re), Rational(im)); }

std::array<Rational, 3> random_rat3(RandomSource& rng) {
    return {rng.rational(), rng.rational(), rng.rational()};
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// 1. Every exact matrix identity holds with zero error, quickly.
Outcome criterion_algebra() {
    Report r = run_verification("algebra", 1);
    bool all_exact = r.ok();
    for (const Check& c : r.checks) all_exact = all_exact && c.value == 0 && c.bound == 0;
    Outcome o;
    o.pass = all_exact;
    o.detail = std::to_string(r.checks.size()) + " exact identity checks";
    return o;
}

// 2. The contraction table holds exactly on the builtin triples and on 100
// random spinor-generated triples.
Outcome criterion_contractions() {
    RandomSource rng(2001);
    auto table_ok = [](const BasisTriple<RComplex>& t) {
        return contract(t.u, t.u) == rc(0) && contract(t.u, t.v) == rc(0) &&
               contract(t.v, t.v) == rc(4) && contract(t.u, t.w) == rc(-8) &&
               contract(t.v, t.w) == rc(0) && contract(t.w, t.w) == rc(0);
    };
    bool ok = true;
    int tested = 0;
    for (Chirality s : {Chirality::plus, Chirality::minus}) {
        ok = ok && table_ok(builtin_triple<RComplex>(s));
        for (int trial = 0; trial < 50; ++trial) {
            ok = ok && table_ok(rng.triple<RComplex>(s));
            ++tested;
        }
    }
    return {ok, "2 builtin + " + std::to_string(tested) + " random triples"};
}

// 3. solve_w reproduces the generated third tensor and is independent of
// the admissible null tensor k.
Outcome criterion_solve_w() {
    RandomSource rng(2002);
    bool ok = true;
    int triples = 0, kdraws = 0;
    for (Chirality s : {Chirality::plus, Chirality::minus}) {
        for (int trial = 0; trial < 25; ++trial) {
            BasisTriple<RComplex> t = rng.triple<RComplex>(s);
            ok = ok && solve_w(t.u, t.v) == t.w;
            ++triples;
        }
        BasisTriple<RComplex> t = rng.triple<RComplex>(s);
        Duality branch = duality_of(s);
        int found = 0;
        for (int tries = 0; tries < 500 && found < 25; ++tries) {
            Bivector<RComplex> sb = tensor_from_vec3(rng.vec3<RComplex>(), branch);
            RComplex us = contract(t.u, sb);
            if (exactly_zero(us)) continue;
            RComplex vs = contract(t.v, sb);
            RComplex ss = contract(sb, sb);
            RComplex alpha = -(rc(4) + ss + rc(2) * vs) / (rc(2) * us);
            Bivector<RComplex> k = alpha * t.u + t.v + sb;
            if (!exactly_zero(contract(k, k)) || exactly_zero(contract(t.u, k))) continue;
            ok = ok && solve_w(t.u, t.v, k) == t.w;
            ++found;
            ++kdraws;
        }
        ok = ok && found == 25;
    }
    return {ok, std::to_string(triples) + " triples, " + std::to_string(kdraws) +
                    " admissible k draws"};
}

// 4. The generating spinor is recovered from u up to one overall sign,
// including the degenerate first-component-zero path, and eta recovery
// keeps the unit pairing.
Outcome criterion_spinor_recovery() {
    RandomSource rng(2003);
    bool ok = true;
    int tested = 0;
    for (Chirality s : {Chirality::plus, Chirality::minus}) {
        int base = s == Chirality::plus ? 0 : 2;
        for (int trial = 0; trial < 50; ++trial) {
            Spinor<RComplex> gen;
            if (trial % 10 == 8) {
                gen[base + 1] = rng.scalar_nonzero<RComplex>();  // -i u1 + u2 = 0 path
            } else if (trial % 10 == 9) {
                gen[base] = rng.scalar_nonzero<RComplex>();      // i u1 + u2 = 0 path
            } else {
                gen = rng.chiral_spinor<RComplex>(s);
            }
            Bivector<RComplex> u = spinor_pair_tensor(gen, gen, s);
            if (u.is_zero()) continue;
            Spinor<RComplex> back = spinor_from_u(u);
            ok = ok && spinor_pair_tensor(back, back, s) == u;
            ok = ok && (back == gen || back == -gen);
            ++tested;
        }
        // eta recovery from (u, v) reproduces the unit pairing exactly
        for (int trial = 0; trial < 10; ++trial) {
            BasisTriple<RComplex> t = rng.triple<RComplex>(s);
            Spinor<RComplex> eta = eta_from_uv(t.u, t.v, t.xi());
            ok = ok && eta == t.eta();
            ok = ok && sandwich(t.xi(), Mat4<RComplex>::identity(), eta) == rc(1);
        }
    }
    return {ok, std::to_string(tested) + " generators incl. degenerate paths"};
}

// 5. Lorentz maps preserve the metric and the pair tensors transform
// covariantly: exactly for rational parameters, to 1e-12 for float ones.
Outcome criterion_lorentz() {
    RandomSource rng(2004);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        SpinHalfMap<RComplex> s = random_sl2c_exact(rng);
        Mat4<RComplex> lam = vector_rep(s);
        ok = ok && s.det() == rc(1) && preserves_metric(lam);
        Chirality w = trial % 2 == 0 ? Chirality::plus : Chirality::minus;
        Spinor<RComplex> chi = rng.chiral_spinor<RComplex>(w);
        Spinor<RComplex> zeta = rng.chiral_spinor<RComplex>(w);
        ok = ok && spinor_pair_tensor(spinor_rep(s) * chi, spinor_rep(s) * zeta, w) ==
                       transform_bivector(lam, spinor_pair_tensor(chi, zeta, w));
    }
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        SpinHalfMap<DComplex> s = random_sl2c_float(rng);
        Mat4<DComplex> lam = vector_rep(s);
        Mat4<DComplex> g;
        for (int m = 0; m < 4; ++m) g(m, m) = DComplex(metric_sign(m), 0);
        Mat4<DComplex> lhs = lam.transpose() * g * lam;
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                worst = std::max(worst, std::abs(lhs(m, n) - g(m, n)));
                worst = std::max(worst, std::abs(lam(m, n).imag()));
            }
        Chirality w = trial % 2 == 0 ? Chirality::plus : Chirality::minus;
        Spinor<DComplex> chi = rng.chiral_spinor<DComplex>(w);
        Spinor<DComplex> zeta = rng.chiral_spinor<DComplex>(w);
        Bivector<DComplex> lt = spinor_pair_tensor(spinor_rep(s) * chi, spinor_rep(s) * zeta, w);
        Bivector<DComplex> rt = transform_bivector(lam, spinor_pair_tensor(chi, zeta, w));
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) worst = std::max(worst, std::abs(lt(m, n) - rt(m, n)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "100 exact + 200 float maps, float error %.3g <= %.0e",
                  worst, kLorentzFloatTol);
    return {ok && worst <= kLorentzFloatTol, buf};
}

// 6. The second-order rewrite of the first-order operator is an exact
// polynomial identity, and elimination shifts the second component by the
// lifted second-order defect.
Outcome criterion_operator_identities() {
    RandomSource rng(2005);
    bool ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        PolySpinor psi = random_poly_spinor(rng, 2);
        PolyVec4 a = random_poly_vec4(rng, 2);
        ok = ok && second_order_residual(psi, a).is_zero();
    }
    int tested = 0;
    while (tested < 100) {
        FieldConfig cfg = FieldConfig::constant_field(random_rat3(rng), random_rat3(rng));
        Faraday f = faraday_from_config(cfg);
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            BasisTriple<RComplex> t = rng.triple<RComplex>(s);
            FieldScalars fs = field_scalars(f, t, FScalarRoute::contract);
            if (exactly_zero(fs.f_u)) continue;
            PolySpinor psi = random_poly_spinor(rng, 2);
            PolyComponents sc = eliminate(psi, t, cfg);
            PolySpinor d = second_order_apply(psi, cfg.potential());
            ok = ok && sc.phi1 - bar_dot(t.eta(), psi) == (rc(1) / fs.f_u) * bar_dot(t.xi(), d);
            ++tested;
        }
    }
    return {ok, "100 pairs for the rewrite, " + std::to_string(tested) +
                    " transversal draws for elimination"};
}

// 7. Current products factor as j^mu j^nu, the momentum-expanded tensor
// square matches the direct quadratic of the rebuilt spinor, and the whole
// pipeline is invariant under a global sign flip of the scalars.
Outcome criterion_currents() {
    RandomSource rng(2006);
    bool ok = true;
    FieldConfig cfg = FieldConfig::constant_field(
        std::array<Rational, 3>{Rational(2), Rational(-1), Rational(1)},
        std::array<Rational, 3>{Rational(0), Rational(3), Rational(1)});
    int tested = 0;
    for (int trial = 0; trial < 50; ++trial) {
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            BasisTriple<RComplex> t = rng.triple<RComplex>(s);
            PolyComponents sc{random_poly(rng, 2, 2), random_poly(rng, 2, 2)};
            ScalarCurrentPipeline pipe = current_from_scalar(sc, t, cfg);
            std::array<Poly, 16> prod = current_product(pipe.tensor_lower);
            ChiralCurrents j = current_direct(pipe.spinors.lower);
            const PolyVec4& part = flip(s) == Chirality::plus ? j.plus_part : j.minus_part;
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu)
                    ok = ok && prod[size_t(4 * mu + nu)] == part[size_t(mu)] * part[size_t(nu)];
            ok = ok && pipe.tensor_upper == pipe.tensor_upper_direct;
            PolyComponents neg{rc(-1) * sc.phi0, rc(-1) * sc.phi1};
            ScalarCurrentPipeline flipped = current_from_scalar(neg, t, cfg);
            ok = ok && flipped.tensor_lower == pipe.tensor_lower;
            ok = ok && flipped.tensor_upper == pipe.tensor_upper;
            ++tested;
        }
    }
    return {ok, std::to_string(tested) + " random scalar pairs, sign flip bit-invariant"};
}

// 8. On a transversal constant electric field, the fourth-order residual,
// the reconstruction error, and the current mismatch all shrink at the
// stencil order as the grid is refined, and the three field scalar routes
// give bit-identical measurements.
Outcome criterion_grid_convergence() {
    FieldConfig cfg = FieldConfig::constant_field(
        std::array<Rational, 3>{Rational(3, 4), Rational(1, 2), Rational(1, 4)},
        std::array<Rational, 3>{Rational(0), Rational(0), Rational(0)});
    {
        Faraday f = faraday_from_config(cfg);
        BasisTriple<RComplex> t = builtin_triple<RComplex>(Chirality::plus);
        if (exactly_zero(field_scalars(f, t, FScalarRoute::contract).f_u))
            return {false, "configuration is not transversal"};
    }
    // dt tracks dx so truncation falls at the stencil order; nx/4 steps and
    // modes 3,4 keep the finest truncation above the eps/dt^4 round-off floor
    // of the twice-chained second time derivative in the residual.
    std::vector<GridSpec> grids;
    for (int k = 0; k < 3; ++k) {
        GridSpec g;
        g.nx = 128 << k;
        g.dt = 1.0 / (32 << k);
        g.t_final = 1.0;
        g.stencil = Stencil::central4;
        g.init.modes = {3, 4};
        grids.push_back(g);
    }
    bool ok = true;
    std::string orders;
    for (Observable obs : {Observable::fourth_order_residual, Observable::reconstruction_error,
                           Observable::current_mismatch}) {
        Report r = convergence_study(cfg, grids, obs);
        ok = ok && r.ok();
        for (const Check& c : r.checks) ok = ok && c.bound == 4.0 - kOrderMargin;
        if (!r.checks.empty()) {
            char buf[48];
            std::snprintf(buf, sizeof buf, " %s %.2f", observable_name(obs),
                          r.checks.back().value);
            orders += buf;
        }
    }
    GridSolution coarse = integrate_dirac(cfg, grids[0]);
    double a = measure_observable(coarse, Observable::fourth_order_residual, Chirality::plus,
                                  FScalarRoute::contract);
    double b = measure_observable(coarse, Observable::fourth_order_residual, Chirality::plus,
                                  FScalarRoute::sandwich);
    double c = measure_observable(coarse, Observable::fourth_order_residual, Chirality::plus,
                                  FScalarRoute::vec3dot);
    ok = ok && a == b && b == c;
    return {ok, "nx 128/256/512, finest observed orders:" + orders +
                    (a == b && b == c ? "; routes bit-identical" : "; routes disagree")};
}

// 9. A vanishing potential is rejected as non-transversal by both the
// elimination step and the residual kernel.
Outcome criterion_non_transversal() {
    RandomSource rng(2008);
    BasisTriple<RComplex> t = builtin_triple<RComplex>(Chirality::plus);
    bool threw_eliminate = false, threw_residual = false;
    try {
        eliminate(random_poly_spinor(rng, 1), t, FieldConfig::zero_field());
    } catch (const NonTransversal&) {
        threw_eliminate = true;
    }
    try {
        fourth_order_residual(Poly::coordinate(0), t, FieldConfig::zero_field(),
                              ResidualForm::tensor);
    } catch (const NonTransversal&) {
        threw_residual = true;
    }
    return {threw_eliminate && threw_residual,
            "both entry points raise the detection exception"};
}

struct Criterion {
    const char* name;
    Outcome (*fn)();
    double time_limit;  // seconds; 0 means untimed
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"exact matrix identities", &criterion_algebra, kAlgebraTimeLimit},
        {"contraction table", &criterion_contractions, 0},
        {"third tensor solve", &criterion_solve_w, 0},
        {"spinor recovery", &criterion_spinor_recovery, 0},
        {"Lorentz covariance", &criterion_lorentz, 0},
        {"operator identities", &criterion_operator_identities, kOperatorTimeLimit},
        {"current factorization", &criterion_currents, 0},
        {"grid convergence", &criterion_grid_convergence, kNumericalTimeLimit},
        {"non-transversal detection", &criterion_non_transversal, 0},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = c.time_limit == 0 || dt <= c.time_limit;
        bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("criterion %zu: %s  %s  (%s; %.2f s%s)\n", i + 1, pass ? "PASS" : "FAIL",
                    c.name, o.detail.c_str(), dt,
                    c.time_limit == 0
                        ? ""
                        : (in_time ? ", within limit" : ", OVER TIME LIMIT"));
    }
    std::printf("%s (%zu/%zu criteria)\n", failures == 0 ? "PASS" : "FAIL",
                criteria.size() - size_t(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
