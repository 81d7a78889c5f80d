#include "dirac1c/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dirac1c/basis.hpp"
#include "dirac1c/equivalence.hpp"
#include "dirac1c/error.hpp"
#include "dirac1c/lorentz.hpp"
#include "dirac1c/polyops.hpp"
#include "dirac1c/random.hpp"

namespace dirac1c {
namespace {

RComplex rc(long re, long im = 0) { return RComplex(Rational(re), Rational(im)); }

std::array<Rational, 3> random_rat3(RandomSource& rng) {
    return {rng.rational(), rng.rational(), rng.rational()};
}

Bivector<RComplex> random_antisymmetric(RandomSource& rng) {
    Bivector<RComplex> t;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            RComplex z = rng.scalar<RComplex>();
            t(mu, nu) = z;
            t(nu, mu) = -z;
        }
    return t;
}

Bivector<RComplex> random_same_branch(RandomSource& rng, Duality tag) {
    return tensor_from_vec3(rng.vec3<RComplex>(), tag);
}

// Per-check seed streams: each check is reproducible on its own, and "all"
// is bit-identical to running the suites one at a time.
std::uint64_t stream(std::uint64_t seed, std::uint64_t salt) {
    return seed * 1000003u + salt;
}

struct Collector {
    std::vector<Check>* out;
    void exact(std::string id, std::string anchor, bool ok, std::string note = {}) {
        out->push_back(Check{std::move(id), std::move(anchor), ok, 0.0, 0.0, std::move(note)});
    }
    void measured(std::string id, std::string anchor, double err, double tol,
                  std::string note = {}) {
        out->push_back(
            Check{std::move(id), std::move(anchor), err <= tol, err, tol, std::move(note)});
    }
};

void suite_algebra(std::uint64_t seed, Collector& col) {
    using M = Mat4<RComplex>;
    const M id = M::identity();

    {
        bool ok = true;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                M anti = gamma<RComplex>(mu) * gamma<RComplex>(nu) +
                         gamma<RComplex>(nu) * gamma<RComplex>(mu);
                long g = mu == nu ? 2 * metric_sign(mu) : 0;
                ok = ok && anti == rc(g) * id;
            }
        col.exact("algebra.01", "{gamma^mu, gamma^nu} = 2 g^{mu nu}", ok);
    }
    {
        bool ok = true;
        const M g0 = gamma<RComplex>(0);
        for (int mu = 0; mu < 4; ++mu)
            ok = ok && gamma<RComplex>(mu).dagger() == g0 * gamma<RComplex>(mu) * g0;
        col.exact("algebra.02", "(gamma^mu)^dagger = gamma^0 gamma^mu gamma^0", ok);
    }
    {
        const M g5 = gamma5<RComplex>();
        bool ok = rc(0, 1) * (gamma<RComplex>(0) * gamma<RComplex>(1) * gamma<RComplex>(2) *
                              gamma<RComplex>(3)) ==
                  g5;
        ok = ok && g5 * g5 == id;
        for (int mu = 0; mu < 4; ++mu)
            ok = ok && g5 * gamma<RComplex>(mu) + gamma<RComplex>(mu) * g5 == M::zero();
        col.exact("algebra.03",
                  "gamma^5 = i gamma^0 gamma^1 gamma^2 gamma^3, (gamma^5)^2 = 1, "
                  "{gamma^5, gamma^mu} = 0",
                  ok);
    }
    {
        bool ok = true;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                long g = mu == nu ? metric_sign(mu) : 0;
                M rhs = rc(g) * id - rc(0, 1) * sigma<RComplex>(mu, nu);
                ok = ok && gamma<RComplex>(mu) * gamma<RComplex>(nu) == rhs;
            }
        col.exact("algebra.04", "gamma^mu gamma^nu = g^{mu nu} - i sigma^{mu nu}", ok);
    }
    {
        const M c = charge_conj_matrix<RComplex>();
        const M cinv = -c;
        bool ok = c.transpose() == -c && c.dagger() == -c && c * c == -id;
        for (int mu = 0; mu < 4; ++mu)
            ok = ok && c * gamma<RComplex>(mu) * cinv == -gamma<RComplex>(mu).transpose();
        ok = ok && c * gamma5<RComplex>() * cinv == gamma5<RComplex>().transpose();
        col.exact("algebra.05",
                  "C^T = -C, C^dagger = -C, C^2 = -1, C gamma^mu C^-1 = -(gamma^mu)^T, "
                  "C gamma^5 C^-1 = (gamma^5)^T",
                  ok);
    }
    {
        const M c = charge_conj_matrix<RComplex>();
        const M cinv = -c;
        bool ok = true;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu)
                ok = ok &&
                     c * sigma<RComplex>(mu, nu) * cinv == -sigma<RComplex>(mu, nu).transpose();
        col.exact("algebra.06", "C sigma^{mu nu} C^-1 = -(sigma^{mu nu})^T", ok);
    }
    {
        RandomSource rng(stream(seed, 107));
        const M cg0 = charge_conj_matrix<RComplex>() * gamma<RComplex>(0);
        bool ok = true;
        for (int trial = 0; trial < 20; ++trial) {
            Spinor<RComplex> psi = rng.spinor<RComplex>();
            Spinor<RComplex> conj_psi;
            for (int k = 0; k < 4; ++k) conj_psi[k] = conj_of(psi[k]);
            ok = ok && charge_conjugate(psi) == cg0 * conj_psi;
            ok = ok && charge_conjugate(charge_conjugate(psi)) == psi;
            RComplex lam = rng.scalar<RComplex>();
            ok = ok && charge_conjugate(lam * psi) == conj_of(lam) * charge_conjugate(psi);
            Spinor<RComplex> plus = rng.chiral_spinor<RComplex>(Chirality::plus);
            ok = ok && is_chiral(charge_conjugate(plus), Chirality::minus);
            Spinor<RComplex> minus = rng.chiral_spinor<RComplex>(Chirality::minus);
            ok = ok && is_chiral(charge_conjugate(minus), Chirality::plus);
        }
        col.exact("algebra.07",
                  "psi^c = C gamma^0 conj(psi); (psi^c)^c = psi; (lam psi)^c = conj(lam) psi^c; "
                  "conjugation flips chirality",
                  ok, "20 random spinors");
    }
    {
        bool ok = true;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) {
                        M direct = gamma<RComplex>(a) * gamma<RComplex>(b) *
                                   gamma<RComplex>(c) * gamma<RComplex>(d);
                        ok = ok && four_gamma_expand<RComplex>(a, b, c, d) == direct;
                    }
        col.exact("algebra.08",
                  "gamma^a gamma^b gamma^c gamma^d = metric expansion - i eps^{abcd} gamma^5",
                  ok, "all 256 index tuples");
    }
}

void suite_duality(std::uint64_t seed, Collector& col) {
    {
        RandomSource rng(stream(seed, 201));
        bool ok = true;
        for (int trial = 0; trial < 20; ++trial) {
            Bivector<RComplex> t = random_antisymmetric(rng);
            ok = ok && hodge_dual(hodge_dual(t)).t == (-t).t;
        }
        col.exact("duality.01", "*(*T) = -T", ok, "20 random antisymmetric tensors");
    }
    {
        bool ok = true;
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            BasisTriple<RComplex> t = builtin_triple<RComplex>(s);
            RComplex ev = s == Chirality::plus ? rc(0, 1) : rc(0, -1);
            for (const Bivector<RComplex>* b : {&t.u, &t.v, &t.w})
                ok = ok && hodge_dual(*b).t == (ev * (*b)).t;
        }
        col.exact("duality.02", "*T = (sign) i T for the builtin u, v, w", ok, "both branches");
    }
    {
        RandomSource rng(stream(seed, 203));
        bool ok = true;
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            RComplex ev = s == Chirality::plus ? rc(0, 1) : rc(0, -1);
            for (int trial = 0; trial < 10; ++trial) {
                Spinor<RComplex> chi = rng.chiral_spinor<RComplex>(s);
                Spinor<RComplex> zeta = rng.chiral_spinor<RComplex>(s);
                Bivector<RComplex> th = spinor_pair_tensor(chi, zeta, s);
                ok = ok && th.tag == duality_of(s);
                ok = ok && hodge_dual(th).t == (ev * th).t;
            }
        }
        col.exact("duality.03", "*theta = (sign) i theta for theta built from a chiral pair", ok,
                  "10 random pairs per branch");
    }
    {
        RandomSource rng(stream(seed, 204));
        bool ok = true;
        for (Duality tag : {Duality::plus, Duality::minus}) {
            for (int trial = 0; trial < 10; ++trial) {
                Vec3<RComplex> a = rng.vec3<RComplex>();
                Bivector<RComplex> t = tensor_from_vec3(a, tag);
                Vec3<RComplex> back = vec3_from_tensor(t);
                for (int k = 0; k < 3; ++k) ok = ok && back[k] == a[k];
                ok = ok && bivector_consistent(t);
            }
        }
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            BasisTriple<RComplex> t = builtin_triple<RComplex>(s);
            for (const Bivector<RComplex>* b : {&t.u, &t.v, &t.w})
                ok = ok && tensor_from_vec3(vec3_from_tensor(*b), b->tag) == *b;
        }
        col.exact("duality.04", "tensor_from_vec3 and vec3_from_tensor invert each other", ok);
    }
    {
        RandomSource rng(stream(seed, 205));
        bool ok = true;
        for (Duality tag : {Duality::plus, Duality::minus}) {
            for (int trial = 0; trial < 10; ++trial) {
                Bivector<RComplex> a = random_same_branch(rng, tag);
                Bivector<RComplex> b = random_same_branch(rng, tag);
                RComplex rhs = rc(-4) * dot3(vec3_from_tensor(a), vec3_from_tensor(b));
                ok = ok && contract(a, b) == rhs;
                ok = ok && contract(a, b) == contract(b, a);
            }
        }
        col.exact("duality.05", "T^{mu nu} S_{mu nu} = -4 (vec T . vec S) on a shared branch",
                  ok);
    }
    {
        RandomSource rng(stream(seed, 206));
        const RComplex i = rc(0, 1);
        const RComplex half = rc(1) / rc(2);
        bool ok = true;
        for (int trial = 0; trial < 10; ++trial) {
            Bivector<RComplex> t = random_antisymmetric(rng);
            Mat4<RComplex> star = hodge_dual(t).t;
            Bivector<RComplex> tp{half * (t.t - i * star), Duality::plus};
            Bivector<RComplex> tm{half * (t.t + i * star), Duality::minus};
            ok = ok && tp.t + tm.t == t.t;
            ok = ok && hodge_dual(tp).t == (i * tp).t;
            ok = ok && hodge_dual(tm).t == (rc(0, -1) * tm).t;
            ok = ok && bivector_consistent(tp) && bivector_consistent(tm);
        }
        col.exact("duality.06", "T = T+ + T- with *T+- = +-i T+-", ok,
                  "self-dual split of 10 random tensors");
    }
}

void suite_basis(std::uint64_t seed, Collector& col) {
    {
        RandomSource rng(stream(seed, 301));
        bool ok = true;
        auto table = [&ok](const BasisTriple<RComplex>& t) {
            ok = ok && contract(t.u, t.u) == rc(0);
            ok = ok && contract(t.u, t.v) == rc(0);
            ok = ok && contract(t.v, t.v) == rc(4);
            ok = ok && contract(t.v, t.w) == rc(0);
            ok = ok && contract(t.w, t.w) == rc(0);
        };
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            table(builtin_triple<RComplex>(s));
            for (int trial = 0; trial < 20; ++trial) table(rng.triple<RComplex>(s));
        }
        col.exact("basis.01", "u.u = 0, u.v = 0, v.v = 4, v.w = 0, w.w = 0", ok,
                  "builtin and 20 random triples per branch");
    }
    {
        RandomSource rng(stream(seed, 302));
        bool ok = true;
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            BasisTriple<RComplex> bt = builtin_triple<RComplex>(s);
            ok = ok && contract(bt.u, bt.w) == rc(-8);
            for (int trial = 0; trial < 20; ++trial) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                ok = ok && contract(t.u, t.w) == rc(-8);
            }
        }
        col.exact("basis.02", "u^{mu nu} w_{mu nu} = -8", ok,
                  "both builtin triples and 20 random triples per branch");
    }
    {
        RandomSource rng(stream(seed, 303));
        bool ok = true;
        std::string first_fail;
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            for (int trial = 0; trial < 10; ++trial) {
                BasisTriple<RComplex> t =
                    trial == 0 ? builtin_triple<RComplex>(s) : rng.triple<RComplex>(s);
                UvReport r = validate_uv(t.u, t.v);
                if (!r.ok()) {
                    ok = false;
                    for (const UvCheck& c : r.items)
                        if (!c.ok && first_fail.empty()) first_fail = c.name;
                }
            }
        }
        col.exact("basis.03", "structural checks on the (u, v) pair all pass", ok, first_fail);
    }
    {
        RandomSource rng(stream(seed, 304));
        bool ok = true;
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            BasisTriple<RComplex> bt = builtin_triple<RComplex>(s);
            ok = ok && solve_w(bt.u, bt.v) == bt.w;
            for (int trial = 0; trial < 10; ++trial) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                ok = ok && solve_w(t.u, t.v) == t.w;
            }
        }
        col.exact("basis.04", "solve_w(u, v) = eta-bar sigma^{mu nu} eta^c", ok);
    }
    {
        RandomSource rng(stream(seed, 305));
        bool ok = true;
        int tested = 0;
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            Duality branch = duality_of(s);
            for (int trial = 0; trial < 8; ++trial) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                for (int tries = 0; tries < 20; ++tries) {
                    Bivector<RComplex> sb = random_same_branch(rng, branch);
                    RComplex us = contract(t.u, sb);
                    if (exactly_zero(us)) continue;
                    RComplex vs = contract(t.v, sb);
                    RComplex ss = contract(sb, sb);
                    // pick alpha so that k = alpha u + v + s is null
                    RComplex alpha = -(rc(4) + ss + rc(2) * vs) / (rc(2) * us);
                    Bivector<RComplex> k = alpha * t.u + t.v + sb;
                    if (!exactly_zero(contract(k, k)) || exactly_zero(contract(t.u, k)))
                        continue;
                    ok = ok && solve_w(t.u, t.v, k) == t.w;
                    ++tested;
                    break;
                }
            }
        }
        col.exact("basis.05", "solve_w(u, v, k) does not depend on the admissible null k", ok,
                  std::to_string(tested) + " admissible k draws");
    }
    {
        RandomSource rng(stream(seed, 306));
        bool ok = true;
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            for (int trial = 0; trial < 20; ++trial) {
                Spinor<RComplex> gen = rng.chiral_spinor<RComplex>(s);
                Bivector<RComplex> u = spinor_pair_tensor(gen, gen, s);
                if (u.is_zero()) continue;
                Spinor<RComplex> back = spinor_from_u(u);
                ok = ok && spinor_pair_tensor(back, back, s) == u;
                ok = ok && (back == gen || back == -gen);
            }
        }
        Spinor<RComplex> only2;
        only2[1] = rc(5);
        Bivector<RComplex> u2 = spinor_pair_tensor(only2, only2, Chirality::plus);
        Spinor<RComplex> r2 = spinor_from_u(u2);
        ok = ok && (r2 == only2 || r2 == -only2);
        col.exact("basis.06", "spinor_from_u(u(xi)) = +- xi", ok,
                  "includes a single-component degenerate generator");
    }
    {
        RandomSource rng(stream(seed, 307));
        bool ok = true;
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            BasisTriple<RComplex> bt = builtin_triple<RComplex>(s);
            ok = ok && eta_from_uv(bt.u, bt.v, bt.xi()) == bt.eta();
            for (int trial = 0; trial < 10; ++trial) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                ok = ok && eta_from_uv(t.u, t.v, t.xi()) == t.eta();
            }
        }
        col.exact("basis.07", "eta recovered from (u, v, xi) keeps xi-bar eta^c = 1", ok);
    }
    {
        RandomSource rng(stream(seed, 308));
        bool ok = true;
        int tested = 0;
        for (Chirality s : {Chirality::plus, Chirality::minus}) {
            RComplex want = s == Chirality::plus ? rc(1) : rc(-1);
            for (int trial = 0; trial < 10; ++trial) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                Vec3<RComplex> u = vec3_from_tensor(t.u), v = vec3_from_tensor(t.v);
                if (exactly_zero(u[2])) continue;
                ok = ok && (v[0] * u[1] - v[1] * u[0]) / u[2] == want;
                ++tested;
            }
        }
        col.exact("basis.08", "(v1 u2 - v2 u1) / u3 = (sign) 1", ok,
                  std::to_string(tested) + " triples with u3 nonzero");
    }
}

void suite_lorentz(std::uint64_t seed, Collector& col) {
    {
        RandomSource rng(stream(seed, 401));
        bool ok = true;
        for (int trial = 0; trial < 25; ++trial) {
            SpinHalfMap<RComplex> s = random_sl2c_exact(rng);
            ok = ok && s.det() == rc(1);
            Mat4<RComplex> lam = vector_rep(s);
            for (const RComplex& z : lam.m) ok = ok && sgn(z.im) == 0;
            ok = ok && preserves_metric(lam);
            ok = ok && vector_rep(-s) == lam;
        }
        col.exact("lorentz.01", "Lambda^T g Lambda = g with Lambda real, exact samples", ok,
                  "25 random SL(2,C) maps");
    }
    {
        RandomSource rng(stream(seed, 402));
        double worst = 0;
        for (int trial = 0; trial < 50; ++trial) {
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
        }
        col.measured("lorentz.02", "Lambda^T g Lambda = g in floating point", worst, 1e-12,
                     "50 random maps");
    }
    {
        RandomSource rng(stream(seed, 403));
        bool ok = true;
        for (int trial = 0; trial < 10; ++trial) {
            SpinHalfMap<RComplex> s1 = random_sl2c_exact(rng);
            SpinHalfMap<RComplex> s2 = random_sl2c_exact(rng);
            ok = ok && vector_rep(s1 * s2) == vector_rep(s1) * vector_rep(s2);
            ok = ok && spinor_rep(s1 * s2) == spinor_rep(s1) * spinor_rep(s2);
        }
        col.exact("lorentz.03", "Lambda(s1 s2) = Lambda(s1) Lambda(s2) and likewise for S", ok);
    }
    {
        RandomSource rng(stream(seed, 404));
        bool ok = true;
        for (Chirality w : {Chirality::plus, Chirality::minus}) {
            for (int trial = 0; trial < 10; ++trial) {
                SpinHalfMap<RComplex> s = random_sl2c_exact(rng);
                Mat4<RComplex> big = spinor_rep(s);
                Mat4<RComplex> lam = vector_rep(s);
                Spinor<RComplex> chi = rng.chiral_spinor<RComplex>(w);
                Spinor<RComplex> zeta = rng.chiral_spinor<RComplex>(w);
                Bivector<RComplex> lhs = spinor_pair_tensor(big * chi, big * zeta, w);
                Bivector<RComplex> rhs =
                    transform_bivector(lam, spinor_pair_tensor(chi, zeta, w));
                ok = ok && lhs == rhs && bivector_consistent(rhs);
            }
        }
        col.exact("lorentz.04",
                  "theta(S chi, S zeta) = Lambda theta(chi, zeta) Lambda^T on both branches",
                  ok);
    }
    {
        RandomSource rng(stream(seed, 405));
        bool ok = true;
        for (int trial = 0; trial < 10; ++trial) {
            SpinHalfMap<RComplex> s = random_sl2c_exact(rng);
            Mat4<RComplex> lam = vector_rep(s);
            Bivector<RComplex> t = random_antisymmetric(rng);
            ok = ok && hodge_dual(transform_bivector(lam, t)).t ==
                           transform_bivector(lam, hodge_dual(t)).t;
        }
        col.exact("lorentz.05", "*(Lambda T Lambda^T) = Lambda (*T) Lambda^T", ok);
    }
    {
        double worst = 0;
        auto dev = [&worst](const DComplex& got, double want) {
            worst = std::max(worst, std::abs(got - DComplex(want, 0)));
        };
        double r = 0.83;
        Mat4<DComplex> lam = vector_rep(boost(3, r));
        dev(lam(0, 0), std::cosh(r));
        dev(lam(0, 3), std::sinh(r));
        dev(lam(3, 0), std::sinh(r));
        dev(lam(3, 3), std::cosh(r));
        dev(lam(1, 1), 1);
        dev(lam(0, 1), 0);
        double th = 0.61;
        Mat4<DComplex> rot = vector_rep(rotation(3, th));
        dev(rot(0, 0), 1);
        dev(rot(1, 1), std::cos(th));
        dev(rot(1, 2), -std::sin(th));
        dev(rot(2, 1), std::sin(th));
        dev(rot(2, 2), std::cos(th));
        col.measured("lorentz.06", "boost and rotation entries match cosh/sinh/cos/sin", worst,
                     1e-13);
    }
}

void suite_oracle(std::uint64_t seed, Collector& col) {
    {
        RandomSource rng(stream(seed, 501));
        bool ok = true;
        for (int trial = 0; trial < 15; ++trial) {
            PolySpinor psi = random_poly_spinor(rng, 2);
            PolyVec4 a = random_poly_vec4(rng, 2);
            ok = ok && second_order_residual(psi, a).is_zero();
        }
        PolySpinor psi = random_poly_spinor(rng, 2);
        ok = ok && second_order_residual(psi, PolyVec4{}).is_zero();
        FieldConfig cfg = FieldConfig::constant_field(random_rat3(rng), random_rat3(rng));
        ok = ok && second_order_residual(psi, cfg.potential()).is_zero();
        col.exact("oracle.01", "D(D psi) - psi + box'(psi) + F psi = 0", ok,
                  "exact polynomial identity, 15 random (psi, A) pairs");
    }
    {
        RandomSource rng(stream(seed, 502));
        bool ok = true;
        int tested = 0;
        for (int trial = 0; trial < 8; ++trial) {
            FieldConfig cfg = FieldConfig::constant_field(random_rat3(rng), random_rat3(rng));
            Faraday f = faraday_from_config(cfg);
            for (Chirality s : {Chirality::plus, Chirality::minus}) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                FieldScalars fs = field_scalars(f, t, FScalarRoute::contract);
                if (exactly_zero(fs.f_u)) continue;
                PolySpinor psi = random_poly_spinor(rng, 2);
                PolyComponents sc = eliminate(psi, t, cfg);
                PolySpinor d = second_order_apply(psi, cfg.potential());
                Poly gap = sc.phi1 - bar_dot(t.eta(), psi);
                ok = ok && gap == (rc(1) / fs.f_u) * bar_dot(t.xi(), d);
                ++tested;
            }
        }
        col.exact("oracle.02", "eliminated phi1 - eta-bar psi = (1/f_u) xi-bar (box' + F) psi",
                  ok, std::to_string(tested) + " transversal draws");
    }
    {
        RandomSource rng(stream(seed, 503));
        bool ok = true;
        for (int trial = 0; trial < 15; ++trial) {
            for (Chirality s : {Chirality::plus, Chirality::minus}) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                Spinor<RComplex> psi = rng.spinor<RComplex>();
                Spinor<RComplex> rebuilt = bar_dot(t.xi(), psi) * charge_conjugate(t.eta()) -
                                           bar_dot(t.eta(), psi) * charge_conjugate(t.xi());
                ok = ok && rebuilt == chiral_project(psi, flip(s));
            }
        }
        col.exact("oracle.03",
                  "(xi-bar psi) eta^c - (eta-bar psi) xi^c = opposite-chirality part of psi",
                  ok);
    }
    {
        RandomSource rng(stream(seed, 504));
        bool ok = true;
        int tested = 0;
        for (int trial = 0; trial < 5; ++trial) {
            FieldConfig cfg = FieldConfig::constant_field(random_rat3(rng), random_rat3(rng));
            Faraday f = faraday_from_config(cfg);
            for (Chirality s : {Chirality::plus, Chirality::minus}) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                FieldScalars fs = field_scalars(f, t, FScalarRoute::contract);
                if (exactly_zero(fs.f_u)) continue;
                PolySpinor psi = random_poly_spinor(rng, 2);
                PolyVec4 a = cfg.potential();
                PolySpinor d = second_order_apply(psi, a);
                Poly phi0 = bar_dot(t.xi(), psi);
                Poly res = fourth_order_residual(phi0, t, cfg, ResidualForm::tensor);
                Poly lifted = (rc(1) / fs.f_u) * bar_dot(t.xi(), d);
                ok = ok && res == bar_dot(t.eta(), d) + box_prime(lifted, a) - fs.f_v * lifted;
                ++tested;
            }
        }
        col.exact("oracle.04",
                  "(box' - f_v)((box' + f_v) phi0 / f_u) + f_w phi0 matches its spinor source",
                  ok, std::to_string(tested) + " transversal draws");
    }
    {
        RandomSource rng(stream(seed, 505));
        bool ok = true;
        int tested = 0;
        for (int trial = 0; trial < 4; ++trial) {
            FieldConfig cfg = FieldConfig::constant_field(random_rat3(rng), random_rat3(rng));
            Faraday f = faraday_from_config(cfg);
            for (Chirality s : {Chirality::plus, Chirality::minus}) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                if (exactly_zero(field_scalars(f, t, FScalarRoute::contract).f_u)) continue;
                Poly phi0 = random_poly(rng, 2);
                Poly a = fourth_order_residual(phi0, t, cfg, ResidualForm::spinor);
                Poly b = fourth_order_residual(phi0, t, cfg, ResidualForm::tensor);
                Poly c = fourth_order_residual(phi0, t, cfg, ResidualForm::vec3);
                ok = ok && a == b && b == c;
                ++tested;
            }
        }
        col.exact("oracle.05", "spinor, tensor, and vec3 residual forms agree exactly", ok,
                  std::to_string(tested) + " draws");
    }
    {
        RandomSource rng(stream(seed, 506));
        bool ok = true;
        FieldConfig cfg = FieldConfig::constant_field(
            std::array<Rational, 3>{Rational(2), Rational(-1), Rational(1)},
            std::array<Rational, 3>{Rational(0), Rational(3), Rational(1)});
        for (int trial = 0; trial < 6; ++trial) {
            for (Chirality s : {Chirality::plus, Chirality::minus}) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                PolyComponents sc{random_poly(rng, 2), random_poly(rng, 2)};
                ScalarCurrentPipeline pipe = current_from_scalar(sc, t, cfg);
                ok = ok && pipe.tensor_lower == spinor_tensor(pipe.spinors.lower, flip(s));
                std::array<Poly, 16> prod = current_product(pipe.tensor_lower);
                ChiralCurrents j = current_direct(pipe.spinors.lower);
                const PolyVec4& part =
                    flip(s) == Chirality::plus ? j.plus_part : j.minus_part;
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = 0; nu < 4; ++nu)
                        ok = ok && prod[size_t(4 * mu + nu)] ==
                                       part[size_t(mu)] * part[size_t(nu)];
            }
        }
        col.exact("oracle.06",
                  "current products from the tensor factor as j^mu j^nu of the chiral part", ok);
    }
    {
        RandomSource rng(stream(seed, 507));
        bool ok = true;
        for (int trial = 0; trial < 10; ++trial) {
            for (Chirality s : {Chirality::plus, Chirality::minus}) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                PolySpinor psi = random_poly_spinor(rng, 2);
                PolyBivector tensor = spinor_tensor(psi, flip(s));
                Poly phi0 = bar_dot(t.xi(), psi);
                ok = ok && phi_squared_from_tensor(tensor, t.u) == phi0 * phi0;
                ok = ok && (contract(tensor, t.u) + rc(8) * (phi0 * phi0)).is_zero();
            }
        }
        col.exact("oracle.07", "T^{mu nu} u_{mu nu} + 8 phi0^2 = 0", ok);
    }
    {
        RandomSource rng(stream(seed, 508));
        bool ok = true;
        FieldConfig cfg = FieldConfig::constant_field(
            std::array<Rational, 3>{Rational(1), Rational(-1), Rational(2)},
            std::array<Rational, 3>{Rational(0), Rational(2), Rational(1)});
        for (int trial = 0; trial < 4; ++trial) {
            for (Chirality s : {Chirality::plus, Chirality::minus}) {
                BasisTriple<RComplex> t = rng.triple<RComplex>(s);
                PolyComponents sc{random_poly(rng, 2), random_poly(rng, 2)};
                PolyComponents neg{rc(-1) * sc.phi0, rc(-1) * sc.phi1};
                ScalarCurrentPipeline a = current_from_scalar(sc, t, cfg);
                ScalarCurrentPipeline b = current_from_scalar(neg, t, cfg);
                ok = ok && a.tensor_lower == b.tensor_lower;
                ok = ok && a.tensor_upper == b.tensor_upper;
                ok = ok && current_product(a.tensor_upper) == current_product(b.tensor_upper);
            }
        }
        col.exact("oracle.08", "the current pipeline is invariant under phi -> -phi", ok);
    }
    {
        RandomSource rng(stream(seed, 509));
        bool ok = true;
        FieldConfig cfg = FieldConfig::constant_field(
            std::array<Rational, 3>{Rational(1), Rational(-1), Rational(2)},
            std::array<Rational, 3>{Rational(0), Rational(2), Rational(1)});
        BasisTriple<RComplex> tp = builtin_triple<RComplex>(Chirality::plus);
        BasisTriple<RComplex> tm = builtin_triple<RComplex>(Chirality::minus);
        for (int trial = 0; trial < 3; ++trial) {
            PolyComponents sc{random_poly(rng, 2, 2), random_poly(rng, 2, 2)};
            ScalarCurrentPipeline pp = current_from_scalar(sc, tp, cfg);
            PolySpinor psi = pp.spinors.total();
            PolyComponents scm{bar_dot(tm.xi(), psi), bar_dot(tm.eta(), psi)};
            ScalarCurrentPipeline pm = current_from_scalar(scm, tm, cfg);
            ok = ok && pm.spinors.lower == pp.spinors.upper;
            ok = ok && current_product(pm.tensor_lower) == current_product(pp.tensor_upper);
        }
        col.exact("oracle.09",
                  "branch variants cross over: the part one variant rebuilds is the part the "
                  "other projects",
                  ok);
    }
    {
        RandomSource rng(stream(seed, 510));
        BasisTriple<RComplex> t = builtin_triple<RComplex>(Chirality::plus);
        PolySpinor psi = random_poly_spinor(rng, 1);
        bool threw_eliminate = false;
        try {
            eliminate(psi, t, FieldConfig::zero_field());
        } catch (const NonTransversal&) {
            threw_eliminate = true;
        }
        bool threw_residual = false;
        try {
            fourth_order_residual(Poly::coordinate(0), t, FieldConfig::zero_field(),
                                  ResidualForm::tensor);
        } catch (const NonTransversal&) {
            threw_residual = true;
        }
        col.exact("oracle.10", "vanishing field -> f_u = 0 -> NonTransversal",
                  threw_eliminate && threw_residual);
    }
}

using SuiteFn = void (*)(std::uint64_t, Collector&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"algebra", &suite_algebra}, {"duality", &suite_duality}, {"basis", &suite_basis},
        {"lorentz", &suite_lorentz}, {"oracle", &suite_oracle},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& verification_suites() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& entry : suite_table()) n.push_back(entry.first);
        return n;
    }();
    return names;
}

Report run_verification(const std::string& suite, std::uint64_t seed) {
    Report report;
    report.suite = suite;
    report.seed = seed;
    Collector col{&report.checks};
    bool found = false;
    for (const auto& entry : suite_table()) {
        if (suite == "all" || suite == entry.first) {
            entry.second(seed, col);
            found = true;
        }
    }
    if (!found) throw ConfigError("unknown verification suite: " + suite);
    report.sort_checks();
    return report;
}

}  // namespace dirac1c
