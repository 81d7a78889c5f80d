#pragma once

// Refinement studies on the periodic grid: solve one configuration on a
// family of grids, measure an error norm per level, and compare the observed
// order of accuracy against the stencil order.

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dirac1c/gridequiv.hpp"
#include "dirac1c/integrate.hpp"
#include "dirac1c/report.hpp"

namespace dirac1c {

enum class Observable {
    dirac_residual,
    fourth_order_residual,
    reconstruction_error,
    current_mismatch,
};

inline const char* observable_name(Observable o) {
    switch (o) {
        case Observable::dirac_residual: return "dirac-residual";
        case Observable::fourth_order_residual: return "fourth-order-residual";
        case Observable::reconstruction_error: return "reconstruction-error";
        case Observable::current_mismatch: return "current-mismatch";
    }
    throw IndexError("unknown observable");
}

inline Observable observable_from_name(const std::string& n) {
    if (n == "dirac-residual") return Observable::dirac_residual;
    if (n == "fourth-order-residual") return Observable::fourth_order_residual;
    if (n == "reconstruction-error") return Observable::reconstruction_error;
    if (n == "current-mismatch") return Observable::current_mismatch;
    throw ConfigError("unknown observable: " + n);
}

inline const std::array<Observable, 4>& all_observables() {
    static const std::array<Observable, 4> v = {
        Observable::dirac_residual, Observable::fourth_order_residual,
        Observable::reconstruction_error, Observable::current_mismatch};
    return v;
}

/// Error norm of one observable on one solved grid. The residual observables
/// are absolute RMS norms over the interior time window; reconstruction and
/// current mismatch are relative to the direct quantity.
inline double measure_observable(const GridSolution& sol, Observable obs,
                                 Chirality sign = Chirality::plus,
                                 FScalarRoute route = FScalarRoute::contract) {
    const int slices = sol.psi.slices;
    if (obs == Observable::dirac_residual) {
        SpinorField r = dirac_residual_grid(sol);
        return rms(r, central_window(slices, dirac_residual_halo(sol.spec)));
    }
    BasisTriple<DComplex> tr = to_dcomplex(builtin_triple<RComplex>(sign));
    GridFieldScalars fs = field_scalars_grid(sol, tr, route);
    ScalarField phi0 = bar_component(sol.psi, tr.xi());
    SliceRange full = full_range(slices);
    const int th = time_halo(sol.spec);
    if (obs == Observable::fourth_order_residual) {
        ScalarField r = fourth_order_residual_grid(phi0, sol, fs, full);
        return rms(r, window_in(full.shrink(2 * th), slices));
    }
    ScalarField phi1 = derive_phi1(phi0, sol, fs, full);
    SliceRange phi1_range = full.shrink(th);
    TimeWindow w = window_in(phi1_range.shrink(th), slices);
    if (obs == Observable::reconstruction_error) {
        SpinorField rec = reconstruct_grid(phi0, phi1, sol, tr, phi1_range);
        return rms_diff(rec, sol.psi, w) / rms(sol.psi, w);
    }
    GridCurrents js = current_scalar_grid(phi0, phi1, sol, tr, phi1_range);
    GridCurrents jd = current_direct_grid(sol.psi, sign, full);
    double lower = rms_diff(js.lower, jd.lower, w) / rms(jd.lower, w);
    double total = rms_diff(js.total, jd.total, w) / rms(jd.total, w);
    return std::max(lower, total);
}

/// Expected order of accuracy: the spatial stencil order. Time integration
/// (RK4) and the fourth order time stencil are at least as accurate
/// everywhere they enter, and the spectral stencil is time-limited.
inline double expected_order(const GridSpec& spec) { return stencil_order(spec.stencil); }

namespace detail {
inline std::string short_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}
}  // namespace detail

/// Solve the configuration on every grid in the family and check that each
/// refinement step reduces the observable's error at the expected order
/// (within 0.3). Non-shrinking errors are reported as failed checks, not
/// thrown: a degenerate family (for example the same grid twice) shows up as
/// a NonMonotoneErrors note with error ratio 1.
inline Report convergence_study(const FieldConfig& config, const std::vector<GridSpec>& grids,
                                Observable obs, Chirality sign = Chirality::plus) {
    if (grids.size() < 3) throw ConfigError("a convergence study needs at least 3 grids");
    for (const GridSpec& g : grids) {
        g.validate();
        if (g.stencil != grids.front().stencil)
            throw ConfigError("all grids in a study must share one stencil");
    }

    Report report;
    report.suite = std::string("convergence-") + observable_name(obs);
    report.seed = grids.front().init.seed;

    std::vector<double> errors;
    for (const GridSpec& g : grids)
        errors.push_back(measure_observable(integrate_dirac(config, g), obs, sign));

    const double least = expected_order(grids.front()) - 0.3;
    for (size_t k = 0; k + 1 < grids.size(); ++k) {
        Check c;
        char id[32];
        std::snprintf(id, sizeof id, "order.%02zu", k + 1);
        c.id = id;
        c.anchor = "log(e_coarse/e_fine) / log(dx_coarse/dx_fine) >= stencil order - 0.3";
        c.bound = least;
        const double ec = errors[k], ef = errors[k + 1];
        const double hc = grids[k].dx(), hf = grids[k + 1].dx();
        std::string levels = "nx " + std::to_string(grids[k].nx) + " -> " +
                             std::to_string(grids[k + 1].nx) + ", error " +
                             detail::short_double(ec) + " -> " + detail::short_double(ef);
        if (!(ec > ef)) {
            c.passed = false;
            c.note = "NonMonotoneErrors: error ratio <= 1; " + levels;
        } else if (!(hc > hf)) {
            c.passed = false;
            c.note = "NonMonotoneErrors: not a refinement step (dx did not shrink); " + levels;
        } else {
            c.value = std::log(ec / ef) / std::log(hc / hf);
            c.passed = c.value >= least;
            c.note = "observed order; " + levels;
        }
        report.checks.push_back(std::move(c));
    }
    report.sort_checks();
    return report;
}

}  // namespace dirac1c
