#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "dirac1c/error.hpp"
#include "dirac1c/matrix.hpp"
#include "dirac1c/scalar.hpp"

namespace dirac1c {

enum class Stencil { central2, central4, spectral };

inline int stencil_order(Stencil s) { return s == Stencil::central2 ? 2 : 4; }

/// One-sided footprint of the difference stencil, in grid points.
inline int stencil_halo(Stencil s) { return s == Stencil::central2 ? 1 : 2; }

/// Stored time slices are differentiated with a matching central stencil.
/// The spectral scheme is periodic in x only, so it uses central-4 in t.
inline Stencil time_stencil(Stencil s) {
    return s == Stencil::central2 ? Stencil::central2 : Stencil::central4;
}

inline const char* stencil_name(Stencil s) {
    switch (s) {
        case Stencil::central2: return "central-2";
        case Stencil::central4: return "central-4";
        case Stencil::spectral: return "spectral";
    }
    return "?";
}

inline Stencil stencil_from_name(const std::string& n) {
    if (n == "central-2") return Stencil::central2;
    if (n == "central-4") return Stencil::central4;
    if (n == "spectral") return Stencil::spectral;
    throw ConfigError("unknown stencil: " + n);
}

/// Initial profile for the time integrator. Mode numbers and the plane-wave
/// momentum are stored as doubles so that non-integer requests can be
/// detected and rejected rather than silently wrapped.
struct InitSpec {
    enum class Family { zero, modes, plane_wave };
    Family family = Family::modes;
    std::vector<double> modes = {1, 2};
    std::uint64_t seed = 7;
    double momentum = 1;
};

inline const char* init_family_name(InitSpec::Family f) {
    switch (f) {
        case InitSpec::Family::zero: return "zero";
        case InitSpec::Family::modes: return "modes";
        case InitSpec::Family::plane_wave: return "plane-wave";
    }
    return "?";
}

inline InitSpec::Family init_family_from_name(const std::string& n) {
    if (n == "zero") return InitSpec::Family::zero;
    if (n == "modes") return InitSpec::Family::modes;
    if (n == "plane-wave") return InitSpec::Family::plane_wave;
    throw ConfigError("unknown init family: " + n);
}

/// Uniform periodic grid on [0, length) x [0, t_final]. dt must divide
/// t_final so the final slice lands exactly on t_final.
struct GridSpec {
    int nx = 128;
    double length = 6.283185307179586476925286766559;
    double dt = 1.0 / 51.0;
    double t_final = 1.0;
    Stencil stencil = Stencil::central4;
    InitSpec init;

    double dx() const { return length / nx; }
    int steps() const { return int(std::llround(t_final / dt)); }

    void validate() const {
        if (nx < 8) throw ConfigError("nx must be at least 8");
        if (!(length > 0) || !(dt > 0) || !(t_final > 0))
            throw ConfigError("length, dt, t_final must be positive");
        int n = steps();
        if (n < 4) throw ConfigError("t_final/dt must be at least 4 steps");
        if (std::abs(n * dt - t_final) > 1e-9 * t_final)
            throw ConfigError("dt must divide t_final evenly");
    }
};

struct ScalarField {
    int slices = 0, nx = 0;
    std::vector<DComplex> v;

    ScalarField() = default;
    ScalarField(int s, int n) : slices(s), nx(n), v(size_t(s) * size_t(n)) {}

    DComplex& at(int it, int ix) { return v[size_t(it) * nx + ix]; }
    const DComplex& at(int it, int ix) const { return v[size_t(it) * nx + ix]; }
};

struct SpinorField {
    int slices = 0, nx = 0;
    std::vector<DComplex> v;

    SpinorField() = default;
    SpinorField(int s, int n) : slices(s), nx(n), v(size_t(s) * size_t(n) * 4) {}

    DComplex& at(int it, int ix, int c) { return v[(size_t(it) * nx + ix) * 4 + c]; }
    const DComplex& at(int it, int ix, int c) const {
        return v[(size_t(it) * nx + ix) * 4 + c];
    }

    Spinor<DComplex> spinor_at(int it, int ix) const {
        Spinor<DComplex> s;
        for (int c = 0; c < 4; ++c) s[c] = at(it, ix, c);
        return s;
    }
    void set_spinor(int it, int ix, const Spinor<DComplex>& s) {
        for (int c = 0; c < 4; ++c) at(it, ix, c) = s[c];
    }
};

/// Periodic spatial derivative operator on one slice (stride-1 arrays of
/// length nx). The spectral path owns FFTW plans, so instances are
/// non-copyable; `in` and `out` must not alias.
class SpatialDeriv {
  public:
    SpatialDeriv(Stencil st, int nx, double length)
        : st_(st), nx_(nx), dx_(length / nx) {
        if (nx < 8) throw ConfigError("nx must be at least 8");
        if (st_ == Stencil::spectral) {
            buf_ = static_cast<fftw_complex*>(
                fftw_malloc(sizeof(fftw_complex) * size_t(nx_)));
            fwd_ = fftw_plan_dft_1d(nx_, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
            bwd_ = fftw_plan_dft_1d(nx_, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
            k_.resize(size_t(nx_));
            const double two_pi = 6.283185307179586476925286766559;
            for (int j = 0; j < nx_; ++j) {
                int m = (j <= nx_ / 2) ? j : j - nx_;
                k_[size_t(j)] = two_pi * m / (dx_ * nx_);
            }
        }
    }

    ~SpatialDeriv() {
        if (fwd_) fftw_destroy_plan(fwd_);
        if (bwd_) fftw_destroy_plan(bwd_);
        if (buf_) fftw_free(buf_);
    }

    SpatialDeriv(const SpatialDeriv&) = delete;
    SpatialDeriv& operator=(const SpatialDeriv&) = delete;

    Stencil stencil() const { return st_; }
    int nx() const { return nx_; }
    double dx() const { return dx_; }

    void d1(const DComplex* f, DComplex* out) {
        switch (st_) {
            case Stencil::central2:
                for (int i = 0; i < nx_; ++i)
                    out[i] = (f[wrap(i + 1)] - f[wrap(i - 1)]) / (2 * dx_);
                return;
            case Stencil::central4:
                for (int i = 0; i < nx_; ++i)
                    out[i] = (-f[wrap(i + 2)] + 8.0 * f[wrap(i + 1)] -
                              8.0 * f[wrap(i - 1)] + f[wrap(i - 2)]) /
                             (12 * dx_);
                return;
            case Stencil::spectral: spectral_apply(f, out, false); return;
        }
    }

    void d2(const DComplex* f, DComplex* out) {
        switch (st_) {
            case Stencil::central2:
                for (int i = 0; i < nx_; ++i)
                    out[i] = (f[wrap(i + 1)] - 2.0 * f[i] + f[wrap(i - 1)]) /
                             (dx_ * dx_);
                return;
            case Stencil::central4:
                for (int i = 0; i < nx_; ++i)
                    out[i] = (-f[wrap(i + 2)] + 16.0 * f[wrap(i + 1)] -
                              30.0 * f[i] + 16.0 * f[wrap(i - 1)] -
                              f[wrap(i - 2)]) /
                             (12 * dx_ * dx_);
                return;
            case Stencil::spectral: spectral_apply(f, out, true); return;
        }
    }

    /// sup over wavenumbers of |first-derivative symbol|; sets the advective
    /// part of the time-step stability bound.
    double symbol_sup() const {
        switch (st_) {
            case Stencil::central2: return 1.0 / dx_;
            case Stencil::central4: {
                double best = 0;
                for (int i = 1; i < 2048; ++i) {
                    double th = 3.14159265358979323846 * i / 2048;
                    double s =
                        std::abs(8 * std::sin(th) - std::sin(2 * th)) / 6;
                    if (s > best) best = s;
                }
                return best / dx_;
            }
            case Stencil::spectral: return 3.14159265358979323846 / dx_;
        }
        return 0;
    }

  private:
    int wrap(int i) const { return (i % nx_ + nx_) % nx_; }

    void spectral_apply(const DComplex* f, DComplex* out, bool second) {
        for (int j = 0; j < nx_; ++j) {
            buf_[j][0] = f[j].real();
            buf_[j][1] = f[j].imag();
        }
        fftw_execute(fwd_);
        for (int j = 0; j < nx_; ++j) {
            double re = buf_[j][0], im = buf_[j][1];
            double k = k_[size_t(j)];
            if (second) {
                buf_[j][0] = -k * k * re;
                buf_[j][1] = -k * k * im;
            } else {
                // the Nyquist bin has no well-defined odd derivative; drop it
                bool nyquist = (nx_ % 2 == 0) && (j == nx_ / 2);
                double kk = nyquist ? 0.0 : k;
                buf_[j][0] = -kk * im;
                buf_[j][1] = kk * re;
            }
        }
        fftw_execute(bwd_);
        for (int j = 0; j < nx_; ++j)
            out[j] = DComplex(buf_[j][0], buf_[j][1]) / double(nx_);
    }

    Stencil st_;
    int nx_;
    double dx_;
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_ = nullptr, bwd_ = nullptr;
    std::vector<double> k_;
};

namespace detail {

inline void check_time_index(int it, int slices, int halo) {
    if (it < halo || it >= slices - halo)
        throw IndexError("time index too close to the stored boundary");
}

}  // namespace detail

inline DComplex ddt(const ScalarField& f, int it, int ix, double dt, Stencil ts) {
    detail::check_time_index(it, f.slices, stencil_halo(ts));
    if (ts == Stencil::central2)
        return (f.at(it + 1, ix) - f.at(it - 1, ix)) / (2 * dt);
    return (-f.at(it + 2, ix) + 8.0 * f.at(it + 1, ix) - 8.0 * f.at(it - 1, ix) +
            f.at(it - 2, ix)) /
           (12 * dt);
}

inline DComplex d2dt2(const ScalarField& f, int it, int ix, double dt, Stencil ts) {
    detail::check_time_index(it, f.slices, stencil_halo(ts));
    if (ts == Stencil::central2)
        return (f.at(it + 1, ix) - 2.0 * f.at(it, ix) + f.at(it - 1, ix)) /
               (dt * dt);
    return (-f.at(it + 2, ix) + 16.0 * f.at(it + 1, ix) - 30.0 * f.at(it, ix) +
            16.0 * f.at(it - 1, ix) - f.at(it - 2, ix)) /
           (12 * dt * dt);
}

inline DComplex ddt(const SpinorField& f, int it, int ix, int c, double dt,
                    Stencil ts) {
    detail::check_time_index(it, f.slices, stencil_halo(ts));
    if (ts == Stencil::central2)
        return (f.at(it + 1, ix, c) - f.at(it - 1, ix, c)) / (2 * dt);
    return (-f.at(it + 2, ix, c) + 8.0 * f.at(it + 1, ix, c) -
            8.0 * f.at(it - 1, ix, c) + f.at(it - 2, ix, c)) /
           (12 * dt);
}

/// Inclusive slice range kept clear of both stored-history ends.
struct TimeWindow {
    int it0 = 0, it1 = 0;
    int count() const { return it1 - it0 + 1; }
};

/// The central half of the run, shrunk so every slice admits stencils
/// reaching `halo` slices beyond it.
inline TimeWindow central_window(int slices, int halo) {
    int last = slices - 1;
    int a = std::max(halo, int(std::ceil(0.25 * last)));
    int b = std::min(last - halo, int(std::floor(0.75 * last)));
    if (a > b) throw ConfigError("too few slices for an interior window");
    return {a, b};
}

inline double rms(const ScalarField& f, TimeWindow w) {
    double s = 0;
    for (int it = w.it0; it <= w.it1; ++it)
        for (int ix = 0; ix < f.nx; ++ix) s += std::norm(f.at(it, ix));
    return std::sqrt(s / (double(w.count()) * f.nx));
}

inline double rms_diff(const ScalarField& a, const ScalarField& b, TimeWindow w) {
    double s = 0;
    for (int it = w.it0; it <= w.it1; ++it)
        for (int ix = 0; ix < a.nx; ++ix)
            s += std::norm(a.at(it, ix) - b.at(it, ix));
    return std::sqrt(s / (double(w.count()) * a.nx));
}

inline double rms(const SpinorField& f, TimeWindow w) {
    double s = 0;
    for (int it = w.it0; it <= w.it1; ++it)
        for (int ix = 0; ix < f.nx; ++ix)
            for (int c = 0; c < 4; ++c) s += std::norm(f.at(it, ix, c));
    return std::sqrt(s / (double(w.count()) * f.nx * 4));
}

inline double rms_diff(const SpinorField& a, const SpinorField& b, TimeWindow w) {
    double s = 0;
    for (int it = w.it0; it <= w.it1; ++it)
        for (int ix = 0; ix < a.nx; ++ix)
            for (int c = 0; c < 4; ++c)
                s += std::norm(a.at(it, ix, c) - b.at(it, ix, c));
    return std::sqrt(s / (double(w.count()) * a.nx * 4));
}

inline double sup_abs_slice(const SpinorField& f, int it) {
    double m = 0;
    for (int ix = 0; ix < f.nx; ++ix)
        for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(f.at(it, ix, c)));
    return m;
}

}  // namespace dirac1c
