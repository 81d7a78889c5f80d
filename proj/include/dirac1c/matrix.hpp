#pragma once

#include <array>

#include "dirac1c/error.hpp"
#include "dirac1c/scalar.hpp"

namespace dirac1c {

/// Dense 4x4 complex matrix over either scalar mode.
template <ScalarMode S>
struct Mat4 {
    std::array<S, 16> m{};

    S& operator()(int r, int c) { return m[size_t(4 * r + c)]; }
    const S& operator()(int r, int c) const { return m[size_t(4 * r + c)]; }

    static Mat4 zero() { return {}; }
    static Mat4 identity() {
        Mat4 a;
        for (int i = 0; i < 4; ++i) a(i, i) = scalar_from_int<S>(1);
        return a;
    }

    friend Mat4 operator+(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (size_t i = 0; i < 16; ++i) r.m[i] = a.m[i] + b.m[i];
        return r;
    }
    friend Mat4 operator-(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (size_t i = 0; i < 16; ++i) r.m[i] = a.m[i] - b.m[i];
        return r;
    }
    friend Mat4 operator-(const Mat4& a) {
        Mat4 r;
        for (size_t i = 0; i < 16; ++i) r.m[i] = -a.m[i];
        return r;
    }
    friend Mat4 operator*(const S& s, const Mat4& a) {
        Mat4 r;
        for (size_t i = 0; i < 16; ++i) r.m[i] = s * a.m[i];
        return r;
    }
    friend Mat4 operator*(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) {
                const S& aik = a(i, k);
                if (exactly_zero(aik)) continue;
                for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend bool operator==(const Mat4& a, const Mat4& b) { return a.m == b.m; }

    Mat4 transpose() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
    Mat4 conj() const {
        Mat4 r;
        for (size_t i = 0; i < 16; ++i) r.m[i] = conj_of(m[i]);
        return r;
    }
    Mat4 dagger() const { return transpose().conj(); }

    S trace() const {
        S t{};
        for (int i = 0; i < 4; ++i) t += (*this)(i, i);
        return t;
    }
};

/// Column 4-spinor.
template <ScalarMode S>
struct Spinor {
    std::array<S, 4> c{};

    S& operator[](int i) { return c[size_t(i)]; }
    const S& operator[](int i) const { return c[size_t(i)]; }

    friend Spinor operator+(const Spinor& a, const Spinor& b) {
        Spinor r;
        for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend Spinor operator-(const Spinor& a, const Spinor& b) {
        Spinor r;
        for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
        return r;
    }
    friend Spinor operator-(const Spinor& a) {
        Spinor r;
        for (int i = 0; i < 4; ++i) r[i] = -a[i];
        return r;
    }
    friend Spinor operator*(const S& s, const Spinor& a) {
        Spinor r;
        for (int i = 0; i < 4; ++i) r[i] = s * a[i];
        return r;
    }
    friend bool operator==(const Spinor& a, const Spinor& b) { return a.c == b.c; }

    bool is_zero() const {
        for (const S& z : c)
            if (!exactly_zero(z)) return false;
        return true;
    }
};

template <ScalarMode S>
Spinor<S> operator*(const Mat4<S>& a, const Spinor<S>& x) {
    Spinor<S> r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += a(i, j) * x[j];
    return r;
}

/// Complex 3-vector (the reduced form of a self-dual antisymmetric tensor).
template <ScalarMode S>
struct Vec3 {
    std::array<S, 3> a{};

    S& operator[](int i) { return a[size_t(i)]; }
    const S& operator[](int i) const { return a[size_t(i)]; }

    friend Vec3 operator+(const Vec3& x, const Vec3& y) {
        return {{{x[0] + y[0], x[1] + y[1], x[2] + y[2]}}};
    }
    friend Vec3 operator-(const Vec3& x, const Vec3& y) {
        return {{{x[0] - y[0], x[1] - y[1], x[2] - y[2]}}};
    }
    friend Vec3 operator*(const S& s, const Vec3& x) {
        return {{{s * x[0], s * x[1], s * x[2]}}};
    }
    friend bool operator==(const Vec3& x, const Vec3& y) { return x.a == y.a; }

    bool is_zero() const {
        return exactly_zero(a[0]) && exactly_zero(a[1]) && exactly_zero(a[2]);
    }
};

/// Unconjugated bilinear dot product x.y = sum x_i y_i.
template <ScalarMode S>
S dot3(const Vec3<S>& x, const Vec3<S>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
}

template <ScalarMode S>
Vec3<S> cross3(const Vec3<S>& x, const Vec3<S>& y) {
    return {{{x[1] * y[2] - x[2] * y[1],
              x[2] * y[0] - x[0] * y[2],
              x[0] * y[1] - x[1] * y[0]}}};
}

template <ScalarMode S>
Vec3<S> conj_vec3(const Vec3<S>& x) {
    return {{{conj_of(x[0]), conj_of(x[1]), conj_of(x[2])}}};
}

/// Contravariant 4-vector of scalars.
template <ScalarMode S>
using Vec4 = std::array<S, 4>;

template <ScalarMode S>
Spinor<DComplex> to_dcomplex(const Spinor<S>& x) {
    Spinor<DComplex> r;
    for (int i = 0; i < 4; ++i) r[i] = to_dcomplex(x[i]);
    return r;
}

template <ScalarMode S>
Mat4<DComplex> to_dcomplex(const Mat4<S>& a) {
    Mat4<DComplex> r;
    for (size_t i = 0; i < 16; ++i) r.m[i] = to_dcomplex(a.m[i]);
    return r;
}

}  // namespace dirac1c
