#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "siegel/ball.hpp"

namespace siegel {

// Homogeneous point stored with its largest-modulus coordinate scaled to 1.
struct ProjectivePoint {
    cplx x{0.0, 0.0}, y{0.0, 0.0}, z{1.0, 0.0};

    static ProjectivePoint make(cplx x, cplx y, cplx z);
    static ProjectivePoint affine(cplx x, cplx y) { return make(x, y, 1.0); }

    std::array<cplx, 3> coords() const { return {x, y, z}; }
};

// Distance between two points after scaling both by the dominant coordinate of the first.
double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b);

// First-order forward-mode value in two variables.
template <class T>
struct Dual {
    T v, dx, dy;

    Dual() : v(0.0), dx(0.0), dy(0.0) {}
    Dual(const T& value) : v(value), dx(0.0), dy(0.0) {}
    Dual(const T& value, const T& ddx, const T& ddy) : v(value), dx(ddx), dy(ddy) {}
};

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.dx + b.dx, a.dy + b.dy}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.dx - b.dx, a.dy - b.dy}; }
template <class T>
Dual<T> operator-(const Dual<T>& a) { return {T(0.0) - a.v, T(0.0) - a.dx, T(0.0) - a.dy}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy}; }
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b)
{
    T inv = T(1.0) / b.v;
    T q = a.v * inv;
    return {q, (a.dx - q * b.dx) * inv, (a.dy - q * b.dy) * inv};
}

struct Jacobian {
    ComplexBall a, b, c, d;  // [[a, b], [c, d]]

    ComplexBall trace() const { return a + d; }
    ComplexBall det() const { return a * d - b * c; }
};

// Roots of z^2 - tr z + det.
std::pair<ComplexBall, ComplexBall> eigenvalues_from(const ComplexBall& trace, const ComplexBall& det);

enum class Location { CurveSingular, CurveSmooth, AffineDiagonal, Infinity, Generic };
const char* to_string(Location loc);

enum class Chart { AffineZ, AffineY };

struct FixedPointRecord {
    std::string label;
    Location location = Location::Generic;
    ProjectivePoint coords;
    std::array<ComplexBall, 3> coord_balls;  // homogeneous, one coordinate exactly 1
    Chart chart = Chart::AffineZ;
    ComplexBall trace, det, s;
    std::array<ComplexBall, 2> eigenvalues;
    bool s_real = false;                          // s proven real by structure
    std::optional<std::pair<int, int>> resonance;  // (k, l) with mu^k nu^l = 1 by closed form
    double residual = 0.0;                         // |f(w) - w| at the centers
};

}  // namespace siegel
