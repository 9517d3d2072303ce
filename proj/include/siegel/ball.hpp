#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "siegel/error.hpp"

namespace siegel {

using cplx = std::complex<double>;

namespace detail {

inline constexpr double kUnit = 0x1p-53;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Nudge a nonnegative bound upward to absorb the rounding of its own evaluation.
inline double round_up(double x)
{
    if (!(x >= 0.0)) return x != x ? kInf : 0.0;
    return std::nextafter(x * (1.0 + 4.0 * kUnit), kInf);
}

inline double round_down(double x)
{
    if (x <= 0.0) return x;
    return std::nextafter(x * (1.0 - 4.0 * kUnit), 0.0);
}

// Outward-rounded x - r and x + r for arbitrary sign of x.
inline double round_down_signed(double x, double r)
{
    double v = x - r;
    return std::nextafter(v - 4.0 * kUnit * (std::abs(x) + r), -kInf);
}

inline double round_up_signed(double x, double r)
{
    double v = x + r;
    return std::nextafter(v + 4.0 * kUnit * (std::abs(x) + r), kInf);
}

}  // namespace detail

// Disk {z : |z - center| <= radius}. All operations enclose the exact image.
class ComplexBall {
public:
    ComplexBall() = default;
    ComplexBall(double re) : c_(re, 0.0) {}
    ComplexBall(cplx c) : c_(c) {}
    ComplexBall(cplx c, double r) : c_(c), r_(r)
    {
        if (!(r >= 0.0) || std::isinf(r)) fail(ErrorKind::InvalidArgument, "ball radius must be finite and nonnegative");
    }

    const cplx& center() const { return c_; }
    double radius() const { return r_; }

    double mag_upper() const { return detail::round_up(std::abs(c_) + r_); }
    double mag_lower() const
    {
        double v = detail::round_down(std::abs(c_)) - r_;
        return v > 0.0 ? detail::round_down(v) : 0.0;
    }

    double re_lo() const { return detail::round_down_signed(c_.real(), r_); }
    double re_hi() const { return detail::round_up_signed(c_.real(), r_); }
    double im_lo() const { return detail::round_down_signed(c_.imag(), r_); }
    double im_hi() const { return detail::round_up_signed(c_.imag(), r_); }

    bool contains(cplx z) const { return std::abs(z - c_) <= detail::round_up(r_); }
    bool contains_zero() const { return !(mag_lower() > 0.0); }
    bool overlaps(const ComplexBall& o) const
    {
        return std::abs(c_ - o.c_) <= detail::round_up(r_ + o.r_) * (1.0 + 8.0 * detail::kUnit);
    }
    bool inside(const ComplexBall& o) const
    {
        return detail::round_up(std::abs(c_ - o.c_) + r_) < o.r_;
    }

    ComplexBall conj() const { return {std::conj(c_), r_}; }
    ComplexBall operator-() const { return {-c_, r_}; }

    // Smallest-effort union enclosure.
    ComplexBall hull(const ComplexBall& o) const;

    std::string str() const;

private:
    cplx c_{0.0, 0.0};
    double r_ = 0.0;
};

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);

inline ComplexBall& operator+=(ComplexBall& a, const ComplexBall& b) { return a = a + b; }
inline ComplexBall& operator-=(ComplexBall& a, const ComplexBall& b) { return a = a - b; }
inline ComplexBall& operator*=(ComplexBall& a, const ComplexBall& b) { return a = a * b; }
inline ComplexBall& operator/=(ComplexBall& a, const ComplexBall& b) { return a = a / b; }

ComplexBall inverse(const ComplexBall& b);
ComplexBall sqrt(const ComplexBall& b);
ComplexBall pow(const ComplexBall& b, long long n);
ComplexBall square(const ComplexBall& b);

// e^{i theta} for an exact double theta.
ComplexBall unit_phase(double theta);

// Ball around a real number known only through a double approximation with a relative error.
ComplexBall approx_real(double x, double rel_err);

// Both roots of a z^2 + b z + c = 0; requires a bounded away from zero.
struct BallPair {
    ComplexBall first;
    ComplexBall second;
};
BallPair quadratic_roots(const ComplexBall& a, const ComplexBall& b, const ComplexBall& c);

// Replace a ball by the smallest ball around its real-axis intersection. Valid only when
// the enclosed quantity is known to be real.
ComplexBall real_part_ball(const ComplexBall& b);

enum class IntervalVerdict { CertifiedIn, CertifiedOut, Unknown };
const char* to_string(IntervalVerdict v);

// Membership of the enclosed value in the real segment [lo, hi].
IntervalVerdict ball_in_interval(const ComplexBall& x, double lo, double hi);

}  // namespace siegel
