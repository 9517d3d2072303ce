#include "siegel/ball.hpp"

#include <cstdio>

namespace siegel {

using detail::kUnit;
using detail::round_down;
using detail::round_up;

ComplexBall ComplexBall::hull(const ComplexBall& o) const
{
    cplx mid = 0.5 * (c_ + o.c_);
    double r = std::max(std::abs(c_ - mid) + r_, std::abs(o.c_ - mid) + o.r_);
    return {mid, round_up(r + 2.0 * kUnit * std::abs(mid))};
}

std::string ComplexBall::str() const
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi) +/- %.3g", c_.real(), c_.imag(), r_);
    return buf;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b)
{
    cplx c = a.center() + b.center();
    return {c, round_up(a.radius() + b.radius() + 2.0 * kUnit * std::abs(c))};
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b)
{
    cplx c = a.center() - b.center();
    return {c, round_up(a.radius() + b.radius() + 2.0 * kUnit * std::abs(c))};
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b)
{
    const cplx& x = a.center();
    const cplx& y = b.center();
    cplx c(x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real());
    double ax = std::abs(x), ay = std::abs(y);
    double r = ax * b.radius() + ay * a.radius() + a.radius() * b.radius() + 3.0 * kUnit * ax * ay;
    return {c, round_up(r)};
}

ComplexBall inverse(const ComplexBall& b)
{
    double m = std::abs(b.center());
    double gap = round_down(round_down(m) - b.radius());
    if (!(gap > 0.0)) fail(ErrorKind::DivisionByZero, "inverse of a ball containing zero: " + b.str());
    double n2 = std::norm(b.center());
    cplx c(b.center().real() / n2, -b.center().imag() / n2);
    double r = b.radius() / (round_down(m) * gap) + 4.0 * kUnit / round_down(m);
    return {c, round_up(r)};
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b)
{
    return a * inverse(b);
}

ComplexBall square(const ComplexBall& b)
{
    return b * b;
}

ComplexBall sqrt(const ComplexBall& b)
{
    double m = std::abs(b.center());
    if (b.radius() >= round_down(m)) {
        return {cplx(0.0, 0.0), round_up(std::sqrt(round_up(m + b.radius())))};
    }
    cplx w = std::sqrt(b.center());
    double mlo = round_down(m);
    double rho = round_up(b.radius() / mlo);
    // |sqrt(c + e) - sqrt(c)| <= sqrt|c| (1 - sqrt(1 - |e|/|c|)) by comparison of Taylor coefficients.
    double shrink = round_down(1.0 + std::sqrt(round_down(1.0 - rho)));
    double r = std::sqrt(round_up(m)) * rho / shrink + 4.0 * kUnit * std::abs(w);
    return {w, round_up(r)};
}

ComplexBall pow(const ComplexBall& b, long long n)
{
    if (n < 0) return inverse(pow(b, -n));
    ComplexBall result(1.0);
    ComplexBall base = b;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

ComplexBall unit_phase(double theta)
{
    cplx c(std::cos(theta), std::sin(theta));
    return {c, 4.0 * kUnit};
}

ComplexBall approx_real(double x, double rel_err)
{
    return {cplx(x, 0.0), round_up(std::abs(x) * rel_err)};
}

BallPair quadratic_roots(const ComplexBall& a, const ComplexBall& b, const ComplexBall& c)
{
    if (a.contains_zero()) fail(ErrorKind::DivisionByZero, "quadratic with vanishing leading coefficient");
    ComplexBall disc = b * b - ComplexBall(4.0) * a * c;
    ComplexBall sq = sqrt(disc);
    // The root pair is symmetric in the sign of the square root, so any branch works.
    cplx plus = b.center() + sq.center();
    cplx minus = b.center() - sq.center();
    ComplexBall q = std::abs(plus) >= std::abs(minus) ? ComplexBall(-0.5) * (b + sq) : ComplexBall(-0.5) * (b - sq);
    if (!q.contains_zero()) {
        return {q / a, c / q};
    }
    ComplexBall two_a = ComplexBall(2.0) * a;
    return {(-b + sq) / two_a, (-b - sq) / two_a};
}

ComplexBall real_part_ball(const ComplexBall& b)
{
    double im = std::abs(b.center().imag());
    double r = b.radius();
    if (im > r) fail(ErrorKind::InvalidArgument, "ball does not meet the real axis: " + b.str());
    double half = std::sqrt(round_up((r - im) * (r + im)));
    return {cplx(b.center().real(), 0.0), round_up(half + 2.0 * kUnit * std::abs(b.center().real()))};
}

const char* to_string(IntervalVerdict v)
{
    switch (v) {
    case IntervalVerdict::CertifiedIn: return "CertifiedIn";
    case IntervalVerdict::CertifiedOut: return "CertifiedOut";
    case IntervalVerdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

IntervalVerdict ball_in_interval(const ComplexBall& x, double lo, double hi)
{
    if (lo > hi) fail(ErrorKind::InvalidArgument, "empty interval");
    double re = x.center().real();
    double im = x.center().imag();
    double dx = 0.0;
    if (re < lo) dx = lo - re;
    else if (re > hi) dx = re - hi;
    double dist = round_down(std::hypot(round_down(dx), im));
    if (dist > x.radius()) return IntervalVerdict::CertifiedOut;
    if (x.re_lo() >= lo && x.re_hi() <= hi && std::abs(im) <= x.radius()) return IntervalVerdict::CertifiedIn;
    return IntervalVerdict::Unknown;
}

}  // namespace siegel
