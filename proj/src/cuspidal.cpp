#include "siegel/cuspidal.hpp"

#include <algorithm>
#include <cmath>

namespace siegel {

namespace {

constexpr double kIndeterminacyThreshold = 1e-10;

ComplexBall d_of(const ComplexBall& delta) { return (ComplexBall(1.0) - delta) / (ComplexBall(3.0) * delta); }

ComplexBall tau_of(const ComplexBall& delta, bool on_circle)
{
    ComplexBall tau = delta + inverse(delta);
    return on_circle ? real_part_ball(tau) : tau;
}

void check_delta(const ComplexBall& delta)
{
    if (delta.contains_zero()) fail(ErrorKind::InvalidArgument, "delta must be nonzero");
    if (delta.contains(1.0)) fail(ErrorKind::InvalidArgument, "delta must differ from 1");
}

double residual_at(const ComplexBall& delta, const ProjectivePoint& w)
{
    auto img = quad_map_eval(CuspidalParams(delta.center()), w);
    return projective_distance(w, img);
}

}  // namespace

CuspidalParams::CuspidalParams(cplx delta) : delta_(delta)
{
    if (delta == cplx(0.0) || delta == cplx(1.0)) fail(ErrorKind::InvalidArgument, "delta must avoid 0 and 1");
}

ProjectivePoint quad_map_eval(const CuspidalParams& params, const ProjectivePoint& pt)
{
    auto p = ProjectivePoint::make(pt.x, pt.y, pt.z);
    auto f = quad_components<cplx>(params.delta(), params.d(), p.x, p.y, p.z);
    if (std::abs(f[0]) < kIndeterminacyThreshold && std::abs(f[1]) < kIndeterminacyThreshold &&
        std::abs(f[2]) < kIndeterminacyThreshold)
        fail(ErrorKind::Indeterminate, "all image components vanish");
    return ProjectivePoint::make(f[0], f[1], f[2]);
}

cplx curve_restriction(const CuspidalParams& params, cplx t) { return params.delta() * (t + params.d()); }

ProjectivePoint curve_point(cplx t) { return ProjectivePoint::make(t, t * t * t, 1.0); }

IntPolynomial orbit_polynomial(int n)
{
    if (n < 1) fail(ErrorKind::InvalidArgument, "orbit length must be at least 1");
    // 3 delta times the closure identity: delta^(n+2) - 2 delta^(n+1) + 2 delta - 1, which vanishes at 1.
    std::vector<BigInt> c(static_cast<std::size_t>(n) + 3, 0);
    c[n + 2] += 1;
    c[n + 1] -= 2;
    c[1] += 2;
    c[0] -= 1;
    auto q = exact_divide(IntPolynomial(c), IntPolynomial{-1, 1});
    return q->primitive();
}

cplx orbit_closure_residual(cplx delta, int n)
{
    cplx d = (1.0 - delta) / (3.0 * delta);
    return -std::pow(delta, n + 1) * d + (1.0 - std::pow(delta, n)) / 3.0 - d;
}

std::array<ComplexBall, 3> q_tau_coeffs(const ComplexBall& tau)
{
    ComplexBall tm2 = tau - ComplexBall(2.0);
    return {(tau - ComplexBall(1.0)) * tm2, ComplexBall(-9.0) * tm2, ComplexBall(27.0)};
}

ComplexBall r_tau(const ComplexBall& tau, const ComplexBall& x)
{
    ComplexBall tm2 = tau - ComplexBall(2.0), tp1 = tau + ComplexBall(1.0);
    return tm2 / (ComplexBall(3.0) * tp1) * x - tm2 * tm2 / (ComplexBall(27.0) * tp1);
}

ComplexBall s_value(const ComplexBall& tau, const ComplexBall& x)
{
    ComplexBall tp2 = tau + ComplexBall(2.0);
    if (tp2.contains_zero()) fail(ErrorKind::PoleAtTau, "tau = -2");
    ComplexBall inner = ComplexBall(9.0) * (tau - ComplexBall(1.0)) * x -
                        (tau * tau - ComplexBall(4.0) * tau + ComplexBall(6.0));
    return square(inner) / tp2;
}

Jacobian cuspidal_jacobian(const ComplexBall& delta, Chart chart, const ComplexBall& u, const ComplexBall& v)
{
    using D = Dual<ComplexBall>;
    ComplexBall zero(0.0), one(1.0);
    D du(u, one, zero), dv(v, zero, one), unit(one);
    D dd(delta), dk(d_of(delta));
    if (chart == Chart::AffineZ) {
        auto f = quad_components<D>(dd, dk, du, dv, unit);
        D X = f[0] / f[2], Y = f[1] / f[2];
        return {X.dx, X.dy, Y.dx, Y.dy};
    }
    auto f = quad_components<D>(dd, dk, du, unit, dv);
    D X = f[0] / f[1], Z = f[2] / f[1];
    return {X.dx, X.dy, Z.dx, Z.dy};
}

std::array<FixedPointRecord, 2> fixed_points_cuspidal(const ComplexBall& delta, bool delta_on_circle)
{
    if (delta.contains_zero()) fail(ErrorKind::InvalidArgument, "delta must be nonzero");
    ComplexBall tau = tau_of(delta, delta_on_circle);
    if (tau.contains(2.0) || tau.contains(-1.0)) fail(ErrorKind::DegenerateTau, "tau at 2 or -1: " + tau.str());

    auto q = q_tau_coeffs(tau);
    auto roots = quadratic_roots(q[2], q[1], q[0]);
    // Real tau inside (-2, 2) gives a positive discriminant 27(4 - tau^2), so both abscissas are real.
    bool real_roots = delta_on_circle && tau.re_lo() > -2.0 && tau.re_hi() < 2.0;
    std::array<ComplexBall, 2> xs{roots.first, roots.second};
    if (real_roots)
        for (auto& x : xs) x = real_part_ball(x);
    std::sort(xs.begin(), xs.end(), [](const ComplexBall& a, const ComplexBall& b) {
        if (a.center().real() != b.center().real()) return a.center().real() > b.center().real();
        return a.center().imag() > b.center().imag();
    });

    std::array<FixedPointRecord, 2> out;
    for (int i = 0; i < 2; ++i) {
        FixedPointRecord& r = out[i];
        ComplexBall y = r_tau(tau, xs[i]);
        if (real_roots) y = real_part_ball(y);
        r.label = "w" + std::to_string(i + 1);
        r.location = Location::Generic;
        r.chart = Chart::AffineZ;
        r.coord_balls = {xs[i], y, ComplexBall(1.0)};
        r.coords = ProjectivePoint::affine(xs[i].center(), y.center());
        Jacobian j = cuspidal_jacobian(delta, Chart::AffineZ, xs[i], y);
        r.trace = j.trace();
        r.det = j.det();
        r.s = s_value(tau, xs[i]);
        if (real_roots) r.s = real_part_ball(r.s);
        r.s_real = real_roots;
        auto ev = eigenvalues_from(r.trace, r.det);
        r.eigenvalues = {ev.first, ev.second};
        r.residual = residual_at(delta, r.coords);
    }
    return out;
}

std::array<FixedPointRecord, 2> fixed_points_cuspidal(const CuspidalParams& params)
{
    return fixed_points_cuspidal(ComplexBall(params.delta()), false);
}

std::array<FixedPointRecord, 2> curve_fixed_points_cuspidal(const ComplexBall& delta, int n)
{
    check_delta(delta);
    ComplexBall zero(0.0), one(1.0);
    ComplexBall inv = inverse(delta);
    std::array<FixedPointRecord, 2> out;

    FixedPointRecord& cusp = out[0];
    cusp.label = "cusp";
    cusp.location = Location::CurveSingular;
    cusp.chart = Chart::AffineY;
    cusp.coords = ProjectivePoint::make(0.0, 1.0, 0.0);
    cusp.coord_balls = {zero, one, zero};
    Jacobian jc = cuspidal_jacobian(delta, Chart::AffineY, zero, zero);
    cusp.trace = jc.trace();
    cusp.det = jc.det();
    cusp.eigenvalues = {square(inv), pow(inv, 3)};
    if (!cusp.det.contains_zero()) cusp.s = square(cusp.trace) / cusp.det;
    cusp.resonance = std::make_pair(3, -2);
    cusp.residual = residual_at(delta, cusp.coords);

    FixedPointRecord& q = out[1];
    ComplexBall third = one / ComplexBall(3.0);
    q.label = "q";
    q.location = Location::CurveSmooth;
    q.chart = Chart::AffineZ;
    q.coord_balls = {third, pow(third, 3), one};
    q.coords = curve_point(1.0 / 3.0);
    Jacobian jq = cuspidal_jacobian(delta, Chart::AffineZ, q.coord_balls[0], q.coord_balls[1]);
    q.trace = jq.trace();
    q.det = jq.det();
    q.eigenvalues = {delta, pow(inv, 3LL * n)};
    if (!q.det.contains_zero()) q.s = square(q.trace) / q.det;
    q.resonance = std::make_pair(3 * n, 1);
    q.residual = residual_at(delta, q.coords);
    return out;
}

BiPolynomial cleared_q_tau()
{
    // 27 d^2 x^2 - 9 d (d-1)^2 x + (d^2-d+1)(d-1)^2, grouped by powers of d.
    return {IntPolynomial{1}, IntPolynomial{-3, -9}, IntPolynomial{4, 18, 27}, IntPolynomial{-3, -9},
            IntPolynomial{1}};
}

}  // namespace siegel
