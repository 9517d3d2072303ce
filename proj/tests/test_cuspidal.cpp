#include <doctest.h>

#include <cmath>
#include <random>

#include "siegel/cuspidal.hpp"
#include "siegel/roots.hpp"

using namespace siegel;

namespace {

const IntPolynomial kS{1, -2, 1, -2, 1, -2, 1, -2, 1};
const cplx kDelta0(0.6098, 0.7925);

std::vector<ComplexBall> s_roots() { return isolate_roots(ComplexPolynomial(kS)); }

ComplexBall circle_root_near(cplx target)
{
    for (const auto& b : s_roots())
        if (std::abs(b.center() - target) < 1e-3) return b;
    FAIL("no root near target");
    return {};
}

// Independent term-by-term expansion of the three components.
std::array<cplx, 3> oracle_map(cplx delta, cplx x, cplx y, cplx z)
{
    cplx d = (1.0 - delta) / (3.0 * delta);
    cplx fx = delta * x * y - 2.0 * delta * d * y * z + 2.0 * delta * std::pow(d, 3) * x * z -
              delta * std::pow(d, 4) * z * z;
    cplx fy = std::pow(delta, 3) * y * y - 3.0 * std::pow(delta, 3) * d * d * x * y +
              3.0 * std::pow(delta, 3) * std::pow(d, 4) * x * x - std::pow(delta, 3) * std::pow(d, 6) * z * z;
    cplx fz = y * z - 3.0 * d * x * x + 3.0 * d * d * x * z - std::pow(d, 3) * z * z;
    return {fx, fy, fz};
}

cplx random_unit(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.05, 3.1);
    double th = u(rng);
    return std::polar(1.0, th);
}

}  // namespace

TEST_CASE("quad_map_eval examples")
{
    cplx delta(0.3, 0.7);
    CuspidalParams p(delta);
    cplx t = delta * p.d();
    auto img = quad_map_eval(p, ProjectivePoint::make(0.0, 0.0, 1.0));
    CHECK(projective_distance(img, curve_point(t)) < 1e-12);

    CuspidalParams p0(kDelta0);
    auto img1 = quad_map_eval(p0, curve_point(1.0));
    CHECK(projective_distance(img1, curve_point(kDelta0 * (1.0 + p0.d()))) < 1e-12);

    CuspidalParams pi(cplx(0.0, 1.0));
    auto o = oracle_map(cplx(0.0, 1.0), 1.0, 1.0, 1.0);
    auto img2 = quad_map_eval(pi, ProjectivePoint::make(1.0, 1.0, 1.0));
    CHECK(projective_distance(img2, ProjectivePoint::make(o[0], o[1], o[2])) < 1e-13);

    CHECK_THROWS_AS(CuspidalParams(0.0), Error);
    CHECK_THROWS_AS(CuspidalParams(1.0), Error);
}

TEST_CASE("indeterminacy point is reported")
{
    CuspidalParams p(kDelta0);
    try {
        quad_map_eval(p, curve_point(p.d()));
        FAIL("expected Indeterminate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Indeterminate);
    }
}

TEST_CASE("curve restriction and orbit closure")
{
    CuspidalParams p(kDelta0);
    CHECK(std::abs(curve_restriction(p, 0.0) - kDelta0 * p.d()) < 1e-15);
    CHECK(std::abs(curve_restriction(p, p.d()) - 2.0 * kDelta0 * p.d()) < 1e-15);

    for (const auto& b : s_roots()) {
        CuspidalParams q(b.center());
        cplx t = -q.delta() * q.d();
        for (int k = 0; k < 8; ++k) t = curve_restriction(q, t);
        CHECK(std::abs(t - q.d()) < 1e-10);
    }
}

TEST_CASE("orbit_polynomial")
{
    IntPolynomial p8 = orbit_polynomial(8);
    CHECK(p8 == IntPolynomial{1, 1} * kS);
    auto split = strip_cyclotomic(p8);
    CHECK(split.salem_part == kS);
    REQUIRE(split.orders.size() == 1);
    CHECK(split.orders[0] == 2);

    CHECK(orbit_polynomial(1) == IntPolynomial{1, -1, 1});

    IntPolynomial p2 = orbit_polynomial(2);
    CHECK(p2.degree() == 3);
    CHECK(p2 == IntPolynomial{1, 1} * IntPolynomial{-1, 1} * IntPolynomial{-1, 1});
    for (const auto& b : isolate_roots(ComplexPolynomial(squarefree_part(p2))))
        CHECK(std::abs(orbit_closure_residual(b.center(), 2)) < 1e-10);

    CHECK_THROWS_AS(orbit_polynomial(0), Error);
}

TEST_CASE("fixed points at tau0 and tau*")
{
    ComplexBall d0 = circle_root_near(kDelta0);
    auto w = fixed_points_cuspidal(d0, true);
    CHECK(w[0].s_real);
    CHECK(ball_in_interval(w[0].coord_balls[0], 0.022, 0.023) == IntervalVerdict::CertifiedIn);
    CHECK(ball_in_interval(w[1].coord_balls[0], -0.283, -0.282) == IntervalVerdict::CertifiedIn);
    for (const auto& r : w) {
        CHECK(ball_in_interval(r.s, 0.0, 4.0) == IntervalVerdict::CertifiedIn);
        CHECK(r.residual < 1e-9);
        // s equals Tr^2 / Det.
        ComplexBall ratio = square(r.trace) / r.det;
        CHECK(std::abs(ratio.center() - r.s.center()) < 1e-9);
    }

    ComplexBall ds = circle_root_near(cplx(-0.7478, 0.6640));
    auto ws = fixed_points_cuspidal(ds, true);
    bool found = false;
    for (const auto& r : ws)
        if (ball_in_interval(r.coord_balls[0], -0.711, -0.710) == IntervalVerdict::CertifiedIn) {
            found = true;
            CHECK(ball_in_interval(r.s, 0.0, 4.0) == IntervalVerdict::CertifiedOut);
        }
    CHECK(found);
}

TEST_CASE("degenerate tau")
{
    auto expect_degenerate = [](const ComplexBall& delta) {
        try {
            fixed_points_cuspidal(delta);
            FAIL("expected DegenerateTau");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DegenerateTau);
        }
    };
    expect_degenerate(ComplexBall(1.0));
    expect_degenerate(ComplexBall(std::polar(1.0, 2.0 * 3.141592653589793 / 3.0), 1e-15));
}

TEST_CASE("s_value bounds")
{
    auto ball = [](double v) { return approx_real(v, 1e-16); };
    CHECK(s_value(ball(1.219), ball(0.022)).re_hi() < 2.05);
    CHECK(s_value(ball(1.220), ball(-0.283)).re_hi() < 3.12);
    CHECK(s_value(ball(-1.495), ball(-0.710)).re_lo() > 5.91);
    try {
        s_value(ComplexBall(-2.0), ComplexBall(0.1));
        FAIL("expected PoleAtTau");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleAtTau);
    }
}

TEST_CASE("equivariance on the curve")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        cplx delta = std::polar(0.5 + std::abs(u(rng)), u(rng) * 2.0);
        CuspidalParams p(delta);
        for (int j = 0; j < 200; ++j) {
            cplx t(u(rng), u(rng));
            if (std::abs(t - p.d()) < 1e-3) continue;
            auto img = quad_map_eval(p, curve_point(t));
            worst = std::max(worst, projective_distance(img, curve_point(curve_restriction(p, t))));
        }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("fixed point residual and determinant")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.3, 2.5);
    for (int i = 0; i < 40; ++i) {
        cplx delta = (i % 2 == 0) ? random_unit(rng) : std::polar(u(rng), u(rng));
        auto w = fixed_points_cuspidal(ComplexBall(delta));
        for (const auto& r : w) {
            CHECK(r.residual < 1e-9);
            CHECK(std::abs(r.det.center() - delta) < 1e-8);
            CHECK(r.det.contains(delta));
        }
    }
}

TEST_CASE("curve fixed points")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        cplx delta = random_unit(rng) * 1.1;
        CuspidalParams p(delta);
        // Central differences in the chart y = 1 around the cusp.
        double h = 1e-5;
        auto chart = [&](cplx u, cplx v) {
            auto f = oracle_map(delta, u, 1.0, v);
            return std::array<cplx, 2>{f[0] / f[1], f[2] / f[1]};
        };
        auto fu = chart(h, 0.0), bu = chart(-h, 0.0), fv = chart(0.0, h), bv = chart(0.0, -h);
        cplx a = (fu[0] - bu[0]) / (2 * h), b = (fv[0] - bv[0]) / (2 * h);
        cplx c = (fu[1] - bu[1]) / (2 * h), d = (fv[1] - bv[1]) / (2 * h);
        cplx tr = a + d, det = a * d - b * c;
        cplx e1 = 1.0 / (delta * delta), e2 = 1.0 / (delta * delta * delta);
        CHECK(std::abs(tr - (e1 + e2)) < 1e-6);
        CHECK(std::abs(det - e1 * e2) < 1e-6);

        auto cf = curve_fixed_points_cuspidal(ComplexBall(delta), 8);
        CHECK(cf[0].trace.contains(e1 + e2));
        CHECK(cf[0].det.contains(e1 * e2));
        CHECK(cf[0].residual < 1e-12);
        CHECK(cf[1].residual < 1e-12);
    }

    for (const auto& b : s_roots()) {
        if (std::abs(std::abs(b.center()) - 1.0) > 1e-9) continue;
        auto cf = curve_fixed_points_cuspidal(b, 8);
        cplx dl = b.center();
        cplx ev2 = std::pow(dl, -24);
        CHECK(std::abs(cf[1].trace.center() - (dl + ev2)) < 1e-8);
        CHECK(std::abs(cf[1].det.center() - dl * ev2) < 1e-8);
        REQUIRE(cf[1].resonance.has_value());
        CHECK(cf[1].resonance->first == 24);
    }
}

TEST_CASE("cleared Q_tau and its resultant against S")
{
    BiPolynomial q = cleared_q_tau();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        cplx delta(u(rng), u(rng)), x(u(rng), u(rng));
        cplx tau = delta + 1.0 / delta;
        cplx direct = delta * delta * (27.0 * x * x - 9.0 * (tau - 2.0) * x + (tau - 1.0) * (tau - 2.0));
        cplx lifted = 0.0;
        for (std::size_t k = 0; k < q.size(); ++k) lifted += q[k].eval_approx(x) * std::pow(delta, static_cast<int>(k));
        CHECK(std::abs(direct - lifted) < 1e-10);
    }

    IntPolynomial r = resultant(kS, q);
    CHECK(r.degree() == 16);
    IntPolynomial sf = squarefree_part(r);
    CHECK(sf.degree() == 8);
    for (const auto& b : s_roots()) {
        auto w = fixed_points_cuspidal(b);
        for (const auto& fp : w) {
            cplx v = sf.eval_approx(fp.coord_balls[0].center());
            CHECK(std::abs(v) < 1e-6 * std::abs(sf.lead().convert_to<double>()));
        }
    }
}
