#include <doctest.h>

#include <cmath>
#include <random>

#include "siegel/roots.hpp"
#include "siegel/three_lines.hpp"

using namespace siegel;

namespace {

constexpr double kPi = 3.141592653589793;

// Direct evaluation of the affine map from its rational expression, with the x/y term as a quotient.
std::pair<cplx, cplx> oracle_map(cplx delta, const std::vector<cplx>& a, const std::vector<cplx>& b, cplx x, cplx y)
{
    cplx g1 = 1.0, g2 = 1.0;
    for (cplx v : a) g1 *= 1.0 - y / v;
    for (cplx v : b) g2 *= 1.0 - y / v;
    return {y, g1 * (x + delta * y) / (delta * ((g2 - g1) * x / y - delta * g1))};
}

// chi in its original form, with the (delta^3 - 1) factor kept.
long double chi_oracle(long double t, const OrbitData& o)
{
    long double s = 0.0L;
    for (int k : o.n) s += t * t * (std::pow(t, 3 * k) - 1) / ((t * t * t - 1) * (std::pow(t, 3 * k + 1) + 1));
    for (int k : o.m) s += t * (std::pow(t, 3 * k) - 1) / ((t * t * t - 1) * (std::pow(t, 3 * k - 1) + 1));
    return s;
}

long double chi_bisect(const OrbitData& o)
{
    long double lo = 1.0L + 1e-9L, hi = 2.0L;
    while (chi_oracle(hi, o) > 1.0L) hi *= 2.0L;
    for (int i = 0; i < 200; ++i) {
        long double mid = (lo + hi) / 2;
        (chi_oracle(mid, o) > 1.0L ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

ComplexBall real_salem_root(const IntPolynomial& s)
{
    auto check = is_salem(s);
    REQUIRE(check.accepted);
    return check.certificate.lambda;
}

ThreeLinesParams random_params(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<cplx> a, b;
    for (int i = 0; i < n; ++i) {
        a.emplace_back(u(rng) + 2.5, u(rng));
        b.emplace_back(u(rng) - 2.5, u(rng));
    }
    return {std::polar(0.7 + 0.2 * std::abs(u(rng)), u(rng)), a, b};
}

}  // namespace

TEST_CASE("tl_map_eval examples")
{
    ThreeLinesParams p(cplx(0.3, 0.8), {cplx(2.0)}, {cplx(-1.5)});
    cplx delta = p.delta().center();
    for (cplx y : {cplx(0.5), cplx(-1.2, 0.4)}) {
        auto img = tl_map_eval(p, 0.0, y);
        CHECK(std::abs(img.first - y) < 1e-14);
        CHECK(std::abs(img.second + y / delta) < 1e-14);
    }
    auto zero = tl_map_eval(p, 0.0, 0.0);
    CHECK(std::abs(zero.first) + std::abs(zero.second) == 0.0);

    ThreeLinesParams q(cplx(0.0, 1.0), {cplx(2.0)}, {cplx(1.0)});
    auto got = tl_map_eval(q, 1.0, 1.0);
    auto want = oracle_map(cplx(0.0, 1.0), {2.0}, {1.0}, 1.0, 1.0);
    CHECK(std::abs(got.first - want.first) < 1e-14);
    CHECK(std::abs(got.second - want.second) < 1e-14);

    auto proj = tl_map_eval(q, ProjectivePoint::make(1.0, 1.0, 1.0));
    CHECK(projective_distance(proj, ProjectivePoint::make(want.first, want.second, 1.0)) < 1e-14);
}

TEST_CASE("affine and projective evaluations agree")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 1; n <= 3; ++n) {
        auto p = random_params(rng, n);
        for (int i = 0; i < 50; ++i) {
            cplx x(u(rng), u(rng)), y(u(rng), u(rng));
            auto want = oracle_map(p.delta().center(), p.a_centers(), p.b_centers(), x, y);
            auto got = tl_map_eval(p, ProjectivePoint::make(x, y, 1.0));
            CHECK(projective_distance(got, ProjectivePoint::make(want.first, want.second, 1.0)) < 1e-9);
        }
    }
}

TEST_CASE("indeterminacy points")
{
    ThreeLinesParams p(cplx(0.0, 1.0), {cplx(2.0)}, {cplx(1.0)});
    auto s = indeterminacy(p);
    REQUIRE(s.forward.size() == 3);
    CHECK(projective_distance(s.forward[0], ProjectivePoint::make(0.0, 2.0, 1.0)) == 0.0);
    CHECK(projective_distance(s.backward[0], ProjectivePoint::make(2.0, 0.0, 1.0)) == 0.0);
    CHECK(projective_distance(s.forward[1], ProjectivePoint::make(cplx(0.0, -1.0), 1.0, 1.0)) < 1e-15);
    CHECK(projective_distance(s.backward[1], ProjectivePoint::make(1.0, cplx(0.0, 1.0), 1.0)) < 1e-15);
    CHECK(projective_distance(s.forward[2], ProjectivePoint::make(1.0, 0.0, 0.0)) == 0.0);
    CHECK(projective_distance(s.backward[2], ProjectivePoint::make(0.0, 1.0, 0.0)) == 0.0);

    std::mt19937_64 rng(2);
    auto r = random_params(rng, 2);
    for (const auto& pt : indeterminacy(r).forward) {
        try {
            tl_map_eval(r, pt);
            FAIL("expected Indeterminate");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Indeterminate);
        }
    }
}

TEST_CASE("line at infinity: two steps from [0:1:0] to [1:0:0]")
{
    std::mt19937_64 rng(3);
    auto p = random_params(rng, 2);
    cplx delta = p.delta().center();
    auto first = tl_map_eval(p, ProjectivePoint::make(0.0, 1.0, 0.0));
    CHECK(projective_distance(first, ProjectivePoint::make(-delta, 1.0, 0.0)) < 1e-14);
    auto second = tl_map_eval(p, first);
    CHECK(projective_distance(second, ProjectivePoint::make(1.0, 0.0, 0.0)) < 1e-14);
}

TEST_CASE("h_iterate")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> kk(0, 6);
    auto p = random_params(rng, 1);
    CHECK(h_iterate(p, 0, cplx(0.3, 0.1)) == cplx(0.3, 0.1));
    for (int i = 0; i < 200; ++i) {
        cplx x(u(rng), u(rng));
        int k = kk(rng), l = kk(rng);
        cplx lhs = h_iterate(p, k + l, x), rhs = h_iterate(p, k, h_iterate(p, l, x));
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
    }
    for (int trial = 0; trial < 5; ++trial) {
        auto q = random_params(rng, 1);
        cplx y(u(rng), u(rng));
        ProjectivePoint cur = ProjectivePoint::make(0.0, y, 1.0);
        for (int k = 1; k <= 4; ++k) {
            for (int s = 0; s < 3; ++s) cur = tl_map_eval(q, cur);
            cplx h = h_iterate(q, k, y);
            CHECK(projective_distance(cur, ProjectivePoint::make(0.0, h, 1.0)) < 1e-8);
        }
    }
}

TEST_CASE("ab_from_delta")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 20; ++i) {
        cplx delta(u(rng), u(rng));
        ComplexBall a1 = a_coefficient(ComplexBall(delta), 1), b1 = b_coefficient(ComplexBall(delta), 1);
        CHECK(std::abs(a1.center() + (delta * delta + 1.0) / delta) < 1e-10 * std::abs(a1.center()));
        CHECK(std::abs(b1.center() - (std::pow(delta, 4) + 1.0) / (delta * delta)) < 1e-10 * std::abs(b1.center()));
        CHECK(a1.contains(-(delta * delta + 1.0) / delta));
    }

    double nu = std::sqrt(2.0) - 1.0;
    cplx delta = std::polar(1.0, 2 * kPi * nu);
    for (int k = 1; k <= 12; ++k) {
        ComplexBall a = a_coefficient(ComplexBall(delta), k);
        double trig = -2.0 * std::sin(3 * kPi * nu) * (std::cos(kPi * nu) / std::tan(3 * k * kPi * nu) + std::sin(kPi * nu));
        CHECK(std::abs(a.center().imag()) < 1e-9);
        CHECK(std::abs(a.center().real() - trig) < 1e-9 * std::max(1.0, std::abs(trig)));
    }

    OrbitData o{{2, 3}, {1, 4}};
    cplx dl(0.4, 0.9);
    auto p = ab_from_delta(ComplexBall(dl), o);
    CHECK(std::abs(p.c().center() - chi(ComplexBall(dl), o).center()) < 1e-10);

    try {
        ab_from_delta(ComplexBall(1.0), OrbitData{{2}, {1}});
        FAIL("expected PoleInFormula");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleInFormula);
    }
}

TEST_CASE("chi limits and roots")
{
    OrbitData o{{2}, {1}};
    CHECK(std::abs(chi(ComplexBall(1.0), o).center() - 1.5) < 1e-14);
    CHECK(std::abs(chi(ComplexBall(1.0 + 1e-7), o).center() - 1.5) < 1e-5);
    CHECK(std::abs(chi(ComplexBall(1e6), o).center()) < 1e-5);

    for (const OrbitData& od : {OrbitData{{2}, {1}}, OrbitData{{1}, {2}}, OrbitData{{1, 2}, {1, 1}}}) {
        IntPolynomial s = salem_from_orbit(od);
        for (const auto& r : isolate_roots(ComplexPolynomial(s)))
            CHECK(std::abs(chi(r, od).center() - 1.0) < 1e-9);
    }
}

TEST_CASE("salem_from_orbit against chi bisection")
{
    for (const OrbitData& od : {OrbitData{{2}, {1}}, OrbitData{{1}, {2}}, OrbitData{{1, 2}, {1, 1}}}) {
        ComplexBall lambda = real_salem_root(salem_from_orbit(od));
        CHECK(std::abs(lambda.center().real() - static_cast<double>(chi_bisect(od))) < 1e-9);
    }
    // lambda is monotone in m1 with shrinking steps, i.e. converges to a finite limit.
    double prev = 0.0, prev_step = 1e9;
    for (int m1 = 2; m1 <= 10; ++m1) {
        double lam = static_cast<double>(chi_bisect(OrbitData{{m1}, {1}}));
        ComplexBall l2 = real_salem_root(salem_from_orbit(OrbitData{{m1}, {1}}));
        CHECK(std::abs(l2.center().real() - lam) < 1e-9);
        if (m1 > 2) {
            CHECK(lam > prev);
            CHECK(lam - prev < prev_step);
            prev_step = lam - prev;
        }
        prev = lam;
    }
    CHECK_THROWS_AS(salem_from_orbit(OrbitData{{1}, {1}}), Error);
}

TEST_CASE("orbit_verify")
{
    OrbitData o{{2}, {1}};
    ComplexBall lambda = real_salem_root(salem_from_orbit(o));
    auto p = ab_from_delta(real_part_ball(lambda), o, true);
    auto rep = orbit_verify(p, o);
    CHECK(rep.ok);
    CHECK(rep.max_residual < 1e-8);
    REQUIRE(rep.orbits.size() == 3);
    CHECK(rep.orbits[0].length == 4);
    CHECK(rep.orbits[1].length == 3);

    // f^4(a, 0) = (0, a) directly in the affine chart.
    cplx a = p.a_centers()[0];
    std::pair<cplx, cplx> cur{a, 0.0};
    for (int k = 0; k < 4; ++k) cur = tl_map_eval(p, cur.first, cur.second);
    CHECK(std::abs(cur.first) < 1e-8);
    CHECK(std::abs(cur.second - a) < 1e-8);

    for (const OrbitData& od : {OrbitData{{1, 2}, {1, 1}}, OrbitData{{1}, {2}}, OrbitData{{3}, {2}}}) {
        for (const auto& r : isolate_roots(ComplexPolynomial(salem_from_orbit(od)))) {
            auto q = ab_from_delta(r, od);
            auto rr = orbit_verify(q, od);
            CHECK(rr.ok);
        }
    }

    std::mt19937_64 rng(6);
    auto bad = random_params(rng, 1);
    CHECK_FALSE(orbit_verify(bad, o).ok);
}

TEST_CASE("fixed points")
{
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            auto p = random_params(rng, n);
            auto fp = fixed_points_tl(p);
            REQUIRE(fp.size() == static_cast<std::size_t>(n + 3));
            CHECK(fp[0].label == "w0");
            for (const auto& r : fp) CHECK(r.residual < 1e-8);
            for (std::size_t l = 1; l < fp.size(); ++l) {
                CHECK(std::abs(fp[l].det.center() - p.delta().center()) < 1e-8);
                CHECK(std::abs(fp[l].trace.center() - (fp[l].eigenvalues[0].center() + fp[l].eigenvalues[1].center())) < 1e-8);
            }
        }
    }

    ThreeLinesParams p1(cplx(0.2, 0.9), {cplx(1.7)}, {cplx(-0.6)});
    cplx delta = p1.delta().center(), d = (1.0 + delta) * (1.0 + delta) / delta;
    cplx x1 = (d - 1.0) / (d / 1.7 - 1.0 / -0.6);
    auto fp = fixed_points_tl(p1);
    CHECK(std::abs(fp[1].coord_balls[0].center() - x1) < 1e-12);

    // Equal parameters: closed-form roots.
    const int n = 3;
    double a0 = 2.0, b0 = 1.3;
    double theta = 1.1;
    cplx dl = std::polar(1.0, theta);
    ThreeLinesParams pe(dl, std::vector<cplx>(n, a0 + 0.0), std::vector<cplx>(n, b0 + 0.0));
    auto fe = fixed_points_tl(pe);
    cplx dd = (1.0 + dl) * (1.0 + dl) / dl;
    double lam = std::pow(dd.real(), 1.0 / n);
    for (int l = 1; l <= n; ++l) {
        cplx eps = std::polar(1.0, 2 * kPi * l / n);
        cplx want = a0 * b0 * (1.0 - lam * eps) / (a0 - b0 * lam * eps);
        bool hit = false;
        for (int k = 1; k <= n; ++k)
            if (std::abs(fe[k].coord_balls[0].center() - want) < 1e-10) hit = true;
        CHECK(hit);
    }
}

TEST_CASE("degenerate spectrum")
{
    // d prod(1 - x/a) - prod(1 - x/b) with a = b and d = 1 vanishes identically.
    cplx delta = std::polar(1.0, std::acos(-0.5));
    try {
        fixed_points_tl(ThreeLinesParams(delta, {cplx(2.0)}, {cplx(2.0)}));
        FAIL("expected DegenerateSpectrum");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateSpectrum);
    }
}

TEST_CASE("trace formula")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_params(rng, 1 + trial % 3);
        cplx delta = p.delta().center();
        auto fp = fixed_points_tl(p);
        for (std::size_t l = 1; l <= static_cast<std::size_t>(p.size()); ++l) {
            cplx x = fp[l].coord_balls[0].center();
            double h = 1e-5;
            auto f2 = [&](cplx u, cplx v) { return oracle_map(delta, p.a_centers(), p.b_centers(), u, v).second; };
            cplx fx = (f2(x + h, x) - f2(x - h, x)) / (2 * h), fy = (f2(x, x + h) - f2(x, x - h)) / (2 * h);
            CHECK(std::abs(fp[l].trace.center() - fy) < 1e-6 * std::max(1.0, std::abs(fy)));
            // Det of [[0, 1], [fx, fy]] is -fx.
            CHECK(std::abs(-fx - delta) < 1e-6);
        }
        CHECK(std::abs(trace_affine(p, ComplexBall(0.0)).center() - (delta + 1.0)) < 1e-14);
    }
}

TEST_CASE("infinity criterion")
{
    cplx delta = std::polar(1.0, 0.7);
    auto boundary = infinity_criterion(ComplexBall(delta), ComplexBall(4.0));
    CHECK(boundary.consistent());
    CHECK(std::abs(boundary.t[0].center() - 1.0) < 1e-6);
    cplx d = (1.0 + delta) * (1.0 + delta) / delta;
    CHECK(std::abs(boundary.s[0].center() - d) < 1e-6);

    auto out = infinity_criterion(ComplexBall(cplx(0.0, 1.0)), ComplexBall(5.0));
    CHECK(out.ratio_verdict == IntervalVerdict::CertifiedOut);
    CHECK(out.eigen_verdict == IntervalVerdict::CertifiedOut);
    // Explicit t from the quadratic.
    double t = (3.0 + std::sqrt(5.0)) / 2.0;
    cplx w = cplx(0.0, 1.0) * t * t;
    cplx s = 2.0 + w + 1.0 / w;
    CHECK((std::abs(out.s[0].center() - s) < 1e-12 || std::abs(out.s[1].center() - s) < 1e-12));

    try {
        infinity_criterion(ComplexBall(1.2), ComplexBall(2.0));
        FAIL("expected OffUnitCircle");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OffUnitCircle);
    }

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> th(0.0, 2 * kPi), r(-2.0, 8.0);
    for (int i = 0; i < 200; ++i) {
        auto c = infinity_criterion(unit_phase(th(rng)), ComplexBall(r(rng)));
        CHECK(c.consistent());
    }
}

TEST_CASE("line cycle and w0 eigenvalues")
{
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        auto p = random_params(rng, 1 + trial % 3);
        cplx delta = p.delta().center();
        for (int i = 0; i < 20; ++i) {
            cplx t(u(rng), u(rng));
            auto l1 = tl_map_eval(p, 0.0, t);
            worst = std::max(worst, std::abs(l1.first + delta * l1.second));
            auto l2 = tl_map_eval(p, -delta * t, t);
            worst = std::max(worst, std::abs(l2.second));
            auto l3 = tl_map_eval(p, t, 0.0);
            worst = std::max(worst, std::abs(l3.first));
        }
        auto fp = fixed_points_tl(p);
        cplx w = std::polar(1.0, 2 * kPi / 3);
        cplx e1 = w / delta, e2 = std::conj(w) / delta;
        CHECK(std::abs(fp[0].trace.center() - (e1 + e2)) < 1e-6);
        CHECK(std::abs(fp[0].det.center() - e1 * e2) < 1e-6);
    }
    CHECK(worst < 1e-9);
}
