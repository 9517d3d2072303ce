#include "siegel/three_lines.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "siegel/roots.hpp"

namespace siegel {

namespace {

constexpr double kIndeterminacyThreshold = 1e-10;
constexpr double kInfinityThreshold = 1e-12;
constexpr double kCollisionThreshold = 1e-7;
constexpr double kLandingTolerance = 1e-8;

std::vector<cplx> centers(const std::vector<ComplexBall>& v)
{
    std::vector<cplx> out;
    out.reserve(v.size());
    for (const auto& b : v) out.push_back(b.center());
    return out;
}

// Sum_{i<k} delta^(3i), i.e. (delta^(3k) - 1)/(delta^3 - 1) without the removable pole.
ComplexBall geometric_cubes(const ComplexBall& delta, int k)
{
    ComplexBall d3 = pow(delta, 3), acc(0.0), term(1.0);
    for (int i = 0; i < k; ++i) {
        acc += term;
        term *= d3;
    }
    return acc;
}

IntPolynomial geometric_cubes_poly(int k)
{
    std::vector<BigInt> c(static_cast<std::size_t>(3 * (k - 1) + 1), 0);
    for (int i = 0; i < k; ++i) c[3 * i] = 1;
    return IntPolynomial(c);
}

IntPolynomial shifted_unit(int e)
{
    // t^e + 1
    std::vector<BigInt> c(static_cast<std::size_t>(e) + 1, 0);
    c[0] = 1;
    c[e] += 1;
    return IntPolynomial(c);
}

IntPolynomial lcm(const IntPolynomial& a, const IntPolynomial& b)
{
    IntPolynomial g = gcd(a, b);
    return *exact_divide(a * b, g);
}

ComplexBall omega() { return ComplexBall(cplx(-0.5, std::sqrt(3.0) / 2.0), 4.0 * detail::kUnit); }

// Root i of a real polynomial is real when the mirror of its isolating ball meets no other ball.
bool mirrored_onto_itself(const std::vector<ComplexBall>& balls, std::size_t i)
{
    ComplexBall m = balls[i].conj();
    if (!m.overlaps(balls[i])) return false;
    for (std::size_t j = 0; j < balls.size(); ++j)
        if (j != i && m.overlaps(balls[j])) return false;
    return true;
}

double residual_at(const ThreeLinesParams& params, const ProjectivePoint& w)
{
    return projective_distance(w, tl_map_eval(params, w));
}

}  // namespace

void OrbitData::validate() const
{
    if (m.empty() || m.size() != n.size()) fail(ErrorKind::InvalidArgument, "orbit lists must be nonempty and of equal length");
    for (int v : m)
        if (v < 1) fail(ErrorKind::InvalidArgument, "orbit lengths must be positive");
    for (int v : n)
        if (v < 1) fail(ErrorKind::InvalidArgument, "orbit lengths must be positive");
    if (m.size() == 1 && m[0] == 1 && n[0] == 1) fail(ErrorKind::InvalidArgument, "orbit data ((1),(1)) is excluded");
}

std::string OrbitData::str() const
{
    std::ostringstream os;
    auto list = [&](const std::vector<int>& v) {
        os << '(';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ')';
    };
    os << "m=";
    list(m);
    os << " n=";
    list(n);
    return os.str();
}

ThreeLinesParams::ThreeLinesParams(ComplexBall delta, std::vector<ComplexBall> a, std::vector<ComplexBall> b)
    : delta_(delta), a_(std::move(a)), b_(std::move(b))
{
    if (a_.empty() || a_.size() != b_.size()) fail(ErrorKind::InvalidArgument, "a and b must be nonempty and of equal length");
    if (delta_.contains_zero()) fail(ErrorKind::InvalidArgument, "delta must be nonzero");
    for (const auto& v : a_)
        if (v.contains_zero()) fail(ErrorKind::InvalidArgument, "a entries must be nonzero");
    for (const auto& v : b_)
        if (v.contains_zero()) fail(ErrorKind::InvalidArgument, "b entries must be nonzero");
}

ThreeLinesParams::ThreeLinesParams(cplx delta, const std::vector<cplx>& a, const std::vector<cplx>& b)
    : ThreeLinesParams(ComplexBall(delta), std::vector<ComplexBall>(a.begin(), a.end()),
                       std::vector<ComplexBall>(b.begin(), b.end()))
{
}

ComplexBall ThreeLinesParams::alpha() const
{
    ComplexBall s(0.0);
    for (const auto& v : a_) s += inverse(v);
    return s;
}

ComplexBall ThreeLinesParams::beta() const
{
    ComplexBall s(0.0);
    for (const auto& v : b_) s += inverse(v);
    return s;
}

ComplexBall ThreeLinesParams::alpha0() const
{
    ComplexBall p(1.0);
    for (const auto& v : a_) p *= inverse(v);
    return p;
}

ComplexBall ThreeLinesParams::beta0() const
{
    ComplexBall p(1.0);
    for (const auto& v : b_) p *= inverse(v);
    return p;
}

ComplexBall ThreeLinesParams::d() const { return square(ComplexBall(1.0) + delta_) / delta_; }

ThreeLinesParams ThreeLinesParams::scaled(const ComplexBall& k) const
{
    std::vector<ComplexBall> a2, b2;
    for (const auto& v : a_) a2.push_back(v * k);
    for (const auto& v : b_) b2.push_back(v * k);
    return {delta_, a2, b2};
}

std::vector<cplx> ThreeLinesParams::a_centers() const { return centers(a_); }
std::vector<cplx> ThreeLinesParams::b_centers() const { return centers(b_); }

ProjectivePoint tl_map_eval(const ThreeLinesParams& params, const ProjectivePoint& pt)
{
    auto p = ProjectivePoint::make(pt.x, pt.y, pt.z);
    cplx delta = params.delta().center();
    if (std::abs(p.z) < kInfinityThreshold) {
        if (std::abs(p.y) < kIndeterminacyThreshold) fail(ErrorKind::Indeterminate, "point [1:0:0]");
        cplx a0 = params.alpha0().center(), b0 = params.beta0().center();
        return ProjectivePoint::make(delta * (b0 - a0) * p.x - delta * delta * a0 * p.y, a0 * (p.x + delta * p.y), 0.0);
    }
    auto g1 = unit_product_coeffs(params.a_centers());
    auto g2 = unit_product_coeffs(params.b_centers());
    auto f = tl_components<cplx>(delta, g1, g2, p.x, p.y, p.z);
    if (std::abs(f[0]) < kIndeterminacyThreshold && std::abs(f[1]) < kIndeterminacyThreshold &&
        std::abs(f[2]) < kIndeterminacyThreshold)
        fail(ErrorKind::Indeterminate, "all image components vanish");
    return ProjectivePoint::make(f[0], f[1], f[2]);
}

std::pair<cplx, cplx> tl_map_eval(const ThreeLinesParams& params, cplx x, cplx y)
{
    cplx delta = params.delta().center();
    cplx g1(1.0), g2(1.0);
    for (const auto& a : params.a_centers()) g1 *= 1.0 - y / a;
    for (const auto& b : params.b_centers()) g2 *= 1.0 - y / b;
    // (g2 - g1)/y as a polynomial, so y = 0 needs no limit.
    auto c1 = unit_product_coeffs(params.a_centers()), c2 = unit_product_coeffs(params.b_centers());
    cplx h(0.0), yp(1.0);
    for (std::size_t k = 1; k < c1.size(); ++k) {
        h += (c2[k] - c1[k]) * yp;
        yp *= y;
    }
    cplx num = g1 * (x + delta * y);
    cplx den = delta * (h * x - delta * g1);
    if (std::abs(den) < kIndeterminacyThreshold) {
        if (std::abs(num) < kIndeterminacyThreshold) fail(ErrorKind::Indeterminate, "numerator and denominator vanish");
        fail(ErrorKind::PoleHit, "image leaves the affine chart");
    }
    return {y, num / den};
}

IndeterminacySet indeterminacy(const ThreeLinesParams& params)
{
    IndeterminacySet s;
    cplx delta = params.delta().center();
    auto a = params.a_centers(), b = params.b_centers();
    for (std::size_t i = 0; i < a.size(); ++i) {
        s.forward.push_back(ProjectivePoint::make(0.0, a[i], 1.0));
        s.backward.push_back(ProjectivePoint::make(a[i], 0.0, 1.0));
        s.labels.push_back("a" + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        s.forward.push_back(ProjectivePoint::make(-b[j] * delta, b[j], 1.0));
        s.backward.push_back(ProjectivePoint::make(b[j], -b[j] / delta, 1.0));
        s.labels.push_back("b" + std::to_string(j + 1));
    }
    s.forward.push_back(ProjectivePoint::make(1.0, 0.0, 0.0));
    s.backward.push_back(ProjectivePoint::make(0.0, 1.0, 0.0));
    s.labels.push_back("0");
    return s;
}

cplx h_iterate(const ThreeLinesParams& params, long long k, cplx x)
{
    if (k == 0) return x;
    cplx delta = params.delta().center();
    cplx d3 = delta * delta * delta;
    if (std::abs(d3 - 1.0) < 1e-14) fail(ErrorKind::PoleHit, "delta^3 = 1");
    if (x == cplx(0.0)) fail(ErrorKind::PoleHit, "x = 0");
    cplx p = delta * params.c().center() / (d3 - 1.0);
    cplx den = std::pow(d3, static_cast<double>(k)) * (1.0 / x - p) + p;
    if (std::abs(den) < 1e-300) fail(ErrorKind::PoleHit, "denominator vanishes");
    return 1.0 / den;
}

ComplexBall a_coefficient(const ComplexBall& delta, int k)
{
    if (k < 1) fail(ErrorKind::InvalidArgument, "orbit index must be positive");
    ComplexBall u = geometric_cubes(delta, k);
    if ((pow(delta, 3) - ComplexBall(1.0)).contains_zero()) fail(ErrorKind::PoleInFormula, "delta^3 - 1");
    if (u.contains_zero()) fail(ErrorKind::PoleInFormula, "delta^(3k) - 1 with k = " + std::to_string(k));
    ComplexBall num = pow(delta, 3LL * k - 1) + ComplexBall(1.0);
    if (num.contains_zero()) fail(ErrorKind::PoleInFormula, "delta^(3k-1) + 1 with k = " + std::to_string(k));
    return -num / (delta * u);
}

ComplexBall b_coefficient(const ComplexBall& delta, int k)
{
    if (k < 1) fail(ErrorKind::InvalidArgument, "orbit index must be positive");
    ComplexBall u = geometric_cubes(delta, k);
    if ((pow(delta, 3) - ComplexBall(1.0)).contains_zero()) fail(ErrorKind::PoleInFormula, "delta^3 - 1");
    if (u.contains_zero()) fail(ErrorKind::PoleInFormula, "delta^(3k) - 1 with k = " + std::to_string(k));
    ComplexBall num = pow(delta, 3LL * k + 1) + ComplexBall(1.0);
    if (num.contains_zero()) fail(ErrorKind::PoleInFormula, "delta^(3k+1) + 1 with k = " + std::to_string(k));
    return num / (square(delta) * u);
}

ThreeLinesParams ab_from_delta(const ComplexBall& delta, const OrbitData& orbit, bool real_params)
{
    orbit.validate();
    std::vector<ComplexBall> a, b;
    for (int k : orbit.m) {
        ComplexBall v = a_coefficient(delta, k);
        a.push_back(real_params ? real_part_ball(v) : v);
    }
    for (int k : orbit.n) {
        ComplexBall v = b_coefficient(delta, k);
        b.push_back(real_params ? real_part_ball(v) : v);
    }
    return {delta, a, b};
}

ComplexBall chi(const ComplexBall& delta, const OrbitData& orbit)
{
    orbit.validate();
    ComplexBall sum(0.0);
    for (int k : orbit.n) {
        ComplexBall den = pow(delta, 3LL * k + 1) + ComplexBall(1.0);
        if (den.contains_zero()) fail(ErrorKind::PoleInFormula, "delta^(3k+1) + 1 with k = " + std::to_string(k));
        sum += square(delta) * geometric_cubes(delta, k) / den;
    }
    for (int k : orbit.m) {
        ComplexBall den = pow(delta, 3LL * k - 1) + ComplexBall(1.0);
        if (den.contains_zero()) fail(ErrorKind::PoleInFormula, "delta^(3k-1) + 1 with k = " + std::to_string(k));
        sum += delta * geometric_cubes(delta, k) / den;
    }
    return sum;
}

IntPolynomial chi_cleared(const OrbitData& orbit)
{
    orbit.validate();
    struct Term {
        IntPolynomial num, den;
    };
    std::vector<Term> terms;
    for (int k : orbit.n) terms.push_back({IntPolynomial::monomial(2, 1) * geometric_cubes_poly(k), shifted_unit(3 * k + 1)});
    for (int k : orbit.m) terms.push_back({IntPolynomial::monomial(1, 1) * geometric_cubes_poly(k), shifted_unit(3 * k - 1)});
    IntPolynomial common = IntPolynomial::constant(1);
    for (const auto& t : terms) common = lcm(common, t.den).primitive();
    IntPolynomial total = IntPolynomial::constant(0) - common;
    for (const auto& t : terms) total = total + t.num * *exact_divide(common, t.den);
    return total.primitive();
}

IntPolynomial salem_from_orbit(const OrbitData& orbit)
{
    IntPolynomial cleared = chi_cleared(orbit);
    IntPolynomial part = strip_cyclotomic(cleared).salem_part.primitive();
    if (part.degree() < 2 || !is_salem(part).accepted)
        fail(ErrorKind::NoSalemFactor, "non-cyclotomic part of the cleared chi equation is not Salem for " + orbit.str());
    return part;
}

OrbitReport orbit_verify(const ThreeLinesParams& params, const OrbitData& orbit)
{
    orbit.validate();
    if (orbit.size() != params.size()) fail(ErrorKind::InvalidArgument, "orbit data and parameters differ in size");
    IndeterminacySet ind = indeterminacy(params);
    std::vector<int> lengths;
    for (int k : orbit.m) lengths.push_back(3 * k - 2);
    for (int k : orbit.n) lengths.push_back(3 * k);
    lengths.push_back(2);

    OrbitReport rep;
    rep.ok = true;
    for (std::size_t o = 0; o < lengths.size(); ++o) {
        OrbitStep step;
        step.label = ind.labels[o];
        step.length = lengths[o];
        ProjectivePoint cur = ind.backward[o];
        bool collided = false;
        for (int k = 0; k < lengths[o] && !collided; ++k) {
            for (std::size_t q = 0; q < ind.forward.size(); ++q)
                if (projective_distance(ind.forward[q], cur) < kCollisionThreshold) {
                    step.collision_step = k;
                    step.collision_with = ind.labels[q];
                    collided = true;
                    break;
                }
            if (!collided) cur = tl_map_eval(params, cur);
        }
        if (collided) {
            step.residual = std::numeric_limits<double>::infinity();
            rep.ok = false;
        } else {
            step.residual = projective_distance(ind.forward[o], cur);
            if (!(step.residual < kLandingTolerance)) rep.ok = false;
        }
        rep.max_residual = std::max(rep.max_residual, step.residual);
        rep.orbits.push_back(step);
    }
    return rep;
}

Jacobian tl_jacobian(const ThreeLinesParams& params, Chart chart, const ComplexBall& u, const ComplexBall& v)
{
    using D = Dual<ComplexBall>;
    auto g1b = unit_product_coeffs(params.a()), g2b = unit_product_coeffs(params.b());
    std::vector<D> g1(g1b.begin(), g1b.end()), g2(g2b.begin(), g2b.end());
    ComplexBall zero(0.0), one(1.0);
    D du(u, one, zero), dv(v, zero, one), unit(one), dl(params.delta());
    if (chart == Chart::AffineZ) {
        auto f = tl_components<D>(dl, g1, g2, du, dv, unit);
        D X = f[0] / f[2], Y = f[1] / f[2];
        return {X.dx, X.dy, Y.dx, Y.dy};
    }
    auto f = tl_components<D>(dl, g1, g2, du, unit, dv);
    D X = f[0] / f[1], Z = f[2] / f[1];
    return {X.dx, X.dy, Z.dx, Z.dy};
}

ComplexBall trace_affine(const ThreeLinesParams& params, const ComplexBall& x)
{
    ComplexBall one(1.0), acc(1.0);
    for (const auto& a : params.a()) {
        ComplexBall q = one - x / a;
        if (q.contains_zero()) fail(ErrorKind::PoleAtParameter, "x meets an a-parameter");
        acc -= inverse(q);
    }
    for (const auto& b : params.b()) {
        ComplexBall q = one - x / b;
        if (q.contains_zero()) fail(ErrorKind::PoleAtParameter, "x meets a b-parameter");
        acc += inverse(q);
    }
    return (params.delta() + one) * acc;
}

bool InfinityCheck::consistent() const
{
    return !((ratio_verdict == IntervalVerdict::CertifiedIn && eigen_verdict == IntervalVerdict::CertifiedOut) ||
             (ratio_verdict == IntervalVerdict::CertifiedOut && eigen_verdict == IntervalVerdict::CertifiedIn));
}

InfinityCheck infinity_criterion(const ComplexBall& delta, const ComplexBall& ratio)
{
    if (delta.mag_lower() > 1.0 || delta.mag_upper() < 1.0) fail(ErrorKind::OffUnitCircle, "|delta| != 1: " + delta.str());
    InfinityCheck out;
    out.ratio = ratio;
    out.ratio_verdict = ball_in_interval(ratio, 0.0, 4.0);
    ComplexBall one(1.0);
    auto t = quadratic_roots(one, ComplexBall(2.0) - ratio, one);
    out.t = {t.first, t.second};
    std::array<IntervalVerdict, 2> v;
    for (int i = 0; i < 2; ++i) {
        ComplexBall w = delta * square(out.t[i]);
        out.s[i] = ComplexBall(2.0) + w + inverse(w);
        v[i] = ball_in_interval(out.s[i], 0.0, 4.0);
    }
    out.eigen_verdict = (v[0] == v[1]) ? v[0] : IntervalVerdict::Unknown;
    return out;
}

InfinityCheck infinity_criterion(const ThreeLinesParams& params)
{
    return infinity_criterion(params.delta(), params.beta0() / params.alpha0());
}

std::vector<FixedPointRecord> fixed_points_tl(const ThreeLinesParams& params, bool on_circle)
{
    const int n = params.size();
    const ComplexBall& delta = params.delta();
    ComplexBall one(1.0), zero(0.0);
    auto real_if = [&](const ComplexBall& b) { return on_circle ? real_part_ball(b) : b; };
    std::vector<FixedPointRecord> out;

    FixedPointRecord w0;
    w0.label = "w0";
    w0.location = Location::CurveSingular;
    w0.chart = Chart::AffineZ;
    w0.coords = ProjectivePoint::make(0.0, 0.0, 1.0);
    w0.coord_balls = {zero, zero, one};
    Jacobian j0 = tl_jacobian(params, Chart::AffineZ, zero, zero);
    w0.trace = j0.trace();
    w0.det = j0.det();
    ComplexBall inv = inverse(delta);
    w0.eigenvalues = {omega() * inv, omega().conj() * inv};
    w0.s = square(w0.trace) / w0.det;
    w0.resonance = std::make_pair(3, -3);
    w0.residual = residual_at(params, w0.coords);
    out.push_back(w0);

    // Diagonal points: d prod(1 - x/a) - prod(1 - x/b) = 0.
    ComplexBall d = real_if(params.d());
    auto g1 = unit_product_coeffs(params.a()), g2 = unit_product_coeffs(params.b());
    std::vector<ComplexBall> coeffs;
    for (int k = 0; k <= n; ++k) coeffs.push_back(real_if(d * g1[k] - g2[k]));
    if (coeffs.back().contains_zero()) fail(ErrorKind::DegenerateSpectrum, "diagonal equation drops degree");
    RootSet rs = poly_roots(ComplexPolynomial(coeffs));
    if (rs.has_cluster()) fail(ErrorKind::DegenerateSpectrum, "diagonal fixed points not separated");
    std::vector<std::size_t> order(rs.balls.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        cplx a = rs.balls[i].center(), b = rs.balls[j].center();
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (std::size_t idx : order) {
        FixedPointRecord r;
        bool real_root = on_circle && mirrored_onto_itself(rs.balls, idx);
        ComplexBall x = real_root ? real_part_ball(rs.balls[idx]) : rs.balls[idx];
        r.label = "w" + std::to_string(out.size());
        r.location = Location::AffineDiagonal;
        r.chart = Chart::AffineZ;
        r.coord_balls = {x, x, one};
        r.coords = ProjectivePoint::make(x.center(), x.center(), 1.0);
        r.trace = trace_affine(params, x);
        r.det = tl_jacobian(params, Chart::AffineZ, x, x).det();
        r.s = square(r.trace) / delta;
        r.s_real = real_root;
        if (real_root) r.s = real_part_ball(r.s);
        auto ev = eigenvalues_from(r.trace, delta);
        r.eigenvalues = {ev.first, ev.second};
        r.residual = residual_at(params, r.coords);
        out.push_back(r);
    }

    // Points at infinity [x:1:0]: alpha0 x^2 + delta (2 alpha0 - beta0) x + alpha0 delta^2 = 0.
    ComplexBall a0 = params.alpha0(), b0 = params.beta0();
    auto xs = quadratic_roots(a0, delta * (ComplexBall(2.0) * a0 - b0), a0 * square(delta));
    if (xs.first.overlaps(xs.second)) fail(ErrorKind::DegenerateSpectrum, "fixed points at infinity not separated");
    bool ratio_in = false;
    if (on_circle) ratio_in = infinity_criterion(params).ratio_verdict == IntervalVerdict::CertifiedIn;
    for (const ComplexBall& x : {xs.first, xs.second}) {
        FixedPointRecord r;
        r.label = "w" + std::to_string(out.size());
        r.location = Location::Infinity;
        r.chart = Chart::AffineY;
        r.coord_balls = {x, one, zero};
        r.coords = ProjectivePoint::make(x.center(), 1.0, 0.0);
        Jacobian j = tl_jacobian(params, Chart::AffineY, x, zero);
        r.trace = j.trace();
        r.det = j.det();
        // Derivative of the Moebius restriction to the line at infinity.
        ComplexBall mu = square(delta) * b0 / (a0 * square(x + delta));
        r.eigenvalues = {mu, delta / mu};
        r.s = square(mu + delta / mu) / delta;
        r.s_real = ratio_in;
        if (ratio_in) r.s = real_part_ball(r.s);
        r.residual = residual_at(params, r.coords);
        out.push_back(r);
    }
    return out;
}

}  // namespace siegel
