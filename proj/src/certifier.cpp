#include "siegel/certifier.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/error.hpp"

namespace siegel {

namespace {

bool is_exact_one(const ComplexBall& b) { return b.center() == cplx(1.0, 0.0) && b.radius() == 0.0; }

std::pair<ComplexBall, ComplexBall> chart_coords(const FixedPointRecord& rec)
{
    const auto& c = rec.coord_balls;
    if (rec.chart == Chart::AffineZ && is_exact_one(c[2])) return {c[0], c[1]};
    if (rec.chart == Chart::AffineY && is_exact_one(c[1])) return {c[0], c[2]};
    fail(ErrorKind::ChartFailure, "fixed point " + rec.label + " does not lie in its chart");
}

// Polynomials in delta (outer) with coefficients in Z[x] (inner).
BiPolynomial bi_mul(const BiPolynomial& p, const BiPolynomial& q)
{
    BiPolynomial r(p.size() + q.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] = r[i + j] + p[i] * q[j];
    return r;
}

BiPolynomial bi_add(BiPolynomial p, const BiPolynomial& q, bool subtract = false)
{
    if (p.size() < q.size()) p.resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) p[i] = subtract ? p[i] - q[i] : p[i] + q[i];
    return p;
}

// c * x^xdeg * delta^ddeg
BiPolynomial bi_term(long long c, int xdeg, int ddeg)
{
    BiPolynomial r(ddeg + 1);
    r[ddeg] = IntPolynomial::monomial(xdeg, c);
    return r;
}

BiPolynomial bi_geometric_cubes(int k)
{
    BiPolynomial r{IntPolynomial{}};
    for (int i = 0; i < k; ++i) r = bi_add(r, bi_term(1, 0, 3 * i));
    return r;
}

// (1 + delta)^2 prod(A_i + x delta U_i) prod B_j - delta prod(B_j - x delta^2 U_j) prod A_i,
// with A = delta^(3m-1) + 1, B = delta^(3n+1) + 1: the diagonal fixed-point equation cleared.
BiPolynomial diagonal_bipoly(const OrbitData& o)
{
    BiPolynomial left = bi_mul(bi_add(bi_term(1, 0, 0), bi_term(1, 0, 1)), bi_add(bi_term(1, 0, 0), bi_term(1, 0, 1)));
    BiPolynomial right = bi_term(1, 0, 1);
    for (int m : o.m) {
        BiPolynomial a = bi_add(bi_term(1, 0, 3 * m - 1), bi_term(1, 0, 0));
        left = bi_mul(left, bi_add(a, bi_mul(bi_term(1, 1, 1), bi_geometric_cubes(m))));
        right = bi_mul(right, a);
    }
    for (int n : o.n) {
        BiPolynomial b = bi_add(bi_term(1, 0, 3 * n + 1), bi_term(1, 0, 0));
        left = bi_mul(left, b);
        right = bi_mul(right, bi_add(b, bi_mul(bi_term(1, 1, 2), bi_geometric_cubes(n)), true));
    }
    return bi_add(left, right, true);
}

// Q x^2 + delta (2 Q - P) x + Q delta^2 with beta0/alpha0 = P/Q.
BiPolynomial infinity_bipoly(const OrbitData& o)
{
    BiPolynomial num = bi_term(1, 0, 0), den = bi_term(1, 0, 0);
    for (int m : o.m) {
        num = bi_mul(num, bi_add(bi_term(-1, 0, 3 * m - 1), bi_term(-1, 0, 0)));
        den = bi_mul(den, bi_mul(bi_term(1, 0, 1), bi_geometric_cubes(m)));
    }
    for (int n : o.n) {
        num = bi_mul(num, bi_mul(bi_term(1, 0, 2), bi_geometric_cubes(n)));
        den = bi_mul(den, bi_add(bi_term(1, 0, 3 * n + 1), bi_term(1, 0, 0)));
    }
    BiPolynomial x2 = bi_mul(den, bi_term(1, 2, 0));
    BiPolynomial x1 = bi_mul(bi_add(bi_add(den, den), num, true), bi_term(1, 1, 1));
    BiPolynomial x0 = bi_mul(den, bi_term(1, 0, 2));
    return bi_add(bi_add(x2, x1), x0);
}

StrictEvidence strict_check(const IntPolynomial& salem, const BiPolynomial& equation, const std::string& fixed_class,
                            int primes)
{
    StrictEvidence ev;
    ev.enabled = true;
    ev.fixed_class = fixed_class;
    try {
        IntPolynomial r = resultant(salem, equation);
        ev.resultant_degree = r.degree();
        IntPolynomial sf = squarefree_part(r);
        ev.squarefree_degree = sf.degree();
        for (std::uint64_t p : admissible_primes(sf, primes)) {
            if (irreducible_mod_p(sf, p)) {
                ev.prime = p;
                ev.irreducible = true;
                break;
            }
        }
        if (!ev.irreducible) ev.note = "no admissible prime among the first " + std::to_string(primes) + " gives an irreducible reduction";
    } catch (const Error& e) {
        ev.note = std::string(to_string(e.kind())) + ": " + e.detail();
    }
    return ev;
}

void apply_strict(CertificationReport& rep, const StrictEvidence& ev, Location loc)
{
    rep.strict.push_back(ev);
    if (ev.irreducible) return;
    for (std::size_t i = 0; i < rep.fixed_points.size(); ++i) {
        if (rep.fixed_points[i].location != loc || rep.verdicts[i].verdict != Verdict::SiegelCertified) continue;
        rep.verdicts[i].verdict = Verdict::Inconclusive;
        rep.verdicts[i].reason = "strict mode: eliminated polynomial for " + ev.fixed_class + " not shown irreducible";
    }
}

int locate_circle_root(const SalemCertificate& cert, const ComplexBall& delta0)
{
    for (std::size_t i = 0; i < cert.roots.size(); ++i)
        if (cert.positions[i] == CirclePosition::OnCircle && cert.roots[i].overlaps(delta0)) return static_cast<int>(i);
    fail(ErrorKind::InvalidArgument, "delta0 " + delta0.str() + " is not a certified unit-circle root");
}

std::vector<int> circle_indices(const SalemCertificate& cert)
{
    std::vector<int> idx;
    for (std::size_t i = 0; i < cert.roots.size(); ++i)
        if (cert.positions[i] == CirclePosition::OnCircle) idx.push_back(static_cast<int>(i));
    // Upper half plane first, then by argument, so ties resolve deterministically.
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        cplx za = cert.roots[a].center(), zb = cert.roots[b].center();
        bool ua = za.imag() >= 0, ub = zb.imag() >= 0;
        if (ua != ub) return ua;
        return std::arg(za) < std::arg(zb);
    });
    return idx;
}

void fill_salem(CertificationReport& rep, const IntPolynomial& s, double root_tol)
{
    SalemCheck check = is_salem(s, RootOptions{.tol = root_tol});
    if (!check.accepted) fail(ErrorKind::NoSalemFactor, "non-cyclotomic part " + s.str() + " is not Salem: " + check.reason);
    rep.salem = s;
    rep.salem_cert = check.certificate;
    if (circle_indices(rep.salem_cert).empty()) fail(ErrorKind::NoUnitCircleRoots, "Salem factor has no unit-circle roots");
}

void fill_spectral(CertificationReport& rep)
{
    SpectralData sd = spectral_data(rep.matrix);
    rep.lambda = sd.lambda;
    rep.entropy = sd.entropy;
}

void set_witness(CertificationReport& rep, const std::vector<Conjugate>& conj)
{
    for (const auto& v : rep.verdicts)
        if (v.verdict == Verdict::SiegelCertified && v.witness) {
            rep.witness_delta = conj[*v.witness].delta;
            return;
        }
}

}  // namespace

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::SiegelCertified: return "SiegelCertified";
    case Verdict::NotRotation: return "NotRotation";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Jacobian jacobian(const CuspidalParams& params, const FixedPointRecord& rec)
{
    auto [u, v] = chart_coords(rec);
    return cuspidal_jacobian(ComplexBall(params.delta()), rec.chart, u, v);
}

Jacobian jacobian(const ThreeLinesParams& params, const FixedPointRecord& rec)
{
    auto [u, v] = chart_coords(rec);
    return tl_jacobian(params, rec.chart, u, v);
}

bool not_root_of_unity(const ComplexBall& delta, const IntPolynomial& witness)
{
    if (witness.is_zero() || !witness.eval(delta).contains_zero())
        fail(ErrorKind::WitnessMismatch, "witness polynomial does not vanish at " + delta.str());
    return is_salem(witness).accepted;
}

PointVerdict certify_fixed_point(const FixedPointRecord& rec, const ComplexBall& delta, const IntPolynomial& witness,
                                 const std::vector<Conjugate>& conjugates)
{
    PointVerdict pv;
    pv.label = rec.label;
    pv.s_verdict = ball_in_interval(rec.s, 0.0, 4.0);
    if (rec.resonance) {
        pv.verdict = Verdict::NotRotation;
        pv.reason = "eigenvalues satisfy mu^" + std::to_string(rec.resonance->first) + " nu^" +
                    std::to_string(rec.resonance->second) + " = 1";
        return pv;
    }
    if (pv.s_verdict == IntervalVerdict::CertifiedOut) {
        pv.verdict = Verdict::NotRotation;
        pv.reason = "s outside [0, 4]: an eigenvalue is off the unit circle";
        return pv;
    }
    if (pv.s_verdict == IntervalVerdict::Unknown) {
        pv.reason = "s ball meets the boundary of [0, 4]";
        return pv;
    }
    if (!rec.s_real) {
        pv.reason = "s not proven real";
        return pv;
    }
    for (std::size_t i = 0; i < conjugates.size(); ++i) {
        const auto& cands = conjugates[i].candidates;
        bool all_out = !cands.empty() && std::all_of(cands.begin(), cands.end(), [](const FixedPointRecord& c) {
            return ball_in_interval(c.s, 0.0, 4.0) == IntervalVerdict::CertifiedOut;
        });
        if (all_out) {
            pv.witness = static_cast<int>(i);
            break;
        }
    }
    if (!pv.witness) {
        pv.reason = "no conjugate with every candidate image outside [0, 4]";
        return pv;
    }
    bool independent = false;
    try {
        independent = not_root_of_unity(delta, witness);
    } catch (const Error& e) {
        pv.witness.reset();
        pv.reason = e.what();
        return pv;
    }
    if (!independent) {
        pv.witness.reset();
        pv.reason = "delta not shown to be a non-root of unity";
        return pv;
    }
    pv.verdict = Verdict::SiegelCertified;
    pv.reason = "s in [0, 4] here and outside [0, 4] at every candidate image under delta -> delta*";
    return pv;
}

int CertificationReport::count(Verdict v) const
{
    return static_cast<int>(std::count_if(verdicts.begin(), verdicts.end(), [v](const PointVerdict& p) { return p.verdict == v; }));
}

CertificationReport certify_cuspidal_at(int n, const ComplexBall& delta0, const CertifyOptions& opts)
{
    CertificationReport rep;
    rep.family = "cuspidal";
    rep.cusp_n = n;
    CyclotomicSplit split = strip_cyclotomic(orbit_polynomial(n));
    if (split.salem_part.degree() < 1) fail(ErrorKind::NoSalemFactor, "orbit polynomial is a product of cyclotomic factors");
    fill_salem(rep, split.salem_part, opts.root_tol);
    rep.matrix = quad_action_matrix(n, n, n);
    fill_spectral(rep);

    const int i0 = locate_circle_root(rep.salem_cert, delta0);
    rep.delta0 = rep.salem_cert.roots[i0];
    auto off = fixed_points_cuspidal(rep.delta0, true);
    auto on = curve_fixed_points_cuspidal(rep.delta0, n);
    rep.fixed_points = {off[0], off[1], on[0], on[1]};

    std::vector<Conjugate> conj;
    for (int j : circle_indices(rep.salem_cert)) {
        if (j == i0) continue;
        try {
            auto w = fixed_points_cuspidal(rep.salem_cert.roots[j], true);
            conj.push_back({rep.salem_cert.roots[j], {w[0], w[1]}});
        } catch (const Error&) {
        }
    }
    for (const auto& r : rep.fixed_points) rep.verdicts.push_back(certify_fixed_point(r, rep.delta0, rep.salem, conj));
    set_witness(rep, conj);

    if (opts.strict) apply_strict(rep, strict_check(rep.salem, cleared_q_tau(), "off-curve abscissa", opts.strict_primes), Location::Generic);
    if (rep.count(Verdict::SiegelCertified) > 2)
        fail(ErrorKind::PipelineFailed, "cuspidal report exceeds the hard cap of two Siegel centers");
    return rep;
}

CertificationReport certify_cuspidal(int n, const CertifyOptions& opts)
{
    CyclotomicSplit split = strip_cyclotomic(orbit_polynomial(n));
    if (split.salem_part.degree() < 1) fail(ErrorKind::NoSalemFactor, "orbit polynomial is a product of cyclotomic factors");
    CertificationReport probe;
    fill_salem(probe, split.salem_part, opts.root_tol);
    std::optional<CertificationReport> best;
    for (int j : circle_indices(probe.salem_cert)) {
        CertificationReport rep = certify_cuspidal_at(n, probe.salem_cert.roots[j], opts);
        if (!best || rep.count(Verdict::SiegelCertified) > best->count(Verdict::SiegelCertified)) best = std::move(rep);
    }
    return *best;
}

CertificationReport certify_three_lines_at(const OrbitData& orbit, const ComplexBall& delta0, const CertifyOptions& opts)
{
    orbit.validate();
    CertificationReport rep;
    rep.family = "three-lines";
    rep.orbit = orbit;
    fill_salem(rep, salem_from_orbit(orbit), opts.root_tol);
    rep.matrix = tl_action_matrix(orbit);
    fill_spectral(rep);

    const int i0 = locate_circle_root(rep.salem_cert, delta0);
    rep.delta0 = rep.salem_cert.roots[i0];
    ThreeLinesParams params = ab_from_delta(rep.delta0, orbit, true);
    rep.orbit_check = orbit_verify(params, orbit);
    if (!rep.orbit_check->ok) fail(ErrorKind::OrbitCollision, "orbit data not realized at delta0 (collision or open orbit)");
    rep.fixed_points = fixed_points_tl(params, true);

    std::vector<Conjugate> diag, inf;
    for (int j : circle_indices(rep.salem_cert)) {
        if (j == i0) continue;
        const ComplexBall& dj = rep.salem_cert.roots[j];
        try {
            auto recs = fixed_points_tl(ab_from_delta(dj, orbit, true), true);
            Conjugate cd{dj, {}}, ci{dj, {}};
            for (const auto& r : recs) {
                if (r.location == Location::AffineDiagonal) cd.candidates.push_back(r);
                if (r.location == Location::Infinity) ci.candidates.push_back(r);
            }
            diag.push_back(cd);
            inf.push_back(ci);
        } catch (const Error&) {
        }
    }
    for (const auto& r : rep.fixed_points) {
        const auto& conj = r.location == Location::Infinity ? inf : diag;
        rep.verdicts.push_back(certify_fixed_point(r, rep.delta0, rep.salem, conj));
    }
    set_witness(rep, diag);

    if (opts.strict) {
        apply_strict(rep, strict_check(rep.salem, diagonal_bipoly(orbit), "diagonal abscissa", opts.strict_primes),
                     Location::AffineDiagonal);
        apply_strict(rep, strict_check(rep.salem, infinity_bipoly(orbit), "abscissa at infinity", opts.strict_primes),
                     Location::Infinity);
    }
    return rep;
}

CertificationReport certify_three_lines(const OrbitData& orbit, const CertifyOptions& opts)
{
    orbit.validate();
    CertificationReport probe;
    fill_salem(probe, salem_from_orbit(orbit), opts.root_tol);
    std::optional<CertificationReport> best;
    for (int j : circle_indices(probe.salem_cert)) {
        try {
            CertificationReport rep = certify_three_lines_at(orbit, probe.salem_cert.roots[j], opts);
            if (!best || rep.count(Verdict::SiegelCertified) > best->count(Verdict::SiegelCertified)) best = std::move(rep);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OrbitCollision && e.kind() != ErrorKind::DegenerateSpectrum) throw;
        }
    }
    if (!best) fail(ErrorKind::OrbitCollision, "no unit-circle root realizes the orbit data");
    return *best;
}

CertificationReport theorem1_pipeline(int k, const PipelineOptions& opts)
{
    if (k < 2) fail(ErrorKind::InvalidArgument, "k = 0 and k = 1 are realized by earlier constructions and are out of scope");
    auto stage = [](const std::string& name, auto&& fn) {
        try {
            return fn();
        } catch (const Error& e) {
            fail(ErrorKind::PipelineFailed, name + ": " + e.what());
        }
    };
    auto require = [](bool ok, const std::string& name, const std::string& what) {
        if (!ok) fail(ErrorKind::PipelineFailed, name + ": " + what);
    };

    if (k == 2) {
        CertificationReport rep = stage("certify_cuspidal", [&] { return certify_cuspidal(8, opts.certify); });
        rep.stages.push_back("certify_cuspidal");
        require(rep.entropy > 0.0, "certify_cuspidal", "entropy is not positive");
        return rep;
    }

    const int n = k - 2;
    std::vector<std::string> done;
    ThreeLinesParams c0 = stage("construct_c0", [&] {
        double d = opts.d_target;
        for (int attempt = 0;; ++attempt) {
            try {
                return construct_c0(n, d);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::SearchFailed || attempt >= 4) throw;
                d = 1.0 - (1.0 - d) / 2.0;
            }
        }
    });
    done.push_back("construct_c0");
    ThreeLinesParams cstar = stage("construct_cstar", [&] { return construct_cstar(n, opts.seed); });
    done.push_back("construct_cstar");
    ApproxResult found = stage("approx_parameters", [&] { return approx_parameters(c0, cstar, opts.search); });
    done.push_back("approx_parameters");
    ThreeLinesParams params = stage("ab_from_delta", [&] { return ab_from_delta(found.delta0, found.orbit, true); });
    done.push_back("ab_from_delta");
    OrbitReport orbit_rep = stage("orbit_verify", [&] { return orbit_verify(params, found.orbit); });
    require(orbit_rep.ok, "orbit_verify", "orbits do not close cleanly");
    done.push_back("orbit_verify");
    auto fps = stage("fixed_points_tl", [&] { return fixed_points_tl(params, true); });
    require(static_cast<int>(fps.size()) == n + 3, "fixed_points_tl", "expected N + 3 fixed points");
    done.push_back("fixed_points_tl");
    CertificationReport rep = stage("certify", [&] { return certify_three_lines_at(found.orbit, found.delta0, opts.certify); });
    done.push_back("certify");
    rep.stages = done;
    rep.search = found;

    require(rep.entropy > 0.0, "certify", "entropy is not positive");
    require(rep.verdicts.front().verdict == Verdict::NotRotation, "certify", "w0 is not NotRotation");
    const int certified = rep.count(Verdict::SiegelCertified);
    // A shortfall caused only by inconclusive verdicts is reported, not raised.
    require(certified == k || (certified < k && rep.count(Verdict::Inconclusive) > 0), "certify",
            std::to_string(certified) + " certified centers, expected " + std::to_string(k));
    return rep;
}

}  // namespace siegel
