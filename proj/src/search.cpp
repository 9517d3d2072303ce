#include "siegel/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <numbers>
#include <optional>
#include <random>
#include <thread>

#include "siegel/error.hpp"
#include "siegel/roots.hpp"

namespace siegel {

namespace {

int worker_count()
{
    if (const char* env = std::getenv("SIEGEL_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return std::min(v, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

// Solves A x = rhs in place by partial pivoting; false when singular.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double>& rhs)
{
    const int n = static_cast<int>(rhs.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-300) return false;
        std::swap(a[piv], a[c]);
        std::swap(rhs[piv], rhs[c]);
        for (int r = c + 1; r < n; ++r) {
            double f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    for (int c = n - 1; c >= 0; --c) {
        for (int k = c + 1; k < n; ++k) rhs[c] -= a[c][k] * rhs[k];
        rhs[c] /= a[c][c];
    }
    return true;
}

std::vector<double> real_centers(const std::vector<ComplexBall>& v)
{
    std::vector<double> out;
    for (const auto& b : v) out.push_back(b.center().real());
    return out;
}

double coordinate_distance(const ThreeLinesParams& p, const ComplexBall& delta, const ThreeLinesParams& target)
{
    double dist = std::abs(delta.center() - target.delta().center());
    for (int i = 0; i < p.size(); ++i) {
        dist = std::max(dist, std::abs(p.a()[i].center() - target.a()[i].center()));
        dist = std::max(dist, std::abs(p.b()[i].center() - target.b()[i].center()));
    }
    return dist;
}

bool rationally_related(double x, double y, int max_den)
{
    for (int q = 1; q <= max_den; ++q)
        for (int p = -max_den; p <= max_den; ++p)
            if (std::abs(q * x - p * y) < 1e-9) return true;
    return false;
}

struct Candidate {
    std::optional<ApproxResult> hit;
    bool evaluated = false;
};

Candidate evaluate(const OrbitData& orbit, const ThreeLinesParams& c0, const ThreeLinesParams& cstar,
                   const ApproxOptions& opts)
{
    Candidate out;
    IntPolynomial s;
    SalemCheck check;
    try {
        s = salem_from_orbit(orbit);
        check = is_salem(s);
    } catch (const Error&) {
        return out;
    }
    if (!check.accepted) return out;
    out.evaluated = true;

    std::optional<std::pair<double, ComplexBall>> best0, best_star;
    auto consider = [](std::optional<std::pair<double, ComplexBall>>& slot, double dist, const ComplexBall& d) {
        if (!slot || dist < slot->first) slot = std::make_pair(dist, d);
    };
    for (int idx : upper_circle_roots(check.certificate)) {
        const ComplexBall& delta = check.certificate.roots[idx];
        try {
            ThreeLinesParams p = ab_from_delta(delta, orbit, true);
            double d0 = coordinate_distance(p, delta, c0), ds = coordinate_distance(p, delta, cstar);
            if (opts.acceptance == Acceptance::Neighborhood) {
                if (d0 < opts.eps) consider(best0, d0, delta);
                if (ds < opts.eps) consider(best_star, ds, delta);
            } else {
                auto recs = fixed_points_tl(p, true);
                if (all_off_singular(recs, true)) consider(best0, d0, delta);
                if (all_off_singular(recs, false)) consider(best_star, ds, delta);
            }
        } catch (const Error&) {
            continue;
        }
    }
    if (best0 && best_star) {
        ApproxResult r;
        r.orbit = orbit;
        r.salem = s;
        r.delta0 = best0->second;
        r.delta_star = best_star->second;
        r.dist0 = best0->first;
        r.dist_star = best_star->first;
        out.hit = r;
    }
    return out;
}

}  // namespace

ComplexBall delta_from_d(double d)
{
    if (!(d >= 0.0 && d <= 4.0)) fail(ErrorKind::InvalidArgument, "d must lie in [0, 4] for delta on the unit circle");
    return unit_phase(std::acos((d - 2.0) / 2.0));
}

ThreeLinesParams normalize(const ThreeLinesParams& params)
{
    ComplexBall k = params.c();
    if (k.contains_zero()) fail(ErrorKind::InvalidArgument, "sum 1/b - sum 1/a vanishes; cannot normalize");
    if (params.a().front().im_lo() == 0.0 && params.a().front().im_hi() == 0.0) k = real_part_ball(k);
    return params.scaled(k);
}

bool all_off_singular(const std::vector<FixedPointRecord>& recs, bool want_in)
{
    const IntervalVerdict want = want_in ? IntervalVerdict::CertifiedIn : IntervalVerdict::CertifiedOut;
    for (const auto& r : recs) {
        if (r.location == Location::CurveSingular) continue;
        if (want_in && !r.s_real) return false;
        if (ball_in_interval(r.s, 0.0, 4.0) != want) return false;
    }
    return true;
}

ThreeLinesParams construct_c0(int n, double d_target)
{
    if (n < 1) fail(ErrorKind::InvalidArgument, "N must be at least 1");
    if (!(d_target > 0.0 && d_target < 1.0)) fail(ErrorKind::InvalidArgument, "d_target must lie in (0, 1)");

    std::vector<double> a(n), x(n), u(n);
    for (int i = 0; i < n; ++i) {
        a[i] = i + 1.0;
        x[i] = i + 0.5;
        u[i] = 1.0 / a[i];
    }
    // At d = 1 the solution is b = a; follow it down to d_target in the unknowns u = 1/b.
    const int steps = 64;
    for (int s = 1; s <= steps; ++s) {
        double d = 1.0 - (1.0 - d_target) * s / steps;
        bool converged = false;
        for (int it = 0; it < 60 && !converged; ++it) {
            std::vector<double> f(n);
            std::vector<std::vector<double>> jac(n, std::vector<double>(n));
            for (int i = 0; i < n; ++i) {
                double lhs = 1.0, rhs = d;
                for (int k = 0; k < n; ++k) {
                    lhs *= 1.0 - x[i] * u[k];
                    rhs *= 1.0 - x[i] / a[k];
                }
                f[i] = -(lhs - rhs);
                for (int k = 0; k < n; ++k) {
                    double p = -x[i];
                    for (int l = 0; l < n; ++l)
                        if (l != k) p *= 1.0 - x[i] * u[l];
                    jac[i][k] = p;
                }
            }
            if (!solve_dense(jac, f)) fail(ErrorKind::SearchFailed, "singular Jacobian in the continuation for b");
            double step = 0.0;
            for (int k = 0; k < n; ++k) {
                u[k] += f[k];
                step = std::max(step, std::abs(f[k]) / std::abs(u[k]));
            }
            converged = step < 1e-15;
        }
        if (!converged) fail(ErrorKind::SearchFailed, "continuation for b did not converge at d = " + std::to_string(d));
    }

    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = 1.0 / u[i];
    for (int i = 0; i < n; ++i)
        if (!(x[i] < b[i] && b[i] < a[i])) fail(ErrorKind::SearchFailed, "interleaving x_i < b_i < a_i violated");
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < n; ++l) {
            double term = std::abs((a[i] - b[i]) * x[l] / ((a[i] - x[l]) * (b[i] - x[l])));
            if (!(term < 1.0 / n)) fail(ErrorKind::SearchFailed, "trace bound |(a-b)x/((a-x)(b-x))| < 1/N violated");
        }
        double ratio = a[i] / b[i];
        if (!(ratio > 1.0 && ratio < std::pow(2.0, 1.0 / n)))
            fail(ErrorKind::SearchFailed, "ratio bound 1 < a_i/b_i < 2^(1/N) violated");
    }

    std::vector<ComplexBall> ab, bb;
    for (int i = 0; i < n; ++i) {
        ab.emplace_back(a[i]);
        bb.emplace_back(b[i]);
    }
    ThreeLinesParams p = normalize(ThreeLinesParams(delta_from_d(d_target), ab, bb));
    if (!all_off_singular(fixed_points_tl(p, true), true))
        fail(ErrorKind::SearchFailed, "certifier re-check: some s-value not certified in (0, 4)");
    return p;
}

double g_function(int n)
{
    if (n < 1) fail(ErrorKind::InvalidArgument, "N must be at least 1");
    const double e1 = std::pow(4.0, 1.0 / n), e2 = std::pow(4.0, 2.0 / n);
    return (e2 - 1.0 / e2) + (e1 - 1.0 / e1) - 7.0 / n;
}

cplx equal_parameter_value(int n, double a0, double b0, double d, int l)
{
    if (n < 1 || !(a0 > b0) || !(d > 0.0)) fail(ErrorKind::InvalidArgument, "need N >= 1, a0 > b0 and d > 0");
    // Extended precision: the factor N / (a0 - b0) amplifies rounding in the bracket by about N^2.
    using lcplx = std::complex<long double>;
    const long double A = a0, B = b0, D = d, N = n;
    const long double lambda = std::pow(D, 1.0L / N);
    const lcplx eps = std::polar(1.0L, 2.0L * std::numbers::pi_v<long double> * l / N);
    lcplx inner = 1.0L - N / (A - B) * (A + B - A / (lambda * eps) - B * lambda * eps);
    lcplx v = D * inner * inner;
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

ThreeLinesParams construct_cstar(int n, std::uint64_t seed)
{
    if (n < 1) fail(ErrorKind::InvalidArgument, "N must be at least 1");
    const double a0 = std::pow(4.0, 1.0 / n), b0 = 1.0, d = 1.0 / 16.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.02, 0.05);
    double spread = 1.0;
    for (int attempt = 0; attempt < 8; ++attempt, spread *= 0.5) {
        std::vector<double> ea(n), eb(n);
        for (auto& e : ea) e = jitter(rng);
        for (auto& e : eb) e = jitter(rng);
        std::sort(ea.begin(), ea.end());
        std::sort(eb.begin(), eb.end(), std::greater<>());
        std::vector<ComplexBall> a, b;
        for (int i = 0; i < n; ++i) {
            a.emplace_back(a0 * (1.0 + spread * ea[i]));
            b.emplace_back(b0 * (1.0 - spread * eb[i]));
        }
        try {
            ThreeLinesParams p = normalize(ThreeLinesParams(delta_from_d(d), a, b));
            if (all_off_singular(fixed_points_tl(p, true), false)) return p;
        } catch (const Error&) {
        }
    }
    fail(ErrorKind::PerturbationFailed, "no perturbation of the equal-parameter seed kept every s-value outside [0, 4]");
}

ApproxResult approx_parameters(const ThreeLinesParams& c0, const ThreeLinesParams& cstar, const ApproxOptions& opts)
{
    const int n = c0.size();
    if (cstar.size() != n) fail(ErrorKind::InvalidArgument, "targets have different N");
    if (!(opts.eps > 0.0) || opts.cap < 1) fail(ErrorKind::InvalidArgument, "eps and cap must be positive");

    const double th0 = std::arg(c0.delta().center()), ths = std::arg(cstar.delta().center());
    if (rationally_related(th0, ths, 40) || rationally_related(th0, std::numbers::pi, 40) ||
        rationally_related(ths, std::numbers::pi, 40))
        fail(ErrorKind::SearchFailed, "target determinants are not multiplicatively independent");

    // Fixed slots: n_1..n_N and m_1..m_{N-1}, each matched to both targets by density.
    struct Slot {
        bool is_a;
        double t0, ts;
    };
    std::vector<Slot> slots;
    const auto a0 = real_centers(c0.a()), b0 = real_centers(c0.b());
    const auto as = real_centers(cstar.a()), bs = real_centers(cstar.b());
    for (int i = 0; i + 1 < n; ++i) slots.push_back({true, a0[i], as[i]});
    for (int j = 0; j < n; ++j) slots.push_back({false, b0[j], bs[j]});

    std::vector<std::vector<std::pair<double, int>>> best(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
        for (int k = 1; k <= opts.density_range; ++k) {
            ComplexBall v0 = slots[s].is_a ? a_coefficient(c0.delta(), k) : b_coefficient(c0.delta(), k);
            ComplexBall vs = slots[s].is_a ? a_coefficient(cstar.delta(), k) : b_coefficient(cstar.delta(), k);
            double err = std::max(std::abs(v0.center().real() - slots[s].t0), std::abs(vs.center().real() - slots[s].ts));
            best[s].push_back({err, k});
        }
        std::sort(best[s].begin(), best[s].end());
        best[s].resize(std::min<std::size_t>(best[s].size(), static_cast<std::size_t>(opts.per_slot)));
    }

    // All combinations of the kept choices, ordered by their worst slot error.
    std::vector<std::pair<double, std::vector<int>>> prefixes{{0.0, {}}};
    for (const auto& choices : best) {
        std::vector<std::pair<double, std::vector<int>>> next;
        for (const auto& [err, ks] : prefixes)
            for (const auto& [e, k] : choices) {
                auto v = ks;
                v.push_back(k);
                next.push_back({std::max(err, e), v});
            }
        prefixes = std::move(next);
    }
    std::stable_sort(prefixes.begin(), prefixes.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    if (static_cast<int>(prefixes.size()) > opts.prefix_candidates) prefixes.resize(opts.prefix_candidates);

    const int workers = worker_count();
    int tried = 0;
    // Runs a batch in parallel; the first hit in batch order wins regardless of scheduling.
    auto run_batch = [&](const std::vector<OrbitData>& batch) -> std::optional<ApproxResult> {
        for (std::size_t start = 0; start < batch.size(); start += static_cast<std::size_t>(workers)) {
            std::vector<std::future<Candidate>> jobs;
            for (std::size_t i = start; i < std::min(batch.size(), start + workers); ++i) {
                const OrbitData& orbit = batch[i];
                jobs.push_back(std::async(std::launch::async,
                                          [orbit, &c0, &cstar, &opts] { return evaluate(orbit, c0, cstar, opts); }));
            }
            std::optional<ApproxResult> found;
            for (auto& job : jobs) {
                Candidate c = job.get();
                if (found) continue;  // joined but not counted, so the tally ignores the worker count
                if (c.evaluated) ++tried;
                if (c.hit) found = c.hit;
            }
            if (found) {
                found->polynomials_tried = tried;
                return found;
            }
        }
        return std::nullopt;
    };
    auto excluded = [](const OrbitData& o) { return o.size() == 1 && o.m[0] == 1 && o.n[0] == 1; };

    if (opts.acceptance == Acceptance::Certified) {
        // Smallest total orbit length first, every entry at most cap.
        for (int total = 2 * n; total <= 2 * n * opts.cap; ++total) {
            std::vector<OrbitData> batch;
            std::vector<int> parts(2 * n, 1);
            std::function<void(int, int)> rec = [&](int slot, int left) {
                if (slot == 2 * n - 1) {
                    if (left < 1 || left > opts.cap) return;
                    parts[slot] = left;
                    OrbitData o{{parts.begin(), parts.begin() + n}, {parts.begin() + n, parts.end()}};
                    if (!excluded(o)) batch.push_back(o);
                    return;
                }
                for (int v = 1; v <= std::min(opts.cap, left - (2 * n - 1 - slot)); ++v) {
                    parts[slot] = v;
                    rec(slot + 1, left - v);
                }
            };
            rec(0, total);
            if (auto hit = run_batch(batch)) return *hit;
        }
    } else {
        for (const auto& [err, ks] : prefixes) {
            OrbitData base;
            for (std::size_t s = 0; s < slots.size(); ++s) (slots[s].is_a ? base.m : base.n).push_back(ks[s]);
            std::vector<OrbitData> batch;
            for (int mn = 1; mn <= opts.cap; ++mn) {
                OrbitData orbit = base;
                orbit.m.push_back(mn);
                if (!excluded(orbit)) batch.push_back(orbit);
            }
            if (auto hit = run_batch(batch)) return *hit;
        }
    }
    fail(ErrorKind::BudgetExhausted, "no orbit data within cap " + std::to_string(opts.cap) + " reached both targets (" +
                                         std::to_string(tried) + " Salem polynomials examined)");
}

double equidistribution_statistic(const IntPolynomial& p, int bins)
{
    if (bins < 1) fail(ErrorKind::InvalidArgument, "bins must be positive");
    SalemCheck check = is_salem(p);
    if (!check.accepted) fail(ErrorKind::NoSalemFactor, "equidistribution needs a Salem polynomial: " + check.reason);
    std::vector<int> hist(bins, 0);
    int total = 0;
    for (std::size_t i = 0; i < check.certificate.roots.size(); ++i) {
        if (check.certificate.positions[i] != CirclePosition::OnCircle) continue;
        double th = std::arg(check.certificate.roots[i].center());
        if (th < 0) th += 2.0 * std::numbers::pi;
        int b = std::min(bins - 1, static_cast<int>(th / (2.0 * std::numbers::pi) * bins));
        ++hist[b];
        ++total;
    }
    if (total == 0) fail(ErrorKind::NoUnitCircleRoots, "no unit-circle roots");
    double stat = 0.0;
    for (int h : hist) {
        double dev = static_cast<double>(h) / total - 1.0 / bins;
        stat += dev * dev;
    }
    return stat * bins;
}

}  // namespace siegel
