#include "siegel/roots.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace siegel {

using detail::kUnit;
using detail::round_up;

ComplexPolynomial::ComplexPolynomial(std::vector<ComplexBall> coeffs) : coeffs_(std::move(coeffs))
{
    while (!coeffs_.empty() && coeffs_.back().center() == cplx(0.0, 0.0) && coeffs_.back().radius() == 0.0) coeffs_.pop_back();
}

ComplexPolynomial::ComplexPolynomial(const std::vector<cplx>& coeffs)
    : ComplexPolynomial(std::vector<ComplexBall>(coeffs.begin(), coeffs.end()))
{
}

ComplexPolynomial::ComplexPolynomial(const IntPolynomial& p)
{
    for (const auto& c : p.coeffs()) coeffs_.push_back(IntPolynomial::constant(c).eval(ComplexBall(0.0)));
}

ComplexBall ComplexPolynomial::eval(const ComplexBall& z) const
{
    ComplexBall acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx ComplexPolynomial::eval_center(cplx z) const
{
    cplx acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->center();
    return acc;
}

void ComplexPolynomial::eval_with_derivative(cplx z, cplx& value, cplx& deriv, double& err) const
{
    value = cplx(0.0, 0.0);
    deriv = cplx(0.0, 0.0);
    double mag = 0.0, az = std::abs(z), rad = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        deriv = deriv * z + value;
        value = value * z + it->center();
        mag = mag * az + std::abs(it->center());
        rad = rad * az + it->radius();
    }
    err = 4.0 * kUnit * static_cast<double>(coeffs_.size() + 1) * mag + rad;
}

bool RootSet::has_cluster() const
{
    return std::any_of(cluster_size.begin(), cluster_size.end(), [](int s) { return s > 1; });
}

namespace {

std::vector<cplx> aberth(const ComplexPolynomial& p, const RootOptions& opts, int& iterations)
{
    const int n = p.degree();
    const auto& c = p.coeffs();
    double a0 = std::abs(c.front().center()), an = std::abs(c.back().center());
    double R = a0 > 0.0 ? std::pow(a0 / an, 1.0 / n) : 1.0;
    if (!(R > 0.0) || !std::isfinite(R)) R = 1.0;
    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(R, 2.0 * std::numbers::pi * k / n + 0.7);

    std::vector<char> done(static_cast<std::size_t>(n), 0);
    int polish = 2;
    for (iterations = 0; iterations < opts.max_iterations; ++iterations) {
        bool all_done = true;
        for (int i = 0; i < n; ++i) {
            if (done[i] && polish <= 0) continue;
            cplx v, d;
            double err;
            p.eval_with_derivative(z[i], v, d, err);
            if (std::abs(v) <= err) {
                done[i] = 1;
                continue;
            }
            cplx sum(0.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            cplx ratio = d == cplx(0.0, 0.0) ? cplx(1e-3, 1e-3) : v / d;
            cplx w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = cplx(1e-3 * std::max(1.0, std::abs(z[i])), 0.0);
            z[i] -= w;
            if (std::abs(w) <= opts.tol * std::max(1.0, std::abs(z[i]))) done[i] = 1;
            else {
                done[i] = 0;
                all_done = false;
            }
        }
        if (all_done) {
            if (polish-- <= 0) return z;
        }
    }
    fail(ErrorKind::NonConvergence, "root iteration cap of " + std::to_string(opts.max_iterations) + " reached at degree " + std::to_string(n));
}

}  // namespace

RootSet poly_roots(const ComplexPolynomial& p, const RootOptions& opts)
{
    const int n = p.degree();
    if (n < 1) fail(ErrorKind::InvalidArgument, "poly_roots needs degree >= 1");
    if (!(opts.tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
    const ComplexBall& lead = p.coeffs().back();
    if (lead.contains_zero()) fail(ErrorKind::InvalidArgument, "leading coefficient may vanish");

    RootSet out;
    if (n == 1) {
        out.balls.push_back(-p.coeffs()[0] / lead);
        out.cluster = {0};
        out.cluster_size = {1};
        return out;
    }

    std::vector<cplx> z = aberth(p, opts, out.iterations);

    // Weierstrass corrections give inclusion disks of radius n|W_i|; each connected component
    // of k disks holds exactly k roots.
    std::vector<double> rad(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        ComplexBall val = p.eval(ComplexBall(z[i]));
        ComplexBall denom = lead;
        for (int j = 0; j < n; ++j)
            if (j != i) denom = denom * (ComplexBall(z[i]) - ComplexBall(z[j]));
        double lo = denom.mag_lower();
        double r = lo > 0.0 ? round_up(n * val.mag_upper() / lo) : 1e300;
        rad[i] = std::isfinite(r) ? std::min(r, 1e300) : 1e300;
    }

    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(z[i] - z[j]) <= round_up(rad[i] + rad[j])) parent[find(i)] = find(j);

    out.balls.resize(static_cast<std::size_t>(n));
    out.cluster.resize(static_cast<std::size_t>(n));
    out.cluster_size.resize(static_cast<std::size_t>(n));
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    int next_label = 0;
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        if (label[root] < 0) label[root] = next_label++;
    }
    for (int i = 0; i < n; ++i) {
        std::vector<int> members;
        for (int j = 0; j < n; ++j)
            if (find(j) == find(i)) members.push_back(j);
        out.cluster[i] = label[find(i)];
        out.cluster_size[i] = static_cast<int>(members.size());
        if (members.size() == 1) {
            out.balls[i] = ComplexBall(z[i], rad[i]);
            continue;
        }
        cplx mid(0.0, 0.0);
        for (int j : members) mid += z[j];
        mid /= static_cast<double>(members.size());
        double r = 0.0;
        for (int j : members) r = std::max(r, std::abs(z[j] - mid) + rad[j]);
        out.balls[i] = ComplexBall(mid, round_up(r));
    }
    return out;
}

std::vector<ComplexBall> isolate_roots(const ComplexPolynomial& p, const RootOptions& opts)
{
    RootSet rs = poly_roots(p, opts);
    if (rs.has_cluster()) fail(ErrorKind::ClusterUnresolved, "root disks overlap at tol " + std::to_string(opts.tol));
    return rs.balls;
}

SalemCheck is_salem(const IntPolynomial& p, const RootOptions& opts)
{
    SalemCheck out;
    out.certificate.reciprocal = p.is_palindromic();
    auto reject = [&](std::string why) {
        out.accepted = false;
        out.reason = std::move(why);
        return out;
    };
    if (!p.is_monic()) return reject("not monic");
    if (p.degree() < 4) return reject("degree below 4");
    if (p.degree() % 2 != 0) return reject("odd degree");
    if (!out.certificate.reciprocal) return reject("not reciprocal");
    CyclotomicSplit split = strip_cyclotomic(p);
    if (!split.orders.empty()) return reject("divisible by cyclotomic polynomial of order " + std::to_string(split.orders.front()));

    std::vector<ComplexBall> roots = isolate_roots(ComplexPolynomial(p), opts);
    const int n = static_cast<int>(roots.size());
    std::vector<CirclePosition> pos(static_cast<std::size_t>(n));
    int outside = 0, inside = 0, circle = 0, lambda_index = -1;
    for (int i = 0; i < n; ++i) {
        const ComplexBall& b = roots[i];
        if (b.mag_lower() > 1.0) {
            pos[i] = CirclePosition::Outside;
            ++outside;
            lambda_index = i;
            continue;
        }
        if (b.mag_upper() < 1.0) {
            pos[i] = CirclePosition::Inside;
            ++inside;
            continue;
        }
        // Roots of a real reciprocal polynomial are closed under z -> 1/conj(z); if the image of an
        // isolating ball meets no other ball, the root is its own image and lies on the circle.
        ComplexBall image = inverse(b.conj());
        bool alone = true;
        for (int j = 0; j < n && alone; ++j)
            if (j != i && image.overlaps(roots[j])) alone = false;
        if (!alone) fail(ErrorKind::BoundaryUndecidable, "root ball " + b.str() + " straddles the unit circle");
        pos[i] = CirclePosition::OnCircle;
        ++circle;
    }
    out.certificate.roots = roots;
    out.certificate.positions = pos;
    out.certificate.n_circle_roots = circle;
    if (outside != 1 || inside != 1)
        return reject(std::to_string(outside) + " roots outside and " + std::to_string(inside) + " inside the unit circle");
    const ComplexBall& lam = roots[lambda_index];
    for (int j = 0; j < n; ++j)
        if (j != lambda_index && lam.conj().overlaps(roots[j])) fail(ErrorKind::BoundaryUndecidable, "cannot separate the dominant root from its conjugate");
    if (!(lam.center().real() > 1.0)) return reject("dominant root is not a positive real number");
    out.certificate.lambda = real_part_ball(lam);
    out.certificate.lambda_index = lambda_index;
    out.accepted = true;
    return out;
}

std::vector<int> upper_circle_roots(const SalemCertificate& cert)
{
    std::vector<int> idx;
    for (std::size_t i = 0; i < cert.roots.size(); ++i)
        if (cert.positions[i] == CirclePosition::OnCircle && cert.roots[i].center().imag() > 0.0) idx.push_back(static_cast<int>(i));
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return std::arg(cert.roots[a].center()) < std::arg(cert.roots[b].center()); });
    return idx;
}

}  // namespace siegel
