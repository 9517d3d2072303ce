#include <doctest.h>

#include <cmath>
#include <random>

#include "siegel/cohomology.hpp"
#include "siegel/error.hpp"
#include "siegel/roots.hpp"

using namespace siegel;

namespace {

const IntPolynomial kS{1, -2, 1, -2, 1, -2, 1, -2, 1};

// Faddeev-LeVerrier over Z: every division by k is exact.
IntPolynomial faddeev_leverrier(const ActionMatrix& a)
{
    const int n = a.dim;
    using Mat = std::vector<std::vector<BigInt>>;
    auto mul = [n](const Mat& x, const Mat& y) {
        Mat z(n, std::vector<BigInt>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (x[i][k] == 0) continue;
                for (int j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
            }
        return z;
    };
    Mat am(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) am[i][j] = a.entries[i][j];
    std::vector<BigInt> c(n + 1, 0);
    c[n] = 1;
    Mat mk(n, std::vector<BigInt>(n, 0));
    for (int k = 1; k <= n; ++k) {
        Mat next = mul(am, mk);
        for (int i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
        mk = next;
        Mat prod = mul(am, mk);
        BigInt tr = 0;
        for (int i = 0; i < n; ++i) tr += prod[i][i];
        REQUIRE(tr % k == 0);
        c[n - k] = -tr / k;
    }
    return IntPolynomial(c);
}

long double chi_value(long double d, const OrbitData& o)
{
    auto u = [d](int k) {
        long double s = 0;
        for (int i = 0; i < k; ++i) s += std::pow(d, 3.0L * i);
        return s;
    };
    long double v = 0;
    for (int n : o.n) v += d * d * u(n) / (std::pow(d, 3.0L * n + 1) + 1);
    for (int m : o.m) v += d * u(m) / (std::pow(d, 3.0L * m - 1) + 1);
    return v;
}

double chi_root_bisect(const OrbitData& o)
{
    long double lo = 1.0L, hi = 16.0L;
    for (int i = 0; i < 200; ++i) {
        long double mid = 0.5L * (lo + hi);
        (chi_value(mid, o) > 1.0L ? lo : hi) = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

bool reciprocal_up_to_sign(const IntPolynomial& p)
{
    const auto& c = p.coeffs();
    const int n = p.degree();
    bool plus = true, minus = true;
    for (int k = 0; k <= n; ++k) {
        if (c[k] != c[n - k]) plus = false;
        if (c[k] != -c[n - k]) minus = false;
    }
    return plus || minus;
}

OrbitData random_orbit(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> size(1, 3), len(1, 4);
    OrbitData o;
    int n = size(rng);
    for (int i = 0; i < n; ++i) {
        o.m.push_back(len(rng));
        o.n.push_back(len(rng));
    }
    if (n == 1 && o.m[0] == 1 && o.n[0] == 1) o.m[0] = 2;
    return o;
}

}  // namespace

TEST_CASE("quad matrix shape and invariants")
{
    ActionMatrix m = quad_action_matrix(8, 8, 8);
    CHECK(m.dim == 28);
    CHECK(m.labels.front() == "H");
    CHECK(m.labels[1] == "E(1,0)");
    CHECK(m.labels[9] == "E(1,8)");
    CHECK(preserves_form(m));
    CHECK(act_on(m, canonical_class(m)) == canonical_class(m));
    CHECK(m.trace() <= 2);
    CHECK(fixed_point_bound(m) <= 4);

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> len(0, 9);
    std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (int i = 0; i < 100; ++i) {
        ActionMatrix q = quad_action_matrix(len(rng), len(rng), len(rng), perms[i % 6]);
        CHECK(preserves_form(q));
        CHECK(act_on(q, canonical_class(q)) == canonical_class(q));
        CHECK(q.trace() <= 2);
        CHECK(reciprocal_up_to_sign(characteristic_polynomial(q)));
    }
    CHECK_THROWS_AS(quad_action_matrix(-1, 0, 0), Error);
    CHECK_THROWS_AS(quad_action_matrix(1, 1, 1, {0, 0, 1}), Error);
}

TEST_CASE("tl matrix shape and invariants")
{
    OrbitData o{{1, 2}, {1, 1}};
    ActionMatrix m = tl_action_matrix(o);
    CHECK(m.dim == 1 + 3 + (2 + 5) + (4 + 4));
    CHECK(m.trace() == 3);
    CHECK(preserves_form(m));
    CHECK(act_on(m, canonical_class(m)) == canonical_class(m));

    std::mt19937_64 rng(23);
    for (int i = 0; i < 60; ++i) {
        OrbitData r = random_orbit(rng);
        ActionMatrix t = tl_action_matrix(r);
        int expect = 4;
        for (int v : r.m) expect += 3 * v - 1;
        for (int v : r.n) expect += 3 * v + 1;
        CHECK(t.dim == expect);
        CHECK(preserves_form(t));
        CHECK(t.trace() <= r.size() + 1);
        CHECK(act_on(t, canonical_class(t)) == canonical_class(t));
        CHECK(reciprocal_up_to_sign(characteristic_polynomial(t)));
    }
    CHECK_THROWS_AS(tl_action_matrix(OrbitData{{1}, {1}}), Error);
}

TEST_CASE("exact characteristic polynomial against Faddeev-LeVerrier")
{
    CHECK(characteristic_polynomial(quad_action_matrix(8, 8, 8)) == faddeev_leverrier(quad_action_matrix(8, 8, 8)));
    CHECK(characteristic_polynomial(quad_action_matrix(3, 0, 5, {2, 0, 1})) ==
          faddeev_leverrier(quad_action_matrix(3, 0, 5, {2, 0, 1})));
    OrbitData o{{1, 2}, {1, 1}};
    CHECK(characteristic_polynomial(tl_action_matrix(o)) == faddeev_leverrier(tl_action_matrix(o)));

    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> dim(1, 12), entry(-40, 40);
    for (int i = 0; i < 40; ++i) {
        ActionMatrix a = ActionMatrix::identity(dim(rng));
        for (auto& row : a.entries)
            for (auto& e : row) e = entry(rng);
        CHECK(characteristic_polynomial(a) == faddeev_leverrier(a));
    }
    // Large entries force several primes in the reconstruction.
    ActionMatrix big = ActionMatrix::identity(6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) big.entries[i][j] = ((i * 7 + j * 13) % 11 - 5) * 1000003LL;
    CHECK(characteristic_polynomial(big) == faddeev_leverrier(big));
}

TEST_CASE("spectral data of the (8,8,8) quad matrix")
{
    ActionMatrix m = quad_action_matrix(8, 8, 8);
    SpectralData sd = spectral_data(m);
    CHECK(sd.charpoly.degree() == 28);
    CHECK(sd.salem_part == kS);
    CHECK(std::abs(sd.entropy - 0.6901) < 1e-3);
    CHECK(std::abs(sd.lambda.center().real() - 1.9940) < 1e-4);
    CHECK(sd.lambda.radius() < 1e-10);

    for (const auto& r : isolate_roots(ComplexPolynomial(kS))) CHECK(delta_eigen_check(m, r).contains_zero());
    CHECK_FALSE(delta_eigen_check(m, ComplexBall(cplx(0.3, 0.2))).contains_zero());
}

TEST_CASE("spectral data of tl matrices against chi bisection")
{
    for (OrbitData o : {OrbitData{{2}, {1}}, OrbitData{{1, 2}, {1, 1}}}) {
        CAPTURE(o.str());
        ActionMatrix m = tl_action_matrix(o);
        SpectralData sd = spectral_data(m);
        double oracle = chi_root_bisect(o);
        CHECK(std::abs(sd.lambda.center().real() - oracle) < 1e-9);
        CHECK(std::abs(sd.entropy - std::log(oracle)) < 1e-9);
        CHECK(sd.salem_part == salem_from_orbit(o));
        CHECK(m.trace() == o.size() + 1);
        CHECK(fixed_point_bound(m) == o.size() + 3);

        for (const auto& r : isolate_roots(ComplexPolynomial(sd.salem_part)))
            CHECK(delta_eigen_check(m, r).contains_zero());
    }
}

TEST_CASE("identity and negative controls")
{
    ActionMatrix id = ActionMatrix::identity(5);
    SpectralData sd = spectral_data(id);
    CHECK(sd.salem_part.degree() == 0);
    CHECK(sd.entropy == 0.0);
    CHECK(sd.lambda.center() == cplx(1.0, 0.0));
    CHECK(sd.cyclo_orders == std::vector<int>(5, 1));
    ComplexBall z = delta_eigen_check(id, ComplexBall(1.0));
    CHECK(z.center() == cplx(0.0, 0.0));
    CHECK(z.contains_zero());
    CHECK(fixed_point_bound(ActionMatrix::identity(1)) == 3);

    ActionMatrix fib = ActionMatrix::identity(2);
    fib.entries = {{1, 1}, {1, 0}};
    try {
        spectral_data(fib);
        FAIL("expected MixedFactor");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MixedFactor);
    }
}

TEST_CASE("plain-text dump")
{
    ActionMatrix m = quad_action_matrix(0, 0, 0);
    const std::string expected =
        "basis H E(1,0) E(2,0) E(3,0)\n"
        "H 2 1 1 1\n"
        "E(1,0) -1 0 -1 -1\n"
        "E(2,0) -1 -1 0 -1\n"
        "E(3,0) -1 -1 -1 0\n";
    CHECK(dump_matrix(m) == expected);
}
