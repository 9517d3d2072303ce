#include "siegel/cohomology.hpp"

#include <cmath>
#include <sstream>

#include "siegel/error.hpp"
#include "siegel/roots.hpp"

namespace siegel {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }

u64 powmod(u64 a, u64 e, u64 p)
{
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 reduce(long long v, u64 p)
{
    long long r = v % static_cast<long long>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<long long>(p) : r);
}

// Characteristic polynomial mod p via reduction to upper Hessenberg form.
std::vector<u64> charpoly_mod(const ActionMatrix& m, u64 p)
{
    const int n = m.dim;
    std::vector<std::vector<u64>> h(n, std::vector<u64>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h[i][j] = reduce(m.entries[i][j], p);

    for (int c = 1; c < n - 1; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (h[i][c - 1] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != c) {
            std::swap(h[piv], h[c]);
            for (int i = 0; i < n; ++i) std::swap(h[i][piv], h[i][c]);
        }
        u64 inv = invmod(h[c][c - 1], p);
        for (int j = c + 1; j < n; ++j) {
            if (h[j][c - 1] == 0) continue;
            u64 u = mulmod(h[j][c - 1], inv, p);
            for (int k = 0; k < n; ++k) h[j][k] = (h[j][k] + p - mulmod(u, h[c][k], p)) % p;
            for (int k = 0; k < n; ++k) h[k][c] = (h[k][c] + mulmod(u, h[k][j], p)) % p;
        }
    }

    // polys[k] is the characteristic polynomial of the leading k x k block.
    std::vector<std::vector<u64>> polys(n + 1);
    polys[0] = {1};
    for (int k = 1; k <= n; ++k) {
        std::vector<u64> cur(k + 1, 0);
        const auto& prev = polys[k - 1];
        for (int i = 0; i < k; ++i) {
            cur[i + 1] = (cur[i + 1] + prev[i]) % p;
            cur[i] = (cur[i] + p - mulmod(h[k - 1][k - 1], prev[i], p)) % p;
        }
        u64 prod = 1;
        for (int i = k - 1; i >= 1; --i) {
            prod = mulmod(prod, h[i][i - 1], p);
            u64 coef = mulmod(prod, h[i - 1][k - 1], p);
            if (coef == 0) continue;
            const auto& q = polys[i - 1];
            for (std::size_t j = 0; j < q.size(); ++j) cur[j] = (cur[j] + p - mulmod(coef, q[j], p)) % p;
        }
        polys[k] = std::move(cur);
    }
    return polys[n];
}

// log2 of a bound on every coefficient: the k-th one is a sum of principal minors,
// each bounded by the product of its column norms.
double coefficient_bound_bits(const ActionMatrix& m)
{
    double bits = 0.0;
    for (int j = 0; j < m.dim; ++j) {
        double sq = 0.0;
        for (int i = 0; i < m.dim; ++i) sq += static_cast<double>(m.entries[i][j]) * static_cast<double>(m.entries[i][j]);
        bits += std::log2(1.0 + std::sqrt(sq));
    }
    return bits;
}

void check_square(const ActionMatrix& m)
{
    if (m.dim < 1 || static_cast<int>(m.entries.size()) != m.dim)
        fail(ErrorKind::InvalidArgument, "action matrix has inconsistent dimension");
    for (const auto& row : m.entries)
        if (static_cast<int>(row.size()) != m.dim) fail(ErrorKind::InvalidArgument, "action matrix is not square");
}

// Builder over a labelled basis: H first, then each orbit oldest step first.
struct Basis {
    ActionMatrix mat;
    std::vector<int> start, length;

    explicit Basis(const std::vector<std::pair<std::string, int>>& orbits)
    {
        mat.labels.push_back("H");
        for (const auto& [id, len] : orbits) {
            start.push_back(static_cast<int>(mat.labels.size()));
            length.push_back(len);
            for (int s = 0; s <= len; ++s) mat.labels.push_back("E(" + id + "," + std::to_string(s) + ")");
        }
        mat.dim = static_cast<int>(mat.labels.size());
        mat.entries.assign(mat.dim, std::vector<long long>(mat.dim, 0));
        mat.form.assign(mat.dim, -1);
        mat.form[0] = 1;
    }

    int first(int orbit) const { return start[orbit]; }
    int last(int orbit) const { return start[orbit] + length[orbit]; }

    void add(int image_of, int component, long long coef) { mat.entries[component][image_of] += coef; }

    void shift_steps()
    {
        for (std::size_t o = 0; o < start.size(); ++o)
            for (int s = 1; s <= length[o]; ++s) add(start[o] + s, start[o] + s - 1, 1);
    }
};

}  // namespace

long long ActionMatrix::trace() const
{
    long long t = 0;
    for (int i = 0; i < dim; ++i) t += entries[i][i];
    return t;
}

ActionMatrix ActionMatrix::identity(int dim)
{
    if (dim < 1) fail(ErrorKind::InvalidArgument, "identity dimension must be positive");
    ActionMatrix m;
    m.dim = dim;
    m.entries.assign(dim, std::vector<long long>(dim, 0));
    m.form.assign(dim, -1);
    m.form[0] = 1;
    m.labels.push_back("H");
    for (int i = 1; i < dim; ++i) {
        m.entries[i][i] = 1;
        m.labels.push_back("E(" + std::to_string(i) + ",0)");
    }
    m.entries[0][0] = 1;
    return m;
}

std::vector<long long> canonical_class(const ActionMatrix& m)
{
    std::vector<long long> k(m.dim, 1);
    k[0] = -3;
    return k;
}

std::vector<long long> act_on(const ActionMatrix& m, const std::vector<long long>& v)
{
    if (static_cast<int>(v.size()) != m.dim) fail(ErrorKind::InvalidArgument, "vector length mismatch");
    std::vector<long long> out(m.dim, 0);
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) out[i] += m.entries[i][j] * v[j];
    return out;
}

bool preserves_form(const ActionMatrix& m)
{
    check_square(m);
    for (int a = 0; a < m.dim; ++a)
        for (int b = a; b < m.dim; ++b) {
            long long s = 0;
            for (int i = 0; i < m.dim; ++i) s += m.entries[i][a] * m.form[i] * m.entries[i][b];
            if (s != (a == b ? m.form[a] : 0)) return false;
        }
    return true;
}

ActionMatrix quad_action_matrix(int n1, int n2, int n3, std::array<int, 3> sigma)
{
    const std::array<int, 3> n{n1, n2, n3};
    for (int v : n)
        if (v < 0) fail(ErrorKind::InvalidArgument, "orbit lengths must be non-negative");
    std::array<bool, 3> seen{};
    for (int s : sigma) {
        if (s < 0 || s > 2 || seen[s]) fail(ErrorKind::InvalidArgument, "sigma is not a permutation of {0,1,2}");
        seen[s] = true;
    }

    Basis basis({{"1", n[0]}, {"2", n[1]}, {"3", n[2]}});
    basis.add(0, 0, 2);
    for (int l = 0; l < 3; ++l) basis.add(0, basis.last(l), -1);
    // The line through the two forward points other than p_i^+ is contracted onto p_i^-.
    for (int i = 0; i < 3; ++i) {
        basis.add(basis.first(i), 0, 1);
        for (int l = 0; l < 3; ++l)
            if (sigma[l] != i) basis.add(basis.first(i), basis.last(l), -1);
    }
    basis.shift_steps();
    return basis.mat;
}

ActionMatrix tl_action_matrix(const OrbitData& orbit)
{
    orbit.validate();
    const int big_n = orbit.size();
    std::vector<std::pair<std::string, int>> orbits{{"0", 2}};
    for (int i = 0; i < big_n; ++i) orbits.push_back({"a" + std::to_string(i + 1), 3 * orbit.m[i] - 2});
    for (int j = 0; j < big_n; ++j) orbits.push_back({"b" + std::to_string(j + 1), 3 * orbit.n[j]});

    Basis basis(orbits);
    const int n_orbits = static_cast<int>(orbits.size());
    basis.add(0, 0, big_n + 1);
    basis.add(0, basis.last(0), -big_n);
    for (int o = 1; o < n_orbits; ++o) basis.add(0, basis.last(o), -1);

    basis.add(basis.first(0), 0, big_n);
    basis.add(basis.first(0), basis.last(0), -(big_n - 1));
    for (int o = 1; o < n_orbits; ++o) basis.add(basis.first(0), basis.last(o), -1);

    for (int o = 1; o < n_orbits; ++o) {
        basis.add(basis.first(o), 0, 1);
        basis.add(basis.first(o), basis.last(0), -1);
        basis.add(basis.first(o), basis.last(o), -1);
    }
    basis.shift_steps();
    return basis.mat;
}

IntPolynomial characteristic_polynomial(const ActionMatrix& m)
{
    check_square(m);
    const double need = coefficient_bound_bits(m) + 2.0;
    std::vector<BigInt> value(m.dim + 1, 0);
    BigInt modulus = 1;
    double have = 0.0;
    for (u64 p = (u64(1) << 31) - 1; have < need; p -= 2) {
        if (!is_prime(p)) continue;
        std::vector<u64> r = charpoly_mod(m, p);
        const u64 mod_p = static_cast<u64>(modulus % p);
        const u64 inv = invmod(mod_p, p);
        for (int k = 0; k <= m.dim; ++k) {
            u64 cur = static_cast<u64>(value[k] % p);
            u64 step = mulmod((r[k] + p - cur) % p, inv, p);
            value[k] += modulus * step;
        }
        modulus *= p;
        have += std::log2(static_cast<double>(p));
    }
    const BigInt half = modulus / 2;
    for (auto& v : value)
        if (v > half) v -= modulus;
    return IntPolynomial(std::move(value));
}

SpectralData spectral_data(const ActionMatrix& m)
{
    SpectralData out;
    out.charpoly = characteristic_polynomial(m);
    CyclotomicSplit split = strip_cyclotomic(out.charpoly);
    out.salem_part = split.salem_part;
    out.cyclo_orders = split.orders;
    if (out.salem_part.degree() < 1) return out;

    const IntPolynomial& s = out.salem_part;
    if (s.degree() == 2 && s.is_monic() && s.is_palindromic()) {
        // Reciprocal quadratic unit t^2 - c t + 1 with |c| > 2: real roots lambda, 1/lambda.
        ComplexBall c(-s.coeff(1).convert_to<double>());
        ComplexBall disc = square(c) - ComplexBall(4.0);
        if (disc.re_lo() > 0.0) {
            ComplexBall root = (c + sqrt(disc)) * ComplexBall(0.5);
            ComplexBall other = (c - sqrt(disc)) * ComplexBall(0.5);
            out.lambda = root.mag_lower() > other.mag_upper() ? root : other;
            out.entropy = std::log(std::abs(out.lambda.center().real()));
            return out;
        }
    }
    SalemCheck check = is_salem(s);
    if (!check.accepted)
        fail(ErrorKind::MixedFactor, "non-cyclotomic factor " + s.str() + " is not Salem: " + check.reason);
    out.lambda = check.certificate.lambda;
    out.entropy = std::log(out.lambda.center().real());
    return out;
}

ComplexBall delta_eigen_check(const ActionMatrix& m, const ComplexBall& delta)
{
    return characteristic_polynomial(m).eval(delta);
}

long long fixed_point_bound(const ActionMatrix& m) { return m.trace() + 2; }

std::string dump_matrix(const ActionMatrix& m)
{
    std::ostringstream os;
    os << "basis";
    for (const auto& l : m.labels) os << ' ' << l;
    os << '\n';
    for (int i = 0; i < m.dim; ++i) {
        os << m.labels[i];
        for (int j = 0; j < m.dim; ++j) os << ' ' << m.entries[i][j];
        os << '\n';
    }
    return os.str();
}

}  // namespace siegel
