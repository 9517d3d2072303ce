#include "siegel/int_poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace siegel {

namespace {

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

ComplexBall big_to_ball(const BigInt& v)
{
    static const BigInt exact_limit = BigInt(1) << 53;
    double d = v.convert_to<double>();
    if (abs_big(v) <= exact_limit) return ComplexBall(d);
    return {cplx(d, 0.0), detail::round_up(std::abs(d) * 0x1p-51)};
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long long> coeffs)
{
    for (long long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }

IntPolynomial IntPolynomial::monomial(int degree, const BigInt& c)
{
    std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::from_ints(const std::vector<long long>& coeffs)
{
    std::vector<BigInt> v(coeffs.begin(), coeffs.end());
    return IntPolynomial(std::move(v));
}

void IntPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coeff(int i) const
{
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

const BigInt& IntPolynomial::lead() const
{
    if (coeffs_.empty()) fail(ErrorKind::InvalidArgument, "leading coefficient of the zero polynomial");
    return coeffs_.back();
}

bool IntPolynomial::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

bool IntPolynomial::is_palindromic() const
{
    return std::equal(coeffs_.begin(), coeffs_.end(), coeffs_.rbegin());
}

IntPolynomial IntPolynomial::reversed() const
{
    std::vector<BigInt> v(coeffs_.rbegin(), coeffs_.rend());
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::derivative() const
{
    if (degree() < 1) return {};
    std::vector<BigInt> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long long>(i);
    return IntPolynomial(std::move(v));
}

BigInt IntPolynomial::content() const
{
    BigInt g = 0;
    for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
    return g;
}

IntPolynomial IntPolynomial::primitive() const
{
    if (is_zero()) return {};
    BigInt g = content();
    if (lead() < 0) g = -g;
    std::vector<BigInt> v(coeffs_);
    for (auto& c : v) c /= g;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::negated() const
{
    std::vector<BigInt> v(coeffs_);
    for (auto& c : v) c = -c;
    return IntPolynomial(std::move(v));
}

BigInt IntPolynomial::eval(const BigInt& x) const
{
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

ComplexBall IntPolynomial::eval(const ComplexBall& z) const
{
    ComplexBall acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + big_to_ball(*it);
    return acc;
}

cplx IntPolynomial::eval_approx(cplx z) const
{
    cplx acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->convert_to<double>();
    return acc;
}

std::vector<long long> IntPolynomial::to_ints() const
{
    std::vector<long long> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        if (c > std::numeric_limits<long long>::max() || c < std::numeric_limits<long long>::min())
            fail(ErrorKind::InvalidArgument, "coefficient exceeds 64-bit range");
        out.push_back(c.convert_to<long long>());
    }
    return out;
}

std::string IntPolynomial::str(const std::string& var) const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        BigInt a = abs_big(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        if (a != 1 || i == 0) os << a;
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<BigInt> v(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) v[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) v[i] += b.coeffs()[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<BigInt> v(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) v[i] += a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) v[i] -= b.coeffs()[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> v(a.coeffs().size() + b.coeffs().size() - 1);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) v[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
    return IntPolynomial(std::move(v));
}

IntPolynomial operator*(const BigInt& s, const IntPolynomial& a)
{
    std::vector<BigInt> v(a.coeffs());
    for (auto& c : v) c *= s;
    return IntPolynomial(std::move(v));
}

std::optional<IntPolynomial> exact_divide(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.is_zero()) return IntPolynomial{};
    int da = a.degree(), db = b.degree();
    if (da < db) return std::nullopt;
    std::vector<BigInt> rem(a.coeffs());
    std::vector<BigInt> q(static_cast<std::size_t>(da - db + 1));
    const BigInt& lb = b.lead();
    for (int i = da - db; i >= 0; --i) {
        BigInt& top = rem[static_cast<std::size_t>(i + db)];
        if (top == 0) continue;
        BigInt quo, r;
        boost::multiprecision::divide_qr(top, lb, quo, r);
        if (r != 0) return std::nullopt;
        q[static_cast<std::size_t>(i)] = quo;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i + j)] -= quo * b.coeffs()[static_cast<std::size_t>(j)];
    }
    for (const auto& c : rem)
        if (c != 0) return std::nullopt;
    return IntPolynomial(std::move(q));
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "pseudo-remainder by zero");
    std::vector<BigInt> rem(a.coeffs());
    int db = b.degree();
    const BigInt& lb = b.lead();
    int dr = static_cast<int>(rem.size()) - 1;
    int steps = std::max(0, dr - db + 1);
    while (dr >= db && dr >= 0) {
        BigInt top = rem[static_cast<std::size_t>(dr)];
        for (auto& c : rem) c *= lb;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(dr - db + j)] -= top * b.coeffs()[static_cast<std::size_t>(j)];
        rem.pop_back();
        --steps;
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        dr = static_cast<int>(rem.size()) - 1;
    }
    for (int s = 0; s < steps; ++s)
        for (auto& c : rem) c *= lb;
    return IntPolynomial(std::move(rem));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    IntPolynomial x = a.primitive(), y = b.primitive();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPolynomial r = pseudo_remainder(x, y);
        x = y;
        y = r.is_zero() ? r : r.primitive();
    }
    return x.primitive();
}

IntPolynomial squarefree_part(const IntPolynomial& p)
{
    IntPolynomial g = gcd(p, p.derivative());
    auto q = exact_divide(p.primitive(), g);
    if (!q) fail(ErrorKind::InvalidArgument, "gcd does not divide its argument");
    return q->primitive();
}

IntPolynomial pow(const IntPolynomial& p, int e)
{
    IntPolynomial result{1};
    IntPolynomial base = p;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

long long euler_phi(long long k)
{
    long long result = k;
    for (long long p = 2; p * p <= k; ++p) {
        if (k % p == 0) {
            while (k % p == 0) k /= p;
            result -= result / p;
        }
    }
    if (k > 1) result -= result / k;
    return result;
}

namespace {

IntPolynomial substitute_power(const IntPolynomial& p, int e)
{
    std::vector<BigInt> v(static_cast<std::size_t>(p.degree() * e + 1));
    for (int i = 0; i <= p.degree(); ++i) v[static_cast<std::size_t>(i * e)] = p.coeffs()[static_cast<std::size_t>(i)];
    return IntPolynomial(std::move(v));
}

IntPolynomial compute_cyclotomic(int k)
{
    std::vector<int> primes;
    int m = k, radical = 1;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            primes.push_back(p);
            radical *= p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) {
        primes.push_back(m);
        radical *= m;
    }
    // Phi_r for squarefree r via the Moebius product over divisors.
    IntPolynomial numer{1}, denom{1};
    std::size_t n = primes.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        int d = 1, bits = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) {
                d *= primes[i];
                ++bits;
            }
        IntPolynomial factor = IntPolynomial::monomial(radical / d) - IntPolynomial{1};
        if (bits % 2 == 0) numer = numer * factor;
        else denom = denom * factor;
    }
    if (k == 1) return IntPolynomial{-1, 1};
    auto q = exact_divide(numer, denom);
    if (!q) fail(ErrorKind::InvalidArgument, "cyclotomic construction failed");
    IntPolynomial phi = q->lead() < 0 ? q->negated() : *q;
    return substitute_power(phi, k / radical);
}

}  // namespace

const IntPolynomial& cyclotomic(int k)
{
    if (k < 1) fail(ErrorKind::InvalidArgument, "cyclotomic index must be positive");
    static std::mutex mu;
    static std::map<int, IntPolynomial> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    return cache.emplace(k, compute_cyclotomic(k)).first->second;
}

std::vector<int> cyclotomic_indices_up_to_degree(int max_degree)
{
    std::vector<int> out;
    if (max_degree < 1) return out;
    // phi(k) >= sqrt(k/2) bounds the search range.
    long long limit = 2LL * max_degree * max_degree + 2;
    std::vector<int> phi(static_cast<std::size_t>(limit) + 1);
    for (long long i = 0; i <= limit; ++i) phi[static_cast<std::size_t>(i)] = static_cast<int>(i);
    for (long long i = 2; i <= limit; ++i) {
        if (phi[static_cast<std::size_t>(i)] != i) continue;
        for (long long j = i; j <= limit; j += i) phi[static_cast<std::size_t>(j)] -= phi[static_cast<std::size_t>(j)] / static_cast<int>(i);
    }
    for (long long k = 1; k <= limit; ++k)
        if (phi[static_cast<std::size_t>(k)] <= max_degree) out.push_back(static_cast<int>(k));
    return out;
}

CyclotomicSplit strip_cyclotomic(const IntPolynomial& p)
{
    if (p.is_zero()) fail(ErrorKind::InvalidArgument, "cannot strip the zero polynomial");
    CyclotomicSplit out{p, {}};
    if (p.degree() < 1) return out;
    for (int k : cyclotomic_indices_up_to_degree(p.degree())) {
        if (out.salem_part.degree() < euler_phi(k)) continue;
        // A primitive k-th root of unity is a root exactly when Phi_k divides; a ball excluding
        // zero proves it does not.
        double theta = 2.0 * std::numbers::pi / k;
        ComplexBall zeta = unit_phase(theta);
        zeta = ComplexBall(zeta.center(), zeta.radius() + 32.0 * detail::kUnit);
        if (!out.salem_part.eval(zeta).contains_zero()) continue;
        const IntPolynomial& phi = cyclotomic(k);
        while (out.salem_part.degree() >= phi.degree()) {
            auto q = exact_divide(out.salem_part, phi);
            if (!q) break;
            out.salem_part = *q;
            out.orders.push_back(k);
        }
    }
    return out;
}

BiPolynomial lift_outer(const IntPolynomial& p)
{
    BiPolynomial out;
    for (const auto& c : p.coeffs()) out.push_back(IntPolynomial::constant(c));
    return out;
}

IntPolynomial resultant(const BiPolynomial& p_in, const BiPolynomial& q_in, int size_cap)
{
    auto trimmed = [](BiPolynomial v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
        return v;
    };
    BiPolynomial p = trimmed(p_in), q = trimmed(q_in);
    if (p.empty() || q.empty()) fail(ErrorKind::InvalidArgument, "resultant of a zero polynomial");
    int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
    int size = m + n;
    if (size > size_cap) fail(ErrorKind::DegreeOverflow, "Sylvester matrix of size " + std::to_string(size) + " exceeds cap " + std::to_string(size_cap));
    if (size == 0) return IntPolynomial{1};
    std::vector<std::vector<IntPolynomial>> M(static_cast<std::size_t>(size), std::vector<IntPolynomial>(static_cast<std::size_t>(size)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = p[static_cast<std::size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = q[static_cast<std::size_t>(n - j)];

    // Bareiss fraction-free elimination over Z[x].
    int sign = 1;
    IntPolynomial prev{1};
    for (int k = 0; k < size - 1; ++k) {
        if (M[k][k].is_zero()) {
            int r = k + 1;
            while (r < size && M[r][k].is_zero()) ++r;
            if (r == size) return {};
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j) {
                IntPolynomial num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                auto quo = exact_divide(num, prev);
                if (!quo) fail(ErrorKind::InvalidArgument, "Bareiss step lost exactness");
                M[i][j] = *quo;
            }
            M[i][k] = {};
        }
        prev = M[k][k];
    }
    IntPolynomial det = M[size - 1][size - 1];
    return sign < 0 ? det.negated() : det;
}

IntPolynomial resultant(const IntPolynomial& p, const BiPolynomial& q, int size_cap)
{
    return resultant(lift_outer(p), q, size_cap);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;

struct Field {
    u64 p;
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 pw(u64 a, u64 e) const
    {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pw(a, p - 2); }
};

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, const Field& F)
{
    trim(a);
    u64 inv_lead = F.inv(m.back());
    while (a.size() >= m.size()) {
        u64 factor = F.mul(a.back(), inv_lead);
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(factor, m[i]));
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, const Field& F)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    return poly_mod(std::move(r), m, F);
}

Poly poly_gcd(Poly a, Poly b, const Field& F)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, const Field& F)
{
    Poly r{1};
    base = poly_mod(base, m, F);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, F);
        base = poly_mulmod(base, base, m, F);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool irreducible_mod_p(const IntPolynomial& p, std::uint64_t prime)
{
    if (!is_prime(prime)) fail(ErrorKind::BadPrime, std::to_string(prime) + " is not prime");
    if (prime >= (u64{1} << 62)) fail(ErrorKind::BadPrime, "prime too large for word arithmetic");
    if (p.is_zero()) fail(ErrorKind::InvalidArgument, "zero polynomial");
    BigInt bp = prime;
    if (p.lead() % bp == 0) fail(ErrorKind::BadPrime, std::to_string(prime) + " divides the leading coefficient");
    Field F{prime};
    Poly f;
    for (const auto& c : p.coeffs()) {
        BigInt r = c % bp;
        if (r < 0) r += bp;
        f.push_back(r.convert_to<u64>());
    }
    int n = p.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    u64 il = F.inv(f.back());
    for (auto& c : f) c = F.mul(c, il);
    Poly df(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) df[i - 1] = F.mul(f[i], i % prime);
    trim(df);
    if (df.empty()) return false;
    if (poly_gcd(f, df, F).size() > 1) return false;
    Poly h{0, 1};
    for (int i = 1; i <= n / 2; ++i) {
        h = poly_powmod(h, prime, f, F);
        Poly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = F.sub(diff[1], 1);
        trim(diff);
        if (diff.empty()) return false;
        if (poly_gcd(f, diff, F).size() > 1) return false;
    }
    return true;
}

std::vector<std::uint64_t> admissible_primes(const IntPolynomial& p, int count)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; static_cast<int>(out.size()) < count; ++q) {
        if (!is_prime(q)) continue;
        if (p.lead() % BigInt(q) == 0) continue;
        out.push_back(q);
    }
    return out;
}

}  // namespace siegel
