#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "siegel/ball.hpp"

namespace siegel {

using BigInt = boost::multiprecision::cpp_int;

// Dense univariate polynomial over Z; coeffs[i] multiplies t^i. The zero polynomial has no coefficients.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    IntPolynomial(std::initializer_list<long long> coeffs);

    static IntPolynomial constant(const BigInt& c);
    static IntPolynomial monomial(int degree, const BigInt& c = 1);
    static IntPolynomial from_ints(const std::vector<long long>& coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    BigInt coeff(int i) const;
    const BigInt& lead() const;

    bool is_monic() const;
    bool is_palindromic() const;
    IntPolynomial reversed() const;
    IntPolynomial derivative() const;
    BigInt content() const;
    IntPolynomial primitive() const;
    IntPolynomial negated() const;

    BigInt eval(const BigInt& x) const;
    ComplexBall eval(const ComplexBall& z) const;
    cplx eval_approx(cplx z) const;

    std::vector<long long> to_ints() const;
    std::string str(const std::string& var = "t") const;

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const BigInt& s, const IntPolynomial& a);

// Quotient when b divides a exactly over Z, otherwise nullopt.
std::optional<IntPolynomial> exact_divide(const IntPolynomial& a, const IntPolynomial& b);

// Pseudo-remainder lc(b)^(deg a - deg b + 1) a mod b.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

// Primitive gcd with positive leading coefficient.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

// p / gcd(p, p'), made primitive.
IntPolynomial squarefree_part(const IntPolynomial& p);

IntPolynomial pow(const IntPolynomial& p, int e);

long long euler_phi(long long k);

// k-th cyclotomic polynomial, cached and thread-safe.
const IntPolynomial& cyclotomic(int k);

// All k with phi(k) <= max_degree, ascending.
std::vector<int> cyclotomic_indices_up_to_degree(int max_degree);

struct CyclotomicSplit {
    IntPolynomial salem_part;
    std::vector<int> orders;  // one entry per factor, repeated with multiplicity
};

CyclotomicSplit strip_cyclotomic(const IntPolynomial& p);

// Polynomial in an outer variable whose coefficients are polynomials in an inner variable.
using BiPolynomial = std::vector<IntPolynomial>;

BiPolynomial lift_outer(const IntPolynomial& p);

// Resultant eliminating the outer variable; result is a polynomial in the inner variable.
IntPolynomial resultant(const BiPolynomial& p, const BiPolynomial& q, int size_cap = 64);
IntPolynomial resultant(const IntPolynomial& p, const BiPolynomial& q, int size_cap = 64);

bool is_prime(std::uint64_t n);

bool irreducible_mod_p(const IntPolynomial& p, std::uint64_t prime);

// First `count` primes not dividing the leading coefficient.
std::vector<std::uint64_t> admissible_primes(const IntPolynomial& p, int count);

}  // namespace siegel
