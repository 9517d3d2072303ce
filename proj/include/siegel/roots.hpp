#pragma once

#include <string>
#include <vector>

#include "siegel/ball.hpp"
#include "siegel/int_poly.hpp"

namespace siegel {

// Polynomial with ball coefficients; exact inputs carry radius zero.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<ComplexBall> coeffs);
    explicit ComplexPolynomial(const std::vector<cplx>& coeffs);
    explicit ComplexPolynomial(const IntPolynomial& p);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<ComplexBall>& coeffs() const { return coeffs_; }

    ComplexBall eval(const ComplexBall& z) const;
    cplx eval_center(cplx z) const;
    // Value and derivative at the coefficient centers, with a bound on the rounding error of the value.
    void eval_with_derivative(cplx z, cplx& value, cplx& deriv, double& err) const;

private:
    std::vector<ComplexBall> coeffs_;
};

struct RootOptions {
    double tol = 1e-12;
    int max_iterations = 500;
};

struct RootSet {
    std::vector<ComplexBall> balls;
    std::vector<int> cluster;       // component id per ball
    std::vector<int> cluster_size;  // size of that component per ball
    int iterations = 0;

    bool has_cluster() const;
};

// Simultaneous Aberth iteration followed by an a-posteriori inclusion test. Balls in the same
// connected component are reported with the component's enclosing disk and a cluster flag.
RootSet poly_roots(const ComplexPolynomial& p, const RootOptions& opts = {});

// Same, but every ball must isolate a single root.
std::vector<ComplexBall> isolate_roots(const ComplexPolynomial& p, const RootOptions& opts = {});

enum class CirclePosition { Outside, Inside, OnCircle };

struct SalemCertificate {
    ComplexBall lambda;
    int n_circle_roots = 0;
    bool reciprocal = false;
    std::vector<ComplexBall> roots;
    std::vector<CirclePosition> positions;
    int lambda_index = -1;
};

struct SalemCheck {
    bool accepted = false;
    std::string reason;
    SalemCertificate certificate;
};

SalemCheck is_salem(const IntPolynomial& p, const RootOptions& opts = {});

// Indices of certified unit-circle roots in the upper half plane, ordered by argument.
std::vector<int> upper_circle_roots(const SalemCertificate& cert);

}  // namespace siegel
