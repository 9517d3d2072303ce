#pragma once

#include <array>
#include <vector>

#include "siegel/geometry.hpp"
#include "siegel/int_poly.hpp"

namespace siegel {

// Quadratic birational map preserving the cuspidal cubic y z^2 = x^3, determinant delta.
class CuspidalParams {
public:
    explicit CuspidalParams(cplx delta);

    cplx delta() const { return delta_; }
    cplx d() const { return (1.0 - delta_) / (3.0 * delta_); }
    cplx tau() const { return delta_ + 1.0 / delta_; }

private:
    cplx delta_;
};

// Homogeneous components, generic in the scalar type so the same code yields values and Jacobians.
template <class T>
std::array<T, 3> quad_components(const T& delta, const T& d, const T& x, const T& y, const T& z)
{
    T d2 = d * d, d3 = d2 * d, d4 = d3 * d, d6 = d3 * d3;
    T two(2.0), three(3.0);
    T fx = delta * (x * y - two * d * y * z + two * d3 * x * z - d4 * z * z);
    T fy = delta * delta * delta * (y * y - three * d2 * x * y + three * d4 * x * x - d6 * z * z);
    T fz = y * z - three * d * x * x + three * d2 * x * z - d3 * z * z;
    return {fx, fy, fz};
}

ProjectivePoint quad_map_eval(const CuspidalParams& params, const ProjectivePoint& pt);

// Parameter t of the curve point [t : t^3 : 1].
cplx curve_restriction(const CuspidalParams& params, cplx t);
ProjectivePoint curve_point(cplx t);

// Integer polynomial in delta whose roots close the orbit of the first indeterminacy point at step n.
IntPolynomial orbit_polynomial(int n);

// Residual of the closure identity -delta^(n+1) d + (1 - delta^n)/3 - d.
cplx orbit_closure_residual(cplx delta, int n);

// Fixed points off the curve. When delta is known to lie on the unit circle the reality of tau,
// of the abscissas and of s is propagated.
std::array<FixedPointRecord, 2> fixed_points_cuspidal(const ComplexBall& delta, bool delta_on_circle = false);
std::array<FixedPointRecord, 2> fixed_points_cuspidal(const CuspidalParams& params);

// Fixed points on the curve: the cusp and p(1/3). The eigenvalue closed forms at p(1/3) hold when
// delta is a root of orbit_polynomial(n).
std::array<FixedPointRecord, 2> curve_fixed_points_cuspidal(const ComplexBall& delta, int n);

ComplexBall s_value(const ComplexBall& tau, const ComplexBall& x);

Jacobian cuspidal_jacobian(const ComplexBall& delta, Chart chart, const ComplexBall& u, const ComplexBall& v);

// Q_tau coefficients (constant first) and r_tau at x.
std::array<ComplexBall, 3> q_tau_coeffs(const ComplexBall& tau);
ComplexBall r_tau(const ComplexBall& tau, const ComplexBall& x);

// delta^2 Q_{delta + 1/delta}(x) as a polynomial in delta with coefficients in Z[x].
BiPolynomial cleared_q_tau();

}  // namespace siegel
