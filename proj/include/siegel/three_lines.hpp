#pragma once

#include <optional>
#include <string>
#include <vector>

#include "siegel/geometry.hpp"
#include "siegel/int_poly.hpp"

namespace siegel {

// Orbit lengths for the a- and b-indeterminacy points, one entry per index.
struct OrbitData {
    std::vector<int> m, n;

    int size() const { return static_cast<int>(m.size()); }
    void validate() const;
    std::string str() const;
};

class ThreeLinesParams {
public:
    ThreeLinesParams(ComplexBall delta, std::vector<ComplexBall> a, std::vector<ComplexBall> b);
    ThreeLinesParams(cplx delta, const std::vector<cplx>& a, const std::vector<cplx>& b);

    int size() const { return static_cast<int>(a_.size()); }
    const ComplexBall& delta() const { return delta_; }
    const std::vector<ComplexBall>& a() const { return a_; }
    const std::vector<ComplexBall>& b() const { return b_; }

    ComplexBall alpha() const;
    ComplexBall beta() const;
    ComplexBall c() const { return beta() - alpha(); }
    ComplexBall alpha0() const;
    ComplexBall beta0() const;
    ComplexBall d() const;  // (1 + delta)^2 / delta

    // Same map conjugated by [x:y:z] -> [kx:ky:z]: parameters scaled by k.
    ThreeLinesParams scaled(const ComplexBall& k) const;

    std::vector<cplx> a_centers() const;
    std::vector<cplx> b_centers() const;

private:
    ComplexBall delta_;
    std::vector<ComplexBall> a_, b_;
};

// Coefficients of prod (1 - y/r_i), constant term first.
template <class T>
std::vector<T> unit_product_coeffs(const std::vector<T>& roots)
{
    std::vector<T> c{T(1.0)};
    for (const auto& r : roots) {
        T s = T(0.0) - T(1.0) / r;
        std::vector<T> next(c.size() + 1, T(0.0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] = next[k] + c[k];
            next[k + 1] = next[k + 1] + c[k] * s;
        }
        c = std::move(next);
    }
    return c;
}

// Homogeneous degree N+1 form [y D : G1 (x + delta y) : z D] with G1 = z^N g1(y/z),
// D = delta (H x - delta G1) and H the homogenized (g2 - g1)/y. g1c and g2c come from unit_product_coeffs.
template <class T>
std::array<T, 3> tl_components(const T& delta, const std::vector<T>& g1c, const std::vector<T>& g2c, const T& x,
                               const T& y, const T& z)
{
    const std::size_t n = g1c.size() - 1;
    std::vector<T> yp(n + 1, T(1.0)), zp(n + 1, T(1.0));
    for (std::size_t k = 1; k <= n; ++k) {
        yp[k] = yp[k - 1] * y;
        zp[k] = zp[k - 1] * z;
    }
    T g1(0.0), h(0.0);
    for (std::size_t k = 0; k <= n; ++k) g1 = g1 + g1c[k] * yp[k] * zp[n - k];
    for (std::size_t k = 1; k <= n; ++k) h = h + (g2c[k] - g1c[k]) * yp[k - 1] * zp[n - k];
    T dd = delta * (h * x - delta * g1);
    return {y * dd, g1 * (x + delta * y), z * dd};
}

ProjectivePoint tl_map_eval(const ThreeLinesParams& params, const ProjectivePoint& pt);
std::pair<cplx, cplx> tl_map_eval(const ThreeLinesParams& params, cplx x, cplx y);

struct IndeterminacySet {
    // Order: a-points, b-points, then the point on the line at infinity.
    std::vector<ProjectivePoint> forward, backward;
    std::vector<std::string> labels;
};

IndeterminacySet indeterminacy(const ThreeLinesParams& params);

// Closed form of the 3k-th iterate restricted to x = 0.
cplx h_iterate(const ThreeLinesParams& params, long long k, cplx x);

ComplexBall a_coefficient(const ComplexBall& delta, int k);
ComplexBall b_coefficient(const ComplexBall& delta, int k);

// Parameters closing all orbits at the prescribed lengths. With real_params the
// (provably real, for delta on the unit circle) values are projected to the real axis.
ThreeLinesParams ab_from_delta(const ComplexBall& delta, const OrbitData& orbit, bool real_params = false);

ComplexBall chi(const ComplexBall& delta, const OrbitData& orbit);

// chi = 1 with denominators cleared, before cyclotomic stripping.
IntPolynomial chi_cleared(const OrbitData& orbit);
IntPolynomial salem_from_orbit(const OrbitData& orbit);

struct OrbitStep {
    std::string label;
    int length = 0;
    double residual = 0.0;
    std::optional<int> collision_step;
    std::string collision_with;
};

struct OrbitReport {
    bool ok = false;
    double max_residual = 0.0;
    std::vector<OrbitStep> orbits;
};

OrbitReport orbit_verify(const ThreeLinesParams& params, const OrbitData& orbit);

// Records w0, the N diagonal points and the two points at infinity. on_circle asserts
// |delta| = 1 with real a, b, which lets realness of diagonal roots and s be certified.
std::vector<FixedPointRecord> fixed_points_tl(const ThreeLinesParams& params, bool on_circle = false);

ComplexBall trace_affine(const ThreeLinesParams& params, const ComplexBall& x);

Jacobian tl_jacobian(const ThreeLinesParams& params, Chart chart, const ComplexBall& u, const ComplexBall& v);

struct InfinityCheck {
    ComplexBall ratio;  // beta0 / alpha0
    IntervalVerdict ratio_verdict = IntervalVerdict::Unknown;
    std::array<ComplexBall, 2> t, s;
    IntervalVerdict eigen_verdict = IntervalVerdict::Unknown;

    bool consistent() const;
};

InfinityCheck infinity_criterion(const ThreeLinesParams& params);
InfinityCheck infinity_criterion(const ComplexBall& delta, const ComplexBall& ratio);

}  // namespace siegel
