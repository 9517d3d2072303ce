#include "siegel/geometry.hpp"

#include <algorithm>

namespace siegel {

ProjectivePoint ProjectivePoint::make(cplx x, cplx y, cplx z)
{
    std::array<cplx, 3> v{x, y, z};
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(v[i]) > std::abs(v[k])) k = i;
    if (std::abs(v[k]) == 0.0) fail(ErrorKind::InvalidArgument, "all homogeneous coordinates vanish");
    cplx s = v[k];
    ProjectivePoint p{x / s, y / s, z / s};
    // Pin the dominant coordinate to exactly 1 so normalized points compare bitwise.
    if (k == 0) p.x = 1.0;
    else if (k == 1) p.y = 1.0;
    else p.z = 1.0;
    return p;
}

double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b)
{
    auto av = a.coords(), bv = b.coords();
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(av[i]) > std::abs(av[k])) k = i;
    if (std::abs(bv[k]) < 1e-300) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i) d = std::max(d, std::abs(av[i] / av[k] - bv[i] / bv[k]));
    return d;
}

std::pair<ComplexBall, ComplexBall> eigenvalues_from(const ComplexBall& trace, const ComplexBall& det)
{
    auto r = quadratic_roots(ComplexBall(1.0), -trace, det);
    return {r.first, r.second};
}

const char* to_string(Location loc)
{
    switch (loc) {
    case Location::CurveSingular: return "curve_singular";
    case Location::CurveSmooth: return "curve_smooth";
    case Location::AffineDiagonal: return "affine_diagonal";
    case Location::Infinity: return "infinity";
    case Location::Generic: return "generic";
    }
    return "generic";
}

}  // namespace siegel
