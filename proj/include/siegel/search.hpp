#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siegel/three_lines.hpp"

namespace siegel {

// Unit-circle delta in the upper half plane with (1 + delta)^2 / delta = d, for 0 <= d <= 4.
ComplexBall delta_from_d(double d);

// Rescales a and b so that sum 1/b - sum 1/a = 1. The map is conjugate to the original.
ThreeLinesParams normalize(const ThreeLinesParams& params);

// Parameters whose N diagonal and two infinite fixed points all have s in (0, 4).
// Solves y_i(b) = x_i by continuation in d from 1 down to d_target.
ThreeLinesParams construct_c0(int n, double d_target);

// Equal-parameter seed b0 = 1, a0 = 4^(1/N), d = 1/16, perturbed to b_j < b0 < a0 < a_i.
// All N + 2 fixed points off the singular point then have s outside [0, 4].
ThreeLinesParams construct_cstar(int n, std::uint64_t seed = 1);

// (4^(2/N) - 4^(-2/N)) + (4^(1/N) - 4^(-1/N)) - 7/N
double g_function(int n);

// Tr^2 / Det at the l-th diagonal fixed point of the equal-parameter map, evaluated directly.
cplx equal_parameter_value(int n, double a0, double b0, double d, int l);

// True when every diagonal and infinite fixed point has s CertifiedIn (want_in) or CertifiedOut.
bool all_off_singular(const std::vector<FixedPointRecord>& recs, bool want_in);

enum class Acceptance {
    Neighborhood,  // roots and parameters within eps of both targets
    Certified,     // roots where the s-verdicts required for certification hold
};

struct ApproxOptions {
    double eps = 0.05;
    int cap = 60;               // largest m_N (Neighborhood) or largest single entry (Certified)
    int density_range = 400;    // k = 1..density_range scanned for the fixed slots
    int per_slot = 3;           // best k kept per fixed slot
    int prefix_candidates = 8;  // fixed-slot combinations tried, best first
    Acceptance acceptance = Acceptance::Neighborhood;
};

struct ApproxResult {
    OrbitData orbit;
    IntPolynomial salem;
    ComplexBall delta0, delta_star;
    double dist0 = 0.0, dist_star = 0.0;  // max coordinate distance to the targets after closing
    int polynomials_tried = 0;
};

ApproxResult approx_parameters(const ThreeLinesParams& c0, const ThreeLinesParams& cstar, const ApproxOptions& opts = {});

// Mean squared deviation of the binned unit-circle root arguments from the uniform histogram,
// scaled by the bin count. Zero for a perfectly flat histogram.
double equidistribution_statistic(const IntPolynomial& p, int bins = 12);

}  // namespace siegel
