#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siegel/cohomology.hpp"
#include "siegel/cuspidal.hpp"
#include "siegel/roots.hpp"
#include "siegel/search.hpp"
#include "siegel/three_lines.hpp"

namespace siegel {

enum class Verdict { SiegelCertified, NotRotation, Inconclusive };

const char* to_string(Verdict v);

// Derivative at a fixed point in the chart named by the record; ChartFailure when the
// record's coordinates do not fit that chart.
Jacobian jacobian(const CuspidalParams& params, const FixedPointRecord& rec);
Jacobian jacobian(const ThreeLinesParams& params, const FixedPointRecord& rec);

// True when the witness is a Salem polynomial (irreducible, not cyclotomic), so none of its roots
// is a root of unity. WitnessMismatch when the witness does not vanish on the delta ball.
bool not_root_of_unity(const ComplexBall& delta, const IntPolynomial& witness);

// Fixed points of the map at one Galois conjugate delta* that can be images of the point being
// certified (the whole class: off-curve pair, diagonal set, or the points at infinity).
struct Conjugate {
    ComplexBall delta;
    std::vector<FixedPointRecord> candidates;
};

struct PointVerdict {
    std::string label;
    Verdict verdict = Verdict::Inconclusive;
    IntervalVerdict s_verdict = IntervalVerdict::Unknown;
    std::optional<int> witness;  // index into the conjugate list
    std::string reason;
};

// delta must be certified on the unit circle; the conjugates must be too.
PointVerdict certify_fixed_point(const FixedPointRecord& rec, const ComplexBall& delta, const IntPolynomial& witness,
                                 const std::vector<Conjugate>& conjugates);

struct StrictEvidence {
    bool enabled = false;
    std::string fixed_class;
    int resultant_degree = 0;
    int squarefree_degree = 0;
    std::uint64_t prime = 0;
    bool irreducible = false;
    std::string note;
};

struct CertificationReport {
    std::string family;
    std::optional<int> cusp_n;
    std::optional<OrbitData> orbit;
    IntPolynomial salem;
    SalemCertificate salem_cert;
    ComplexBall lambda{1.0};
    double entropy = 0.0;
    ComplexBall delta0{1.0};
    std::optional<ComplexBall> witness_delta;
    std::vector<FixedPointRecord> fixed_points;
    std::vector<PointVerdict> verdicts;
    ActionMatrix matrix;
    std::optional<OrbitReport> orbit_check;
    std::vector<StrictEvidence> strict;
    std::vector<std::string> stages;  // pipeline stages completed, in order
    std::optional<ApproxResult> search;

    int count(Verdict v) const;
    long long trace() const { return matrix.trace(); }
    long long bound() const { return fixed_point_bound(matrix); }
};

struct CertifyOptions {
    bool strict = false;
    int strict_primes = 25;
    double root_tol = 1e-12;  // Aberth stopping tolerance for the Salem roots
};

// Every fixed point at delta0 certified against all other unit-circle conjugates.
CertificationReport certify_cuspidal_at(int n, const ComplexBall& delta0, const CertifyOptions& opts = {});
// Runs every unit-circle root as delta0 and keeps the one with most certified points.
CertificationReport certify_cuspidal(int n, const CertifyOptions& opts = {});

CertificationReport certify_three_lines_at(const OrbitData& orbit, const ComplexBall& delta0,
                                           const CertifyOptions& opts = {});
CertificationReport certify_three_lines(const OrbitData& orbit, const CertifyOptions& opts = {});

struct PipelineOptions {
    CertifyOptions certify;
    std::uint64_t seed = 1;
    double d_target = 0.99;
    ApproxOptions search{.eps = 0.05, .cap = 12, .acceptance = Acceptance::Certified};
};

// k = 2: cuspidal family with n = 8. k >= 3: three-lines family with N = k - 2.
CertificationReport theorem1_pipeline(int k, const PipelineOptions& opts = {});

}  // namespace siegel
