#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

enum class ErrorKind {
    NonConvergence,
    ClusterUnresolved,
    BoundaryUndecidable,
    DegreeOverflow,
    BadPrime,
    Indeterminate,
    DegenerateTau,
    PoleAtTau,
    NoSalemFactor,
    NoUnitCircleRoots,
    PoleHit,
    PoleInFormula,
    OrbitCollision,
    DegenerateSpectrum,
    PoleAtParameter,
    OffUnitCircle,
    SearchFailed,
    PerturbationFailed,
    BudgetExhausted,
    MixedFactor,
    ChartFailure,
    WitnessMismatch,
    PipelineFailed,
    InvalidArgument,
    DivisionByZero,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

}  // namespace siegel
