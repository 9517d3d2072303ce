#include "siegel/error.hpp"

namespace siegel {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ClusterUnresolved: return "ClusterUnresolved";
    case ErrorKind::BoundaryUndecidable: return "BoundaryUndecidable";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::DegenerateTau: return "DegenerateTau";
    case ErrorKind::PoleAtTau: return "PoleAtTau";
    case ErrorKind::NoSalemFactor: return "NoSalemFactor";
    case ErrorKind::NoUnitCircleRoots: return "NoUnitCircleRoots";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::PoleInFormula: return "PoleInFormula";
    case ErrorKind::OrbitCollision: return "OrbitCollision";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::PoleAtParameter: return "PoleAtParameter";
    case ErrorKind::OffUnitCircle: return "OffUnitCircle";
    case ErrorKind::SearchFailed: return "SearchFailed";
    case ErrorKind::PerturbationFailed: return "PerturbationFailed";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::MixedFactor: return "MixedFactor";
    case ErrorKind::ChartFailure: return "ChartFailure";
    case ErrorKind::WitnessMismatch: return "WitnessMismatch";
    case ErrorKind::PipelineFailed: return "PipelineFailed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail)
{
}

void fail(ErrorKind kind, const std::string& detail)
{
    throw Error(kind, detail);
}

}  // namespace siegel
