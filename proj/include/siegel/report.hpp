#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "siegel/certifier.hpp"

namespace siegel {

struct RunConfig {
    std::string command;  // cuspidal, three-lines, theorem1, matrix
    std::string family;
    std::optional<int> n;
    std::optional<int> k;
    std::optional<OrbitData> orbit;
    double root_tol = 1e-12;
    double residual_tol = 1e-8;
    bool strict = false;
    std::uint64_t seed = 1;
    std::string out;  // empty: stdout

    // InvalidArgument unless every tolerance is positive.
    void validate() const;
};

nlohmann::ordered_json to_json(const ComplexBall& b);
nlohmann::ordered_json to_json(const RunConfig& cfg);

// Full report; identical inputs give identical output, field for field.
nlohmann::ordered_json report_json(const CertificationReport& rep, const RunConfig& cfg);

// Two-space indented dump with a trailing newline.
std::string render(const nlohmann::ordered_json& j);

// 0 when nothing is inconclusive, 2 otherwise. Hard errors (exit 1) never reach a report.
int exit_code(const CertificationReport& rep);

}  // namespace siegel
