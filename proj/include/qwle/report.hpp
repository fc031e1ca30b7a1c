#pragma once

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qwle/estimator.hpp"
#include "qwle/montecarlo.hpp"
#include "qwle/verify.hpp"

namespace qwle {

/// Version stamped into every JSON report as "schema_version".
inline constexpr int kSchemaVersion = 1;

std::string to_string(ObjectiveMode mode);
/// Throws DomainError for anything other than "fast" or "exact".
ObjectiveMode parse_mode(const std::string& text);

nlohmann::json estimate_report(const EstimateResult& result, const EstimatorConfig& config,
                               const std::string& rate_name);
nlohmann::json mc_report(const McReport& report);
nlohmann::json verify_report(const VerifyReport& report);
nlohmann::json profile_report(std::size_t n, std::span<const std::pair<double, double>> points);

}  // namespace qwle
