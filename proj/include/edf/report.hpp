#pragma once

#include "edf/experiments.hpp"

#include <ostream>
#include <string>

namespace edf {

inline constexpr std::string_view kCsvHeader =
    "scenario,param_name,param_value,estimator,kind,estimate,stderr,replicates,seed";

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

void write_csv(std::ostream& out, const ScenarioResult& result);
void write_json(std::ostream& out, const ScenarioResult& result);

std::string to_csv(const ScenarioResult& result);
std::string to_json(const ScenarioResult& result);

}  // namespace edf
