#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cvwalk/experiments.hpp"

namespace cvw {

/// Parses a JSON object whose keys are the ExperimentConfig field names.
/// Missing keys keep their defaults; unknown keys and ill-typed values throw
/// ConfigError. h_schedule is a list of schedule strings (see HSchedule).
ExperimentConfig config_from_json(std::string_view json_text);
std::string config_to_json(const ExperimentConfig& config);

/// CSV with header experiment,n,h,replicate,metric,value,valid. Values are
/// printed with 17 significant digits (NaN as "nan"), valid as 0/1, so equal
/// record lists always produce identical bytes.
void write_csv(std::ostream& out, const std::vector<ResultRecord>& records);
std::string to_csv(const std::vector<ResultRecord>& records);

}  // namespace cvw
