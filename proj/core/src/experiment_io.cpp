#include "cvwalk/experiment_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cvw {
namespace {

using nlohmann::json;

template <class T>
T field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  static const std::set<std::string> known{
      "master_seed", "dt",    "horizon", "n_values",     "h_values",
      "h_schedule",  "replicates", "t_probe", "alpha", "sigma",
      "significance", "isometry", "crossing", "grid_cache"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }

  ExperimentConfig c;
  if (j.contains("master_seed")) c.master_seed = field<std::uint64_t>(j, "master_seed");
  if (j.contains("dt")) c.dt = field<double>(j, "dt");
  if (j.contains("horizon")) c.horizon = field<double>(j, "horizon");
  if (j.contains("n_values")) c.n_values = field<std::vector<std::size_t>>(j, "n_values");
  if (j.contains("h_values")) c.h_values = field<std::vector<std::size_t>>(j, "h_values");
  if (j.contains("h_schedule")) {
    c.h_schedule.clear();
    for (const auto& s : field<std::vector<std::string>>(j, "h_schedule")) {
      c.h_schedule.push_back(HSchedule::parse(s));
    }
  }
  if (j.contains("replicates")) c.replicates = field<std::size_t>(j, "replicates");
  if (j.contains("t_probe")) c.t_probe = field<double>(j, "t_probe");
  if (j.contains("alpha")) c.alpha = field<std::vector<double>>(j, "alpha");
  if (j.contains("sigma")) c.sigma = field<double>(j, "sigma");
  if (j.contains("significance")) c.significance = field<double>(j, "significance");
  if (j.contains("isometry")) c.isometry = field<bool>(j, "isometry");
  if (j.contains("crossing")) c.crossing = field<std::string>(j, "crossing");
  if (j.contains("grid_cache")) c.grid_cache = field<std::string>(j, "grid_cache");
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["master_seed"] = c.master_seed;
  j["dt"] = c.dt;
  j["horizon"] = c.horizon;
  j["n_values"] = c.n_values;
  j["h_values"] = c.h_values;
  std::vector<std::string> schedules;
  for (const auto& s : c.h_schedule) schedules.push_back(s.label());
  j["h_schedule"] = schedules;
  j["replicates"] = c.replicates;
  j["t_probe"] = c.t_probe;
  j["alpha"] = c.alpha;
  j["sigma"] = c.sigma;
  j["significance"] = c.significance;
  j["isometry"] = c.isometry;
  j["crossing"] = c.crossing;
  if (c.grid_cache) j["grid_cache"] = *c.grid_cache;
  return j.dump(2);
}

void write_csv(std::ostream& out, const std::vector<ResultRecord>& records) {
  out << "experiment,n,h,replicate,metric,value,valid\n";
  char value[40];
  for (const auto& r : records) {
    if (std::isnan(r.value)) {
      std::snprintf(value, sizeof value, "nan");
    } else {
      std::snprintf(value, sizeof value, "%.17g", r.value);
    }
    out << r.experiment << ',' << r.n << ',' << r.h << ',' << r.replicate << ','
        << r.metric << ',' << value << ',' << (r.valid ? 1 : 0) << '\n';
  }
}

std::string to_csv(const std::vector<ResultRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

}  // namespace cvw
