#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "cvwalk/brownian.hpp"
#include "cvwalk/exhaustive.hpp"
#include "cvwalk/experiment_io.hpp"
#include "cvwalk/experiments.hpp"
#include "cvwalk/grid_io.hpp"
#include "cvwalk/path_io.hpp"
#include "cvwalk/transform.hpp"

namespace cvw::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Bad input that should exit with the usage code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
};

void emit(const Globals& g, std::ostream& out, std::string_view payload) {
  if (g.out.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(g.out, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot write " + g.out);
  file << payload;
}

void emit_signs(const Globals& g, std::ostream& out, std::span<const Step> signs,
                const std::string& format) {
  if (format == "binary") {
    const auto bytes = signs_to_binary(signs);
    emit(g, out, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  } else {
    emit(g, out, signs_to_text(signs) + "\n");
  }
}

std::vector<Step> read_signs(const std::string& file, const std::string& format) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = read_file_bytes(file);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const bool binary =
      format == "binary" || (format == "auto" && fs::path(file).extension() == ".bin");
  try {
    if (binary) return signs_from_binary(bytes);
    return signs_from_text(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                            bytes.size()));
  } catch (const std::invalid_argument& e) {
    throw UsageError(file + ": " + e.what());
  }
}

json report_json(const CheckReport& r) {
  json j;
  j["check"] = r.check;
  j["n"] = r.n;
  j["h"] = r.h ? json(*r.h) : json(nullptr);
  j["pass"] = r.pass;
  j["max_deviation"] = r.max_deviation;
  j["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
  j["paths_examined"] = r.paths_examined;
  j["violations"] = r.violations;
  return j;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

std::size_t grid_size(const ExperimentConfig& config) {
  return static_cast<std::size_t>(std::ceil(config.horizon / config.dt - 1e-9)) + 1;
}

// Reads grid files named grid_<seed>_<replicate>.bin from `dir`, sampling and
// writing them on a miss. A cached grid with a different dt or horizon is
// resampled.
GridSource caching_source(const std::string& dir) {
  return [dir](const ExperimentConfig& config, std::uint64_t replicate) {
    const fs::path file = fs::path(dir) / ("grid_" + std::to_string(config.master_seed) +
                                           "_" + std::to_string(replicate) + ".bin");
    if (fs::exists(file)) {
      auto grid = read_grid(file);
      if (grid.dt() == config.dt && grid.size() == grid_size(config)) return grid;
    }
    auto grid = default_grid(config, replicate);
    fs::create_directories(dir);
    write_grid(file, grid);
    return grid;
  };
}

int cmd_transform(const Globals& g, const std::string& input, std::size_t iterations,
                  const std::string& in_format, std::string out_format, std::ostream& out) {
  auto signs = read_signs(input, in_format);
  if (iterations > signs.size()) {
    throw UsageError("--iterations exceeds the path length " + std::to_string(signs.size()));
  }
  auto path = IncrementPath::from_trusted(std::move(signs));
  const auto image = iterate(path, iterations);
  if (out_format == "auto") {
    out_format = fs::path(g.out).extension() == ".bin" ? "binary" : "text";
  }
  emit_signs(g, out, image.steps(), out_format);
  return kExitOk;
}

int cmd_codec(const Globals& g, const std::string& mode, const std::string& input,
              std::ostream& out) {
  auto signs = read_signs(input, "auto");
  if (mode == "encode") {
    const auto code = encode(IncrementPath::from_trusted(std::move(signs)));
    emit_signs(g, out, code.signs(), "text");
  } else {
    const auto path = decode(SignCode::from_trusted(std::move(signs)));
    emit_signs(g, out, path.steps(), "text");
  }
  return kExitOk;
}

int cmd_verify(const Globals& g, std::size_t n, std::size_t h, const std::string& checks,
               std::ostream& out) {
  if (n == 0 || n > kMaxEnumerationLength) {
    throw UsageError("--n must be in [1, " + std::to_string(kMaxEnumerationLength) + "]");
  }
  std::vector<std::string> names = split_list(checks);
  if (checks == "all") {
    names.clear();
    for (const auto& name : check_names()) {
      // independence only runs for n <= 20 and h < n
      if (name == "independence" && (n > 20 || h >= n)) continue;
      names.push_back(name);
    }
  }
  for (const auto& name : names) {
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
      throw UsageError("unknown check '" + name + "'");
    }
    if (name == "independence" && (h == 0 || h >= n || n > 20)) {
      throw UsageError("independence needs 1 <= h < n and n <= 20");
    }
  }
  OracleOptions opts{g.threads};
  json reports = json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    const auto report = run_check(name, n, h, opts);
    all_pass = all_pass && report.pass;
    reports.push_back(report_json(report));
  }
  emit(g, out, reports.dump(2) + "\n");
  return all_pass ? kExitOk : kExitCheckFailed;
}

struct EmbedArgs {
  std::size_t n = 0;
  double dt = 0x1p-20;
  double horizon = 1.0;
  std::uint64_t stream = 0;
  std::string grid_in;
  std::string grid_out;
  std::string crossing = "node";
  std::string times_out;
};

int cmd_embed(const Globals& g, const EmbedArgs& a, std::ostream& out) {
  if (a.n == 0) throw UsageError("--n must be positive");
  const std::uint64_t seed = g.seed.value_or(1);
  BrownianGrid grid = a.grid_in.empty()
                          ? sample_brownian(a.horizon, a.dt, RngSpec{seed, a.stream})
                          : read_grid(a.grid_in);
  if (!a.grid_out.empty()) write_grid(a.grid_out, grid);
  ExperimentConfig config;
  config.master_seed = seed;
  config.crossing = a.crossing;
  const auto embedded = embed_for(config, grid, a.n, a.stream);
  emit(g, out, to_text(embedded.walk) + "\n");
  if (!a.times_out.empty()) {
    std::ofstream times(a.times_out, std::ios::trunc);
    if (!times) throw UsageError("cannot write " + a.times_out);
    char buf[32];
    for (std::size_t k = 1; k <= embedded.hits(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g\n", embedded.time(k));
      times << buf;
    }
  }
  return kExitOk;
}

void limit_summary(const ExperimentConfig& config, const std::vector<ResultRecord>& records,
                   std::ostream& out) {
  for (auto n : config.n_values) {
    for (auto h : config.h_values) {
      const auto m = median_of(records, "sup_error", n, h);
      out << "median sup_error n=" << n << " h=" << h << ": "
          << (m ? fixed(*m) : std::string("n/a")) << "\n";
    }
  }
  if (config.h_values.empty() || config.n_values.empty()) return;
  try {
    const auto table = error_table_from_limit(records, config.n_values, config.h_values);
    const auto k = diagonal_select(table, dyadic_thresholds(table.rows()));
    out << "diagonal selection:";
    for (std::size_t j = 0; j < k.size(); ++j) {
      const auto row = std::min(k[j], config.h_values.size() - 1);
      out << " n=" << config.n_values[j] << "->h=" << config.h_values[row];
    }
    out << "\n";
  } catch (const std::invalid_argument& e) {
    out << "diagonal selection: unavailable (" << e.what() << ")\n";
  }
}

void summary(ExperimentKind kind, const ExperimentConfig& config,
             const std::vector<ResultRecord>& records, std::ostream& out) {
  if (kind == ExperimentKind::limit) {
    limit_summary(config, records, out);
    return;
  }
  char buf[64];
  for (const auto& r : records) {
    if (r.replicate >= 0) continue;
    std::snprintf(buf, sizeof buf, "%.6g", r.value);
    out << r.metric << " n=" << r.n << " h=" << r.h << ": " << (r.valid ? buf : "n/a")
        << "\n";
  }
}

int cmd_mc(const Globals& g, const std::string& kind_name, const std::string& config_file,
           const std::string& grid_cache, std::ostream& out, std::ostream& err) {
  ExperimentKind kind{};
  ExperimentConfig config;
  try {
    kind = parse_experiment_kind(kind_name);
    const auto bytes = read_file_bytes(config_file);
    config = config_from_json(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    if (g.seed) config.master_seed = *g.seed;
    if (!grid_cache.empty()) config.grid_cache = grid_cache;
    validate(config, kind);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  RunOptions opts;
  opts.threads = g.threads;
  if (config.grid_cache) opts.grid_source = caching_source(*config.grid_cache);
  const auto records = run_experiment(kind, config, opts);

  std::size_t invalid = 0;
  for (const auto& r : records) invalid += r.valid ? 0 : 1;
  if (!records.empty() && 20 * invalid > records.size()) {
    err << "warning: " << invalid << " of " << records.size()
        << " records are invalid; consider a longer horizon\n";
  }
  if (!g.out.empty()) {
    std::ofstream file(g.out, std::ios::trunc);
    if (!file) throw UsageError("cannot write " + g.out);
    write_csv(file, records);
  }
  out << experiment_name(kind) << ": " << records.size() << " records (" << invalid
      << " invalid)\n";
  summary(kind, config, records, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterated sign-flip transforms of simple random walks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Globals g;
  std::uint64_t seed = 1;
  auto* seed_opt = app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.fallthrough();

  std::string input;
  std::size_t iterations = 1;
  std::string in_format = "auto";
  std::string out_format = "auto";
  auto* transform_cmd = app.add_subcommand("transform", "apply the transform to a path file");
  transform_cmd->add_option("input", input, "path file ('+'/'-' text or packed binary)")
      ->required();
  transform_cmd->add_option("--iterations", iterations, "number of applications")
      ->capture_default_str();
  transform_cmd->add_option("--in-format", in_format)
      ->check(CLI::IsMember({"auto", "text", "binary"}));
  transform_cmd->add_option("--out-format", out_format)
      ->check(CLI::IsMember({"auto", "text", "binary"}));

  std::string mode;
  auto* codec_cmd = app.add_subcommand("codec", "sign code of a path and back");
  codec_cmd->add_option("mode", mode)->required()->check(CLI::IsMember({"encode", "decode"}));
  codec_cmd->add_option("input", input)->required();

  std::size_t n = 0;
  std::size_t h = 1;
  std::string checks = "all";
  auto* verify_cmd = app.add_subcommand("verify", "exhaustive checks over all n-step paths");
  verify_cmd->set_help_flag("--help", "print this help and exit");  // frees the name h
  verify_cmd->add_option("--n", n, "path length")->required();
  verify_cmd->add_option("--h", h, "iteration for the independence check")
      ->capture_default_str();
  verify_cmd->add_option("--checks", checks, "comma-separated check names or 'all'")
      ->capture_default_str();

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "first-passage walk of a Brownian sample");
  embed_cmd->add_option("--n", embed.n, "level spacing 1/sqrt(n)")->required();
  embed_cmd->add_option("--dt", embed.dt)->capture_default_str();
  embed_cmd->add_option("--horizon", embed.horizon)->capture_default_str();
  embed_cmd->add_option("--stream", embed.stream, "RNG stream id")->capture_default_str();
  embed_cmd->add_option("--grid-in", embed.grid_in, "read the Brownian grid from a file");
  embed_cmd->add_option("--grid-out", embed.grid_out, "save the sampled grid");
  embed_cmd->add_option("--crossing", embed.crossing)
      ->check(CLI::IsMember({"node", "bridge"}))
      ->capture_default_str();
  embed_cmd->add_option("--times-out", embed.times_out, "hitting times, one per line");

  std::string kind;
  std::string config_file;
  std::string grid_cache;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo experiments");
  mc_cmd->add_option("experiment", kind)
      ->required()
      ->check(CLI::IsMember({"limit", "independence", "regime", "martingale"}));
  mc_cmd->add_option("--config", config_file, "JSON experiment config")->required();
  mc_cmd->add_option("--grid-cache", grid_cache, "directory of cached Brownian grids");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (seed_opt->count() > 0) g.seed = seed;

  try {
    if (*transform_cmd) {
      return cmd_transform(g, input, iterations, in_format, out_format, out);
    }
    if (*codec_cmd) return cmd_codec(g, mode, input, out);
    if (*verify_cmd) return cmd_verify(g, n, h, checks, out);
    if (*embed_cmd) return cmd_embed(g, embed, out);
    return cmd_mc(g, kind, config_file, grid_cache, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace cvw::cli
