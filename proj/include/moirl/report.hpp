#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "moirl/config_io.hpp"
#include "moirl/harness.hpp"

namespace moirl::report {

/// seed,ok,<metrics>,mean_weight_0..,error
std::string seeds_csv(const RunResult& run);
/// seed,point,v_0..,w_0..,accepted_at
std::string front_csv(const RunResult& run);
/// seed,direction,w_0..,hull (empty body when no seed carries a cone)
std::string cone_csv(const RunResult& run);
/// t,cumulative_regret
std::string regret_csv(const RunResult& run);
/// metric,mean,std,ci95,count
std::string aggregate_csv(const RunResult& run);

Json aggregate_json(const RunResult& run);
/// Config echo plus aggregates; no timing, so reruns are byte-identical.
Json run_summary(const RunResult& run, const Json& config);

/// Writes seeds.csv, front.csv, cone.csv, regret.csv and summary.json into dir.
void write_run(const std::filesystem::path& dir, const RunResult& run, const Json& config);

/// arm,metric,mean,std,ci95,count,p_value
std::string ablation_csv(const AblationResult& result);

/// num_pairs,mean_error,std_error,count
std::string sweep_csv(const SweepResult& result);

/// metadata.json: wall-clock timestamp, elapsed seconds, version, and any extra fields.
void write_metadata(const std::filesystem::path& dir, double elapsed_seconds, const Json& extra = Json::object());

/// Serialized JSON with a trailing newline.
std::string dump(const Json& json);

void ensure_directory(const std::filesystem::path& dir);

/// Reads a CSV with a header row; numeric cells only.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::size_t column(const std::string& name) const;
};
Table read_table(const std::filesystem::path& path);

}  // namespace moirl::report
