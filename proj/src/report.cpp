#include "moirl/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <system_error>

#include "moirl/text_io.hpp"

#ifndef MOIRL_VERSION
#define MOIRL_VERSION "unknown"
#endif

namespace moirl::report {
namespace {

std::string indexed_header(const std::string& prefix, std::size_t d) {
  std::string out;
  for (std::size_t k = 0; k < d; ++k) out += (k ? "," : "") + prefix + "_" + std::to_string(k);
  return out;
}

std::size_t run_dimension(const RunResult& run) {
  for (const auto& s : run.seeds) {
    if (!s.mean_weight.empty()) return s.mean_weight.size();
    if (!s.front.empty()) return s.front.points().front().value.size();
  }
  return 0;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
  return out + "\"";
}

}  // namespace

std::string seeds_csv(const RunResult& run) {
  const std::size_t d = run_dimension(run);
  std::string out = "seed,ok";
  for (const auto& m : metric_names()) out += "," + m;
  if (d) out += "," + indexed_header("mean_weight", d);
  out += ",error\n";
  for (const auto& s : run.seeds) {
    out += std::to_string(s.seed) + "," + (s.ok ? "1" : "0");
    for (const auto& m : metric_names()) out += "," + (s.ok ? text::format_double(metric_value(s.metrics, m)) : "");
    for (std::size_t k = 0; k < d; ++k)
      out += "," + (k < s.mean_weight.size() ? text::format_double(s.mean_weight[k]) : std::string());
    out += "," + csv_escape(s.error) + "\n";
  }
  return out;
}

std::string front_csv(const RunResult& run) {
  const std::size_t d = run_dimension(run);
  std::string out = "seed,point," + indexed_header("v", d) + "," + indexed_header("w", d) + ",accepted_at\n";
  for (const auto& s : run.seeds) {
    std::size_t i = 0;
    for (const auto& p : s.front.points()) {
      out += std::to_string(s.seed) + "," + std::to_string(i++) + "," + text::join(p.value.values) + "," +
             text::join(p.weight) + "," + std::to_string(p.accepted_at) + "\n";
    }
  }
  return out;
}

std::string cone_csv(const RunResult& run) {
  const std::size_t d = run_dimension(run);
  std::string out = "seed,direction," + indexed_header("w", d) + ",hull\n";
  for (const auto& s : run.seeds) {
    if (!s.cone) continue;
    const auto& cone = *s.cone;
    for (std::size_t i = 0; i < cone.directions.size(); ++i) {
      const bool hull = std::find(cone.hull_rays.begin(), cone.hull_rays.end(), i) != cone.hull_rays.end();
      out += std::to_string(s.seed) + "," + std::to_string(i) + "," + text::join(cone.directions[i]) + "," +
             (hull ? "1" : "0") + "\n";
    }
  }
  return out;
}

std::string regret_csv(const RunResult& run) {
  std::string out = "t,cumulative_regret\n";
  for (const auto& [t, r] : run.regret_curve) out += std::to_string(t) + "," + text::format_double(r) + "\n";
  return out;
}

std::string aggregate_csv(const RunResult& run) {
  std::string out = "metric,mean,std,ci95,count\n";
  for (const auto& m : metric_names()) {
    const auto& a = run.aggregate.at(m);
    out += m + "," + text::format_double(a.mean) + "," + text::format_double(a.std) + "," +
           text::format_double(a.ci95) + "," + std::to_string(a.count) + "\n";
  }
  return out;
}

Json aggregate_json(const RunResult& run) {
  Json out = Json::object();
  for (const auto& m : metric_names()) {
    const auto& a = run.aggregate.at(m);
    out[m] = Json{{"mean", a.mean}, {"std", a.std}, {"ci95", a.ci95}, {"count", a.count}};
  }
  return out;
}

Json run_summary(const RunResult& run, const Json& config) {
  Json failures = Json::array();
  for (const auto& s : run.seeds)
    if (!s.ok) failures.push_back(Json{{"seed", s.seed}, {"error", s.error}});
  Json regret = nullptr;
  if (!run.regret_curve.empty()) regret = run.regret_curve.back().second;
  return Json{{"label", run.label},
              {"config", config},
              {"num_seeds", run.seeds.size()},
              {"failed_seeds", run.failed_seeds},
              {"failures", failures},
              {"metrics", aggregate_json(run)},
              {"final_cumulative_regret", regret}};
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create directory " + dir.string() + (ec ? ": " + ec.message() : ""));
}

void write_run(const std::filesystem::path& dir, const RunResult& run, const Json& config) {
  ensure_directory(dir);
  text::write_file(dir / "seeds.csv", seeds_csv(run));
  text::write_file(dir / "front.csv", front_csv(run));
  text::write_file(dir / "cone.csv", cone_csv(run));
  text::write_file(dir / "regret.csv", regret_csv(run));
  text::write_file(dir / "aggregate.csv", aggregate_csv(run));
  text::write_file(dir / "summary.json", dump(run_summary(run, config)));
}

std::string ablation_csv(const AblationResult& result) {
  std::string out = "arm,metric,mean,std,ci95,count,p_value\n";
  for (const auto& [arm, run] : result.arms) {
    for (const auto& m : metric_names()) {
      const auto& a = run.aggregate.at(m);
      std::string p;
      if (auto it = result.p_values.find(arm); it != result.p_values.end()) p = text::format_double(it->second.at(m));
      out += arm + "," + m + "," + text::format_double(a.mean) + "," + text::format_double(a.std) + "," +
             text::format_double(a.ci95) + "," + std::to_string(a.count) + "," + p + "\n";
    }
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "num_pairs,mean_error,std_error,count\n";
  for (const auto& r : result.rows)
    out += std::to_string(r.num_pairs) + "," + text::format_double(r.mean_error) + "," +
           text::format_double(r.std_error) + "," + std::to_string(r.count) + "\n";
  return out;
}

void write_metadata(const std::filesystem::path& dir, double elapsed_seconds, const Json& extra) {
  ensure_directory(dir);
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  Json meta{{"timestamp", stamp}, {"elapsed_seconds", elapsed_seconds}, {"version", MOIRL_VERSION}};
  for (const auto& item : extra.items()) meta[item.key()] = item.value();
  text::write_file(dir / "metadata.json", dump(meta));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw FormatError("missing column '" + name + "'");
}

Table read_table(const std::filesystem::path& path) {
  const std::string body = text::read_file(path);
  Table t;
  std::size_t start = 0, line_no = 0;
  while (start < body.size()) {
    auto end = body.find('\n', start);
    if (end == std::string::npos) end = body.size();
    const std::string line = text::trim(body.substr(start, end - start));
    start = end + 1;
    if (line.empty()) continue;
    ++line_no;
    auto cells = text::split(line);
    if (line_no == 1) {
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size())
      throw FormatError(path.string() + ": row " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(t.header.size()));
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(text::trim(c).empty() ? 0.0 : text::parse_double(c));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw FormatError(path.string() + " has no header row");
  return t;
}

}  // namespace moirl::report
