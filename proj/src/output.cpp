#include "nobleent/output.hpp"

#include <fmt/format.h>
#include <unistd.h>

#include <charconv>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <system_error>

#include "nobleent/error.hpp"

namespace nobleent {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += fmt::format(".tmp{}", static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", tmp.string()));
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error(fmt::format("short write to {}", tmp.string()));
    }
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::string grid_csv(const SweepResult& r, const std::vector<double>& values, const char* column) {
  std::string out = fmt::format("{},{},{}\n", to_string(r.grid.x.name), to_string(r.grid.y.name), column);
  const std::size_t ny = r.y_values.size();
  for (std::size_t ix = 0; ix < r.x_values.size(); ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      out += format_double(r.x_values[ix]);
      out += ',';
      out += format_double(r.y_values[iy]);
      out += ',';
      out += format_double(values[ix * ny + iy]);
      out += '\n';
    }
  }
  return out;
}

}  // namespace

std::string map_csv(const SweepResult& r) { return grid_csv(r, r.db, "value_db"); }

std::string map_linear_csv(const SweepResult& r) { return grid_csv(r, r.linear, "value_linear"); }

std::string series_csv(const std::vector<LifetimeCurve>& curves) {
  std::string out = "t_seconds,variance,db,initial_db\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      out += fmt::format("{},{},{},{}\n", format_double(p.t), format_double(p.variance),
                         format_double(p.db), format_double(c.initial_db));
    }
  }
  return out;
}

std::string points_csv(const std::vector<WorkingPoint>& points) {
  std::string out = "label,kappa,epsilon,eta,rho,xi_computed,db_computed,xi_paper,abs_dev\n";
  for (const auto& p : points) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", p.label, format_double(p.spec.kappa),
                       format_double(p.spec.epsilon), format_double(p.spec.eta),
                       format_double(p.spec.rho), format_double(p.xi_computed),
                       format_double(p.db_computed), format_double(p.xi_quoted),
                       format_double(p.abs_dev));
  }
  return out;
}

std::string mc_csv(const TrajectoryStats& stats) {
  std::string out = "observable,mean,variance,stderr_variance,n_samples\n";
  for (const auto& o : stats.observables) {
    out += fmt::format("{},{},{},{},{}\n", o.name, format_double(o.moments.mean),
                       format_double(o.moments.variance), format_double(o.moments.stderr_variance),
                       o.moments.n);
  }
  return out;
}

std::string key_value_csv(const std::vector<std::pair<std::string, double>>& rows) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : rows) out += fmt::format("{},{}\n", key, format_double(value));
  return out;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool"] = "nobleent";
  doc["version"] = version;
  doc["subcommand"] = subcommand;
  doc["config_digest"] = config_digest.empty() ? nlohmann::ordered_json(nullptr)
                                               : nlohmann::ordered_json(config_digest);
  doc["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  doc["timestamp_utc"] = timestamp_utc;
  doc["warnings"] = warnings;
  doc["artifacts"] = artifacts;
  return doc.dump(2) + "\n";
}

std::string utc_timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900, tm.tm_mon + 1,
                     tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
}

}  // namespace nobleent
