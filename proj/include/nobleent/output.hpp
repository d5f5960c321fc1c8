#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nobleent/stochastic.hpp"
#include "nobleent/sweep.hpp"

namespace nobleent {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// `<x axis>,<y axis>,value_db`, one row per node, x outer and y inner.
std::string map_csv(const SweepResult& result);
/// Same layout with exp(-2 xi) in a `value_linear` column.
std::string map_linear_csv(const SweepResult& result);
/// `t_seconds,variance,db,initial_db`, curves one after another.
std::string series_csv(const std::vector<LifetimeCurve>& curves);
/// `label,kappa,epsilon,eta,rho,xi_computed,db_computed,xi_paper,abs_dev`.
std::string points_csv(const std::vector<WorkingPoint>& points);
/// `observable,mean,variance,stderr_variance,n_samples`.
std::string mc_csv(const TrajectoryStats& stats);
/// `key,value`.
std::string key_value_csv(const std::vector<std::pair<std::string, double>>& rows);

struct RunManifest {
  std::string version;
  std::string config_digest;  // empty when no config was used
  std::string subcommand;
  std::optional<std::uint64_t> seed;
  std::string timestamp_utc;
  std::vector<std::string> warnings;
  std::vector<std::string> artifacts;

  std::string to_json() const;
};

/// ISO 8601, seconds resolution, trailing Z.
std::string utc_timestamp();

}  // namespace nobleent
