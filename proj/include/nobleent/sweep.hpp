#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nobleent/gaussian.hpp"
#include "nobleent/lifetime.hpp"

namespace nobleent {

/// kappa_eff is kappa sqrt(1 - epsilon), the light-to-noble noise ratio
/// sigma_b / sigma_L; rho doubles as sigma_a / sigma_b.
enum class AxisName { kappa_eff, rho, eta, kappa, epsilon };
enum class AxisScale { linear, log };

std::string_view to_string(AxisName name);
/// Accepts the CSV names plus the aliases sigma_b/sigma_L and sigma_a/sigma_b.
AxisName parse_axis_name(std::string_view text);

struct Axis {
  AxisName name = AxisName::kappa_eff;
  double min = 0.0;
  double max = 5.0;
  std::size_t steps = 101;
  AxisScale scale = AxisScale::linear;

  /// Throws ValidationError unless steps >= 2, min < max and (log) min > 0.
  void validate(std::string_view field) const;
  std::vector<double> values() const;
};

struct SweepGrid {
  Axis x;
  Axis y;
  /// Values of the parameters that are not swept; epsilon here also fixes the
  /// conversion kappa = kappa_eff / sqrt(1 - epsilon).
  ChannelSpec fixed;

  void validate() const;
  /// kappa sqrt(1 - eps) in [0, 5] (101 linear) by rho in [1e-3, 1] (101 log),
  /// epsilon = 0.3 and the given eta.
  static SweepGrid standard(double eta);
  ChannelSpec spec_at(double x_value, double y_value) const;
};

struct SweepResult {
  SweepGrid grid;
  std::vector<double> x_values;
  std::vector<double> y_values;
  std::vector<double> db;      // index ix * ny + iy
  std::vector<double> linear;  // exp(-2 xi)

  double db_at(std::size_t ix, std::size_t iy) const { return db[ix * y_values.size() + iy]; }
};

SweepResult squeezing_map(const SweepGrid& grid);

struct ArgMax {
  double x;
  double y;
  double db;
};

/// Best grid node, then golden-section refinement along each axis inside the
/// neighbouring cells.
ArgMax refine_argmax(const SweepResult& result);

struct WorkingPoint {
  std::string label;
  ChannelSpec spec;
  double xi_computed;
  double db_computed;
  double xi_quoted;
  double abs_dev;
};

/// He-K headline, He-K low-pressure and Xe-Rb rows.
std::vector<WorkingPoint> working_points();

struct LifetimeCurve {
  double initial_db;
  std::vector<LifetimePoint> points;
};

/// One curve per initial squeezing; times evenly spaced on [0, t_max].
std::vector<LifetimeCurve> lifetime_curves(const std::vector<double>& initial_db, double gamma_b,
                                           double t_max, std::size_t steps);

}  // namespace nobleent
