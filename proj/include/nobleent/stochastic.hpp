#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nobleent/gaussian.hpp"
#include "nobleent/statistics.hpp"

namespace nobleent {

struct McSettings {
  std::size_t n_samples = 100000;
  std::uint64_t seed = 1;
  double dt = 1e-3;     // s
  double t_final = 1.0; // s

  /// Throws ValidationError unless n_samples >= 1, dt > 0 and t_final >= dt.
  void validate() const;
};

struct ObservableStats {
  std::string name;
  Moments moments;
};

struct TrajectoryStats {
  std::vector<ObservableStats> observables;
  std::size_t n_samples = 0;

  /// Throws std::out_of_range for an unknown name.
  const Moments& at(const std::string& name) const;
};

/// Classical sampling of the noisy input-output relations: the four input
/// quadratures and the five channel noises are independent N(0, 1/2), the
/// optimal gain is applied to each realization. Observables: x_L_out,
/// p_b_out (before feedback) and p_b_feedback.
TrajectoryStats sample_io(const ChannelSpec& spec, const McSettings& settings);

}  // namespace nobleent
