#include "nobleent/stochastic.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "nobleent/error.hpp"

namespace nobleent {

namespace {

constexpr std::size_t block_size = 4096;

}  // namespace

void McSettings::validate() const {
  if (n_samples < 1) throw ValidationError("samples", "must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("dt", fmt::format("must be positive, got {}", dt));
  }
  if (!(t_final >= dt)) {
    throw ValidationError("t_final", fmt::format("must be >= dt, got {}", t_final));
  }
}

const Moments& TrajectoryStats::at(const std::string& name) const {
  for (const auto& o : observables) {
    if (o.name == name) return o.moments;
  }
  throw std::out_of_range("unknown observable " + name);
}

TrajectoryStats sample_io(const ChannelSpec& spec, const McSettings& settings) {
  spec.validate();
  settings.validate();

  const double gain = optimal_gain(spec);
  const double light = std::sqrt(1.0 - spec.epsilon);
  const double spin = std::sqrt(1.0 - spec.eta);
  const double loss = std::sqrt(spec.epsilon);
  const double decay = std::sqrt(spec.eta);
  const double alkali = spec.kappa * std::sqrt(spec.rho);

  const std::size_t n = settings.n_samples;
  std::vector<double> x_out(n);
  std::vector<double> p_out(n);
  std::vector<double> p_fb(n);

  const std::size_t blocks = (n + block_size - 1) / block_size;
  parallel_for(blocks, [&](std::size_t b) {
    auto rng = substream(settings.seed, b);
    std::normal_distribution<double> vacuum(0.0, std::sqrt(vacuum_variance));
    const std::size_t end = std::min(n, (b + 1) * block_size);
    for (std::size_t i = b * block_size; i < end; ++i) {
      // Inputs (x_L, p_L, x_b, p_b) then w0..w4; p_L, x_b, w2 and w3 only
      // reach quadratures that feedback never reads, but are drawn to keep
      // one realization per nine variates.
      double z[9];
      for (double& v : z) v = vacuum(rng);
      const double x_l = z[0];
      const double p_b = z[3];
      const double* w = z + 4;

      const double x_l_out = light * (x_l + spec.kappa * p_b + alkali * w[0]) + loss * w[1];
      const double p_b_out = spin * p_b + decay * w[4];
      x_out[i] = x_l_out;
      p_out[i] = p_b_out;
      p_fb[i] = p_b_out + gain * x_l_out;
    }
  });

  TrajectoryStats stats;
  stats.n_samples = n;
  stats.observables = {{"x_L_out", compute_moments(x_out)},
                       {"p_b_out", compute_moments(p_out)},
                       {"p_b_feedback", compute_moments(p_fb)}};
  return stats;
}

}  // namespace nobleent
