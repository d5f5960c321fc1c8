#include "nobleent/lifetime.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>

#include "nobleent/error.hpp"

namespace nobleent {

namespace {

void check_inputs(double var0, double gamma_b) {
  if (!(var0 >= 0.0) || !std::isfinite(var0)) {
    throw ValidationError("var0", fmt::format("must be >= 0, got {}", var0));
  }
  if (!(gamma_b > 0.0) || !std::isfinite(gamma_b)) {
    throw ValidationError("gamma_b", fmt::format("must be positive, got {}", gamma_b));
  }
}

constexpr std::size_t paths_per_block = 256;

}  // namespace

std::vector<LifetimePoint> lifetime_decay(double var0, double gamma_b,
                                          const std::vector<double>& times) {
  check_inputs(var0, gamma_b);
  std::vector<LifetimePoint> out;
  out.reserve(times.size());
  for (double t : times) {
    const double var = vacuum_variance + (var0 - vacuum_variance) * std::exp(-2.0 * gamma_b * t);
    out.push_back({t, var, variance_to_db(var)});
  }
  return out;
}

std::vector<LifetimeSample> lifetime_mc(double var0, double gamma_b, const McSettings& settings,
                                        double record_interval) {
  check_inputs(var0, gamma_b);
  settings.validate();
  const double dt = settings.dt;
  const auto steps = static_cast<std::size_t>(std::llround(settings.t_final / dt));
  const auto stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(record_interval / dt)));

  std::vector<std::size_t> record_steps;
  for (std::size_t s = 0; s <= steps; s += stride) record_steps.push_back(s);
  if (record_steps.back() != steps) record_steps.push_back(steps);

  const std::size_t n = settings.n_samples;
  // values[r * n + path]
  std::vector<double> values(record_steps.size() * n);
  const std::size_t blocks = (n + paths_per_block - 1) / paths_per_block;
  const double kick = std::sqrt(gamma_b * dt);
  const double damping = 1.0 - gamma_b * dt;

  parallel_for(blocks, [&](std::size_t b) {
    auto rng = substream(settings.seed, b);
    std::normal_distribution<double> unit(0.0, 1.0);
    const std::size_t first = b * paths_per_block;
    const std::size_t last = std::min(n, first + paths_per_block);
    std::vector<double> p(last - first);
    for (double& v : p) v = std::sqrt(var0) * unit(rng);

    std::size_t r = 0;
    for (std::size_t step = 0; step <= steps; ++step) {
      if (r < record_steps.size() && record_steps[r] == step) {
        std::copy(p.begin(), p.end(), values.begin() + static_cast<std::ptrdiff_t>(r * n + first));
        ++r;
      }
      if (step == steps) break;
      for (double& v : p) v = damping * v + kick * unit(rng);
    }
  });

  std::vector<LifetimeSample> out;
  out.reserve(record_steps.size());
  for (std::size_t r = 0; r < record_steps.size(); ++r) {
    const std::span<const double> slice(values.data() + r * n, n);
    out.push_back({static_cast<double>(record_steps[r]) * dt, compute_moments(slice)});
  }
  return out;
}

DecayFit fit_decay_rate(const std::vector<LifetimeSample>& samples, double min_significance) {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> w;
  for (const auto& s : samples) {
    const double gap = vacuum_variance - s.moments.variance;
    const double sigma = s.moments.stderr_variance;
    if (!(sigma > 0.0) || gap < min_significance * sigma) continue;
    t.push_back(s.t);
    y.push_back(std::log(gap));
    // sigma of ln(gap) is sigma / gap.
    w.push_back(gap * gap / (sigma * sigma));
  }
  if (t.size() < 2) throw ValidationError("samples", "fewer than two significant points to fit");
  const LineFit fit = fit_line(t, y, w);
  return {-fit.slope, fit.slope_stderr, t.size()};
}

double euler_stationary_variance(double gamma_b, double dt) { return 1.0 / (2.0 - gamma_b * dt); }

}  // namespace nobleent
