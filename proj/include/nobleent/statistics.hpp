#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace nobleent {

/// Sample moments of one observable.
struct Moments {
  double mean = 0.0;
  double variance = 0.0;         // unbiased
  double stderr_variance = 0.0;  // sqrt((m4 - s^4) / n)
  std::size_t n = 0;
};

/// Two-pass moments with compensated sums; the result depends only on the
/// order of `values`, never on how they were produced.
Moments compute_moments(std::span<const double> values);

/// Independent generator for substream `stream` of `seed`.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

/// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
/// Callers write results into per-index slots so the output never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nobleent

namespace nobleent {

struct LineFit {
  double slope;
  double intercept;
  double slope_stderr;
};

/// Weighted least squares y = slope x + intercept. Empty `weights` means unit weights.
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> weights = {});

}  // namespace nobleent
