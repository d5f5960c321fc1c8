#pragma once

// Decay of a squeezed noble-gas quadrature toward vacuum. The nonlocal
// quadrature p obeys dp/dt = -Gamma_b p + F with <F(t) F(t')> = Gamma_b delta(t - t'),
// so var(t) = 1/2 + (var0 - 1/2) exp(-2 Gamma_b t).

#include <vector>

#include "nobleent/stochastic.hpp"

namespace nobleent {

struct LifetimePoint {
  double t;
  double variance;
  double db;
};

std::vector<LifetimePoint> lifetime_decay(double var0, double gamma_b, const std::vector<double>& times);

struct LifetimeSample {
  double t;
  Moments moments;
};

/// Euler-Maruyama Ornstein-Uhlenbeck paths from p(0) ~ N(0, var0); moments
/// recorded at every multiple of `record_interval` (and at t_final).
std::vector<LifetimeSample> lifetime_mc(double var0, double gamma_b, const McSettings& settings,
                                        double record_interval);

struct DecayFit {
  double rate;  // fitted decay rate of 1/2 - var
  double rate_stderr;  // treats the times as independent; shared paths make this an underestimate
  std::size_t points_used;
};

/// Weighted fit of ln(1/2 - var) against t, using samples whose gap exceeds
/// `min_significance` standard errors.
DecayFit fit_decay_rate(const std::vector<LifetimeSample>& samples, double min_significance = 5.0);

/// Stationary variance of the Euler-Maruyama recursion: 1 / (2 - Gamma_b dt).
double euler_stationary_variance(double gamma_b, double dt);

}  // namespace nobleent
