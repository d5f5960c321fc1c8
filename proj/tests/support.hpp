#pragma once

// Random generators shared by the unit and acceptance tests.

#include <cmath>
#include <random>

#include "nobleent/gaussian.hpp"
#include "nobleent/params.hpp"
#include "nobleent/units.hpp"

namespace testing {

using nobleent::ChannelSpec;
using nobleent::GaussianSector;
using nobleent::Mat4;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline ChannelSpec random_spec(std::mt19937_64& rng) {
  return {uniform(rng, 0.0, 6.0), uniform(rng, 0.0, 0.95), uniform(rng, 0.0, 1.0),
          log_uniform(rng, 1e-3, 2.0)};
}

// Single-mode squeezer on mode m (0: light, 1: noble gas).
inline Mat4 squeezer(int m, double r) {
  Mat4 s = Mat4::Identity();
  s(2 * m, 2 * m) = std::exp(r);
  s(2 * m + 1, 2 * m + 1) = std::exp(-r);
  return s;
}

inline Mat4 phase_rotation(int m, double theta) {
  Mat4 s = Mat4::Identity();
  s(2 * m, 2 * m) = std::cos(theta);
  s(2 * m, 2 * m + 1) = std::sin(theta);
  s(2 * m + 1, 2 * m) = -std::sin(theta);
  s(2 * m + 1, 2 * m + 1) = std::cos(theta);
  return s;
}

inline Mat4 beam_splitter(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat4 b = Mat4::Zero();
  b(0, 0) = c; b(0, 2) = s;
  b(1, 1) = c; b(1, 3) = s;
  b(2, 0) = -s; b(2, 2) = c;
  b(3, 1) = -s; b(3, 3) = c;
  return b;
}

/// Williamson form: S diag(nu1, nu1, nu2, nu2) S^T with nu >= 1/2 and a random symplectic S.
inline GaussianSector random_physical_sector(std::mt19937_64& rng) {
  Mat4 s = Mat4::Identity();
  for (int layer = 0; layer < 3; ++layer) {
    s = phase_rotation(0, uniform(rng, 0, 6.3)) * phase_rotation(1, uniform(rng, 0, 6.3)) *
        squeezer(0, uniform(rng, -1, 1)) * squeezer(1, uniform(rng, -1, 1)) *
        beam_splitter(uniform(rng, 0, 6.3)) * s;
  }
  Mat4 thermal = Mat4::Zero();
  const double nu1 = 0.5 + log_uniform(rng, 1e-6, 2.0);
  const double nu2 = 0.5 + log_uniform(rng, 1e-6, 2.0);
  thermal.diagonal() << nu1, nu1, nu2, nu2;
  GaussianSector g;
  g.cov = s * thermal * s.transpose();
  g.cov = 0.5 * (g.cov + g.cov.transpose());
  for (int i = 0; i < 4; ++i) g.mean[i] = uniform(rng, -2, 2);
  return g;
}

/// Randomized configuration in the regime the theory targets (Delta > 0,
/// dispersive probe, moderate optical depth).
inline nobleent::PhysicalConfig random_config(std::mt19937_64& rng) {
  using namespace nobleent;
  const bool potassium = uniform(rng, 0, 1) < 0.5;
  PhysicalConfig c{};
  c.pair = potassium ? lookup_pair(AlkaliName::K, NobleName::He3)
                     : lookup_pair(AlkaliName::Rb87, NobleName::Xe129);
  c.cell_length = uniform(rng, 1.0, 8.0);
  c.cell_area = uniform(rng, 0.01, 0.05);
  c.temperature = potassium ? uniform(rng, 430.0, 510.0) : uniform(rng, 400.0, 450.0);
  c.noble_pressure_torr = potassium ? uniform(rng, 50.0, 1500.0) : uniform(rng, 1.0, 20.0);
  c.buffer_gases = {{"N2", uniform(rng, 10.0, 100.0)}};
  c.noble_polarization = uniform(rng, 0.1, 1.0);
  c.probe_power = uniform(rng, 0.01, 1.0);
  c.excited_linewidth = uniform(rng, 5e9, 50e9);
  c.probe_detuning = c.excited_linewidth * uniform(rng, 20.0, 200.0);
  c.pulse_duration = uniform(rng, 0.05, 1.0);
  c.pump.target_polarization = uniform(rng, 0.2, 0.9);
  c.alkali_q_factor = uniform(rng, 1.0, 2.0);
  c.pump_light_shift = units::hz_to_rad_per_s(uniform(rng, 0.0, 5000.0));
  c.spin_destruction_rate = uniform(rng, 100.0, 3000.0);
  c.noble_relaxation_rate = log_uniform(rng, 1e-6, 0.5);
  c.field_b1 = uniform(rng, 0.005, 0.05);
  return c;
}

/// Same content as configs/he3_k_headline.json, in internal units.
inline nobleent::PhysicalConfig headline_config() {
  using namespace nobleent;
  PhysicalConfig c{};
  c.pair = lookup_pair(AlkaliName::K, NobleName::He3);
  c.cell_length = 5.0;
  c.cell_area = units::mm2_to_cm2(2.0);
  c.temperature = units::celsius_to_kelvin(250.0);
  c.noble_pressure_torr = 880.0;
  c.buffer_gases = {{"N2", 70.0}};
  c.noble_polarization = 0.56;
  c.probe_power = units::milliwatt_to_watt(400.0);
  c.probe_detuning = units::ghz_to_hz(3000.0);
  c.excited_linewidth = units::ghz_to_hz(88.0);
  c.pulse_duration = 0.2;
  c.pump.target_polarization = 0.62;
  c.alkali_q_factor = 1.22;
  c.pump_light_shift = units::hz_to_rad_per_s(-7200.0);
  c.spin_destruction_rate = 667.0;
  c.noble_relaxation_rate = 1.0 / (50.0 * 3600.0);
  c.field_b1 = units::milligauss_to_gauss(10.0);
  return c;
}

}  // namespace testing
