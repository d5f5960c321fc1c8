#include "nobleent/params.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "nobleent/error.hpp"
#include "nobleent/units.hpp"

namespace nobleent {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(field, fmt::format("must be positive and finite, got {}", value));
  }
}

void require_nonnegative(double value, const char* field) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ValidationError(field, fmt::format("must be non-negative and finite, got {}", value));
  }
}

double electron_radius(ElectronRadius radius) {
  return radius == ElectronRadius::physical ? units::electron_radius
                                            : units::electron_radius_as_printed;
}

double multiplicity(double nuclear_spin) { return 2.0 * nuclear_spin + 1.0; }

}  // namespace

void validate(const PhysicalConfig& c) {
  require_positive(c.cell_length, "cell.length");
  require_positive(c.cell_area, "cell.area");
  require_positive(c.temperature, "cell.temperature");
  require_positive(c.noble_pressure_torr, "cell.noble_pressure");
  for (const auto& gas : c.buffer_gases) {
    if (gas.name.empty()) throw ValidationError("cell.buffer_gases", "gas name is empty");
    require_positive(gas.pressure_torr, "cell.buffer_gases");
  }
  if (c.alkali_density_override) require_positive(*c.alkali_density_override, "cell.alkali_density");
  require_positive(c.fill_temperature, "cell.fill_temperature");
  if (!(c.noble_polarization > 0.0 && c.noble_polarization <= 1.0)) {
    throw ValidationError("cell.noble_polarization",
                          fmt::format("must lie in (0, 1], got {}", c.noble_polarization));
  }

  require_nonnegative(c.probe_power, "probe.power");
  if (!(std::abs(c.probe_detuning) > 0.0) || !std::isfinite(c.probe_detuning)) {
    throw ValidationError("probe.detuning", "must be nonzero and finite");
  }
  require_positive(c.excited_linewidth, "probe.linewidth");
  require_positive(c.pulse_duration, "probe.pulse_duration");

  if (c.pump.rate.has_value() == c.pump.target_polarization.has_value()) {
    throw ValidationError("pump", "exactly one of rate or alkali_polarization is required");
  }
  if (c.pump.rate) require_positive(*c.pump.rate, "pump.rate");
  if (c.pump.target_polarization &&
      !(*c.pump.target_polarization > 0.0 && *c.pump.target_polarization < 1.0)) {
    throw ValidationError("pump.alkali_polarization",
                          fmt::format("must lie in (0, 1), got {}", *c.pump.target_polarization));
  }
  if (!(c.alkali_q_factor >= 1.0) || !std::isfinite(c.alkali_q_factor)) {
    throw ValidationError("pump.q_factor", fmt::format("must be >= 1, got {}", c.alkali_q_factor));
  }
  if (!std::isfinite(c.pump_light_shift)) {
    throw ValidationError("pump.light_shift", "must be finite");
  }

  require_positive(c.spin_destruction_rate, "rates.spin_destruction");
  require_positive(c.noble_relaxation_rate, "rates.noble_relaxation");

  require_positive(c.field_b1, "field.b1");
  if (c.delta_override && (!std::isfinite(*c.delta_override) || *c.delta_override == 0.0)) {
    throw ValidationError("field.delta_override", "must be nonzero and finite");
  }
}

Magnetizations magnetizations(const PhysicalConfig& c) {
  const auto& alkali = c.pair.alkali;
  Magnetizations m{};
  m.alkali_density = c.alkali_density_override ? *c.alkali_density_override
                                               : alkali_density(alkali, c.temperature);
  m.noble_density = units::torr_to_density(c.noble_pressure_torr, c.fill_temperature);
  const double volume = c.cell_area * c.cell_length;
  m.alkali_atoms = m.alkali_density * volume;
  m.noble_atoms = m.noble_density * volume;

  if (c.pump.rate) {
    m.pump_rate = *c.pump.rate;
    m.alkali_polarization = m.pump_rate / (m.pump_rate + c.spin_destruction_rate);
  } else {
    m.alkali_polarization = *c.pump.target_polarization;
    m.pump_rate =
        m.alkali_polarization * c.spin_destruction_rate / (1.0 - m.alkali_polarization);
  }

  m.m_a = m.alkali_polarization * m.alkali_atoms * (alkali.nuclear_spin + 0.5);
  m.m_b = c.noble_polarization * m.noble_atoms / 2.0;
  m.m_l = photon_number(c.probe_power, c.pulse_duration, alkali.d1_wavelength);
  return m;
}

Couplings coupling_rates(const PhysicalConfig& c, const Magnetizations& m, ElectronRadius radius) {
  const auto& alkali = c.pair.alkali;
  const double volume = c.cell_area * c.cell_length;
  Couplings out{};
  out.j = c.pair.exchange_coefficient * std::sqrt(m.m_a * m.m_b) / volume;
  out.a = 2.0 * electron_radius(radius) * units::speed_of_light * alkali.oscillator_strength /
          (c.cell_area * c.probe_detuning * multiplicity(alkali.nuclear_spin));
  out.q = (out.a / c.pulse_duration) * std::sqrt(m.m_a * m.m_l);
  return out;
}

Precession precession_frequencies(const PhysicalConfig& c, double j, double m_a, double m_b,
                                  int cell_index) {
  if (cell_index != 1 && cell_index != 2) {
    throw ValidationError("cell_index", fmt::format("must be 1 or 2, got {}", cell_index));
  }
  const double sign = cell_index == 1 ? 1.0 : -1.0;
  // Cell 2 runs at the matched field and light shift so that both cells share
  // the same frequencies.
  double field = c.field_b1;
  double light_shift = c.pump_light_shift;
  if (cell_index == 2) {
    const FieldMatch match = field_matching(c, j, m_a, m_b);
    field = match.b2;
    light_shift += match.pump_shift_difference;
  }
  Precession p{};
  p.omega_a = c.pair.alkali.gyromagnetic_ratio * field + light_shift +
              sign * j * std::sqrt(m_b / m_a);
  p.omega_b = c.pair.noble.gyromagnetic_ratio * field + sign * j * std::sqrt(m_a / m_b);
  p.delta = p.omega_a - p.omega_b;
  return p;
}

FieldMatch field_matching(const PhysicalConfig& c, double j, double m_a, double m_b) {
  FieldMatch match{};
  match.b2 = c.field_b1 + 2.0 * (j / c.pair.noble.gyromagnetic_ratio) * std::sqrt(m_a / m_b);
  match.pump_shift_difference =
      c.pair.alkali.gyromagnetic_ratio * (c.field_b1 - match.b2) + 2.0 * j * std::sqrt(m_b / m_a);
  return match;
}

Relaxation relaxation_and_dimensionless(const PhysicalConfig& c, const Magnetizations& m,
                                        const Couplings& k, double delta, ElectronRadius radius,
                                        bool allow_violation, std::vector<std::string>* warnings) {
  const auto& alkali = c.pair.alkali;
  Relaxation r{};
  r.gamma_a = c.spin_destruction_rate + m.pump_rate;

  const double largest = std::max({r.gamma_a, std::abs(k.j), std::abs(k.q)});
  if (std::abs(delta) < 5.0 * largest) {
    const auto message = fmt::format(
        "|Delta| = {:.6g} rad/s is below 5 max(gamma_a, J, Q) = {:.6g} rad/s", std::abs(delta),
        5.0 * largest);
    if (!allow_violation) throw OffResonanceViolation(message);
    if (warnings) warnings->push_back("OffResonanceViolation overridden: " + message);
  }

  const double detuning2 = c.probe_detuning * c.probe_detuning;
  const double linewidth2 = c.excited_linewidth * c.excited_linewidth;
  r.cross_section = 2.0 * electron_radius(radius) * units::speed_of_light *
                    alkali.oscillator_strength / c.excited_linewidth;
  r.gamma_l = m.alkali_density * r.cross_section * linewidth2 / (4.0 * detuning2);
  r.optical_depth = m.alkali_density * r.cross_section * c.cell_length;
  r.resonant_pumping_rate = m.m_l * r.cross_section /
                            (c.pulse_duration * multiplicity(alkali.nuclear_spin) * c.cell_area);
  r.absorption_rate = r.resonant_pumping_rate * linewidth2 / (4.0 * detuning2);

  const double norm2 = delta * delta + r.gamma_a * r.gamma_a;
  r.gamma_b_total = c.noble_relaxation_rate + r.gamma_a * k.j * k.j / norm2;
  r.delta_omega_b = delta * k.j * k.j / norm2;
  r.psi = std::atan2(r.gamma_a, delta);
  r.kappa = k.j * k.q * c.pulse_duration / std::sqrt(norm2);
  r.epsilon = 4.0 * r.gamma_l * c.cell_length;
  r.eta = 2.0 * r.gamma_b_total * c.pulse_duration;
  r.rho = 4.0 * c.alkali_q_factor * r.gamma_a / (k.j * k.j * c.pulse_duration);
  return r;
}

DerivedParams derive(const PhysicalConfig& c, const DeriveOptions& options) {
  validate(c);
  std::vector<std::string> warnings;

  if (std::abs(c.probe_detuning) < 10.0 * c.excited_linewidth) {
    const auto message =
        fmt::format("|delta_e| = {:.6g} Hz is below 10 Gamma_e = {:.6g} Hz",
                    std::abs(c.probe_detuning), 10.0 * c.excited_linewidth);
    if (!options.allow_regime_violation) throw DispersiveRegimeViolation(message);
    warnings.push_back("DispersiveRegimeViolation overridden: " + message);
  }

  const Magnetizations m = magnetizations(c);
  const Couplings k = coupling_rates(c, m, options.electron_radius);
  const Precession p = precession_frequencies(c, k.j, m.m_a, m.m_b, 1);
  const double delta = c.delta_override ? *c.delta_override : p.delta;
  const Relaxation r = relaxation_and_dimensionless(
      c, m, k, delta, options.electron_radius, options.allow_regime_violation, &warnings);

  if (c.spin_destruction_rate < r.absorption_rate) {
    warnings.push_back(fmt::format(
        "spin_destruction rate {:.6g} s^-1 is below the probe absorption rate {:.6g} s^-1",
        c.spin_destruction_rate, r.absorption_rate));
  }

  DerivedParams d{};
  d.n_a = m.alkali_density;
  d.n_b = m.noble_density;
  d.m_a = m.m_a;
  d.m_b = m.m_b;
  d.m_l = m.m_l;
  d.p_a = m.alkali_polarization;
  d.pump_rate = m.pump_rate;
  d.gamma_a = r.gamma_a;
  d.gamma_l = r.gamma_l;
  d.gamma_b = c.noble_relaxation_rate;
  d.gamma_b_total = r.gamma_b_total;
  d.j = k.j;
  d.a = k.a;
  d.q = k.q;
  d.delta = delta;
  d.omega_a = c.delta_override ? p.omega_b + delta : p.omega_a;
  d.omega_b = p.omega_b;
  d.delta_omega_b = r.delta_omega_b;
  d.psi = r.psi;
  d.kappa = r.kappa;
  d.epsilon = r.epsilon;
  d.eta = r.eta;
  d.rho = r.rho;
  d.cross_section = r.cross_section;
  d.optical_depth = r.optical_depth;
  d.resonant_pumping_rate = r.resonant_pumping_rate;
  d.absorption_rate = r.absorption_rate;
  d.pulse_duration = c.pulse_duration;
  d.alkali_q_factor = c.alkali_q_factor;
  d.nuclear_spin = c.pair.alkali.nuclear_spin;
  d.field_match = field_matching(c, k.j, m.m_a, m.m_b);
  d.warnings = std::move(warnings);
  return d;
}

void refresh_dimensionless(DerivedParams& d) {
  const double norm2 = d.delta * d.delta + d.gamma_a * d.gamma_a;
  d.gamma_b_total = d.gamma_b + d.gamma_a * d.j * d.j / norm2;
  d.delta_omega_b = d.delta * d.j * d.j / norm2;
  d.psi = std::atan2(d.gamma_a, d.delta);
  d.kappa = d.j * d.q * d.pulse_duration / std::sqrt(norm2);
  d.eta = 2.0 * d.gamma_b_total * d.pulse_duration;
  d.rho = 4.0 * d.alkali_q_factor * d.gamma_a / (d.j * d.j * d.pulse_duration);
}

DerivedParams assume_optical_depth_dominance(const DerivedParams& params) {
  DerivedParams d = params;
  const double scale = 1.0 / d.p_a;
  d.m_a *= scale;
  d.j *= std::sqrt(scale);
  d.q *= std::sqrt(scale);
  d.p_a = 1.0;
  d.gamma_a = d.absorption_rate;
  d.gamma_b = 0.0;
  refresh_dimensionless(d);
  return d;
}

OpticalDepthIdentity optical_depth_identity(const DerivedParams& d) {
  OpticalDepthIdentity out{};
  out.lhs = d.kappa * d.kappa;
  out.rhs = 2.0 * d.gamma_b_total * d.pulse_duration * d.optical_depth;
  out.ratio = out.lhs / out.rhs;
  const double inherited = d.j * d.j * d.gamma_a / (d.delta * d.delta + d.gamma_a * d.gamma_a);
  out.correction = d.p_a * (d.absorption_rate / d.gamma_a) * inherited / d.gamma_b_total;
  return out;
}

double kappa_via_optical_depth(const DerivedParams& d) {
  const double norm2 = d.delta * d.delta + d.gamma_a * d.gamma_a;
  return std::sqrt(2.0 * d.p_a * d.absorption_rate * d.pulse_duration * d.optical_depth * d.j *
                   d.j / norm2);
}

std::vector<std::pair<std::string, double>> report(const DerivedParams& d) {
  return {
      {"kappa", d.kappa},
      {"epsilon", d.epsilon},
      {"eta", d.eta},
      {"rho", d.rho},
      {"Gamma_b", d.gamma_b_total},
      {"d", d.optical_depth},
      {"J", d.j},
      {"Q", d.q},
      {"a", d.a},
      {"Delta", d.delta},
      {"gamma_a", d.gamma_a},
      {"gamma_L", d.gamma_l},
      {"gamma_b", d.gamma_b},
      {"gamma_absp", d.absorption_rate},
      {"R_a", d.resonant_pumping_rate},
      {"R_op", d.pump_rate},
      {"P_a", d.p_a},
      {"psi", d.psi},
      {"delta_omega_b", d.delta_omega_b},
      {"omega_a", d.omega_a},
      {"omega_b", d.omega_b},
      {"sigma", d.cross_section},
      {"n_a", d.n_a},
      {"n_b", d.n_b},
      {"M_a", d.m_a},
      {"M_b", d.m_b},
      {"M_L", d.m_l},
      {"B_2", d.field_match.b2},
      {"Omega_2_minus_Omega_1", d.field_match.pump_shift_difference},
  };
}

}  // namespace nobleent
