#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nobleent/species.hpp"

namespace nobleent {

struct BufferGas {
  std::string name;
  double pressure_torr;

  bool operator==(const BufferGas&) const = default;
};

/// Optical pumping is specified either by its rate R_op or by the alkali
/// polarization it should produce; the other follows from
/// P_a = R_op / (R_op + gamma_sd).
struct PumpSpec {
  std::optional<double> rate;                  // R_op, s^-1
  std::optional<double> target_polarization;  // P_a

  bool operator==(const PumpSpec&) const = default;
};

/// Full description of one two-cell experiment. Both cells are identical
/// except for the field / light-shift settings that field_matching() derives.
/// All quantities are in internal units (cm, s, K, W, G, rad/s; optical
/// detuning and linewidth in Hz).
struct PhysicalConfig {
  ExchangePair pair;

  double cell_length;  // L, cm
  double cell_area;    // A, cm^2
  double temperature;  // K
  double noble_pressure_torr;
  std::vector<BufferGas> buffer_gases;
  std::optional<double> alkali_density_override;  // cm^-3
  double fill_temperature = 293.15;               // K, for the noble-gas ideal-gas density
  double noble_polarization;                      // P_b

  double probe_power;         // W
  double probe_detuning;      // delta_e, Hz
  double excited_linewidth;   // Gamma_e (FWHM), Hz
  double pulse_duration;      // T, s

  PumpSpec pump;
  double alkali_q_factor;       // q
  double pump_light_shift = 0;  // Omega_1, rad/s

  double spin_destruction_rate;  // gamma_sd, s^-1
  double noble_relaxation_rate;  // gamma_b, s^-1

  double field_b1;                       // G
  std::optional<double> delta_override;  // rad/s

  bool operator==(const PhysicalConfig&) const = default;
};

/// Throws ValidationError naming the offending field.
void validate(const PhysicalConfig& config);

enum class ElectronRadius { physical, as_printed };

struct DeriveOptions {
  bool allow_regime_violation = false;
  ElectronRadius electron_radius = ElectronRadius::physical;
};

struct Magnetizations {
  double alkali_density;  // n_a, cm^-3
  double noble_density;   // n_b, cm^-3
  double alkali_atoms;    // N_a
  double noble_atoms;     // N_b
  double alkali_polarization;  // P_a
  double pump_rate;            // R_op
  double m_a;
  double m_b;
  double m_l;
};

struct Couplings {
  double j;  // s^-1
  double a;  // dimensionless, sign of delta_e
  double q;  // s^-1
};

struct Precession {
  double omega_a;  // rad/s
  double omega_b;  // rad/s
  double delta;    // omega_a - omega_b
};

struct FieldMatch {
  double b2;                     // G
  double pump_shift_difference;  // Omega_2 - Omega_1, rad/s
};

struct Relaxation {
  double gamma_a;
  double gamma_l;  // cm^-1
  double gamma_b_total;
  double kappa;
  double epsilon;
  double eta;
  double rho;
  double psi;
  double delta_omega_b;
  double cross_section;  // cm^2
  double optical_depth;
  double resonant_pumping_rate;  // R_a
  double absorption_rate;        // gamma_absp
};

/// Every symbol the Gaussian theory consumes, plus the bookkeeping behind it.
struct DerivedParams {
  double n_a, n_b;
  double m_a, m_b, m_l;
  double p_a;
  double pump_rate;
  double gamma_a;
  double gamma_l;
  double gamma_b;        // direct noble-gas relaxation
  double gamma_b_total;  // Gamma_b
  double j, a, q;
  double delta;
  double omega_a, omega_b;
  double delta_omega_b;
  double psi;
  double kappa, epsilon, eta, rho;
  double cross_section;
  double optical_depth;
  double resonant_pumping_rate;
  double absorption_rate;
  double pulse_duration;
  double alkali_q_factor;
  double nuclear_spin;
  FieldMatch field_match;
  std::vector<std::string> warnings;
};

Magnetizations magnetizations(const PhysicalConfig& config);

Couplings coupling_rates(const PhysicalConfig& config, const Magnetizations& mags,
                         ElectronRadius radius = ElectronRadius::physical);

/// Cell frequencies; cell 1 takes the '+' sign of the exchange terms, cell 2 the '-'.
Precession precession_frequencies(const PhysicalConfig& config, double j, double m_a, double m_b,
                                  int cell_index);

/// B_2 and Omega_2 - Omega_1 that equalize both cells' alkali and noble-gas frequencies.
FieldMatch field_matching(const PhysicalConfig& config, double j, double m_a, double m_b);

/// Relaxation rates and the dimensionless channel parameters. Throws
/// OffResonanceViolation when |Delta| < 5 max(gamma_a, J, Q) unless
/// `allow_violation` is set, in which case a warning is appended.
Relaxation relaxation_and_dimensionless(const PhysicalConfig& config, const Magnetizations& mags,
                                        const Couplings& couplings, double delta,
                                        ElectronRadius radius, bool allow_violation,
                                        std::vector<std::string>* warnings);

DerivedParams derive(const PhysicalConfig& config, const DeriveOptions& options = {});

struct OpticalDepthIdentity {
  double lhs;         // kappa^2
  double rhs;         // 2 Gamma_b T d
  double ratio;       // lhs / rhs
  double correction;  // closed-form prediction of ratio
};

/// kappa^2 versus 2 Gamma_b T d. The ratio equals
/// P_a (gamma_absp / gamma_a) (J^2 gamma_a / (Delta^2 + gamma_a^2)) / Gamma_b.
OpticalDepthIdentity optical_depth_identity(const DerivedParams& params);

/// kappa through the optical depth: sqrt(2 P_a gamma_absp T d J^2 / (Delta^2 + gamma_a^2)).
double kappa_via_optical_depth(const DerivedParams& params);

/// The optical-depth derivation's assumptions: full alkali polarization
/// (M_a, J and Q rescaled to P_a = 1), gamma_a = gamma_absp and gamma_b = 0.
/// Under them kappa^2 = 2 Gamma_b T d exactly.
DerivedParams assume_optical_depth_dominance(const DerivedParams& params);

/// Recomputes kappa, Gamma_b, eta, rho, psi and delta_omega_b after
/// gamma_a, gamma_b or P_a have been overridden in `params`.
void refresh_dimensionless(DerivedParams& params);

/// Flat key/value report in a fixed key order.
std::vector<std::pair<std::string, double>> report(const DerivedParams& params);

}  // namespace nobleent
