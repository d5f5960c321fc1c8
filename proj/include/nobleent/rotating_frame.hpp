#pragma once

// Linear Heisenberg-Langevin dynamics of the two cells in a frame rotating
// with the dressed noble-gas precession omega_b - delta_omega_b. Amplitudes
// are normalized so that a coherent spin state has variance 1/2 per
// transverse component. Cell 1 carries the '+' exchange sign, cell 2 the '-'
// (or '+' again for the same-orientation control).

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "nobleent/params.hpp"
#include "nobleent/stochastic.hpp"

namespace nobleent {

struct LangevinModel {
  double gamma_a = 0.0;        // s^-1
  double gamma_b = 0.0;        // direct noble-gas relaxation, s^-1
  double j = 0.0;              // s^-1
  double q = 0.0;              // s^-1
  double delta = 0.0;          // omega_a - omega_b, rad/s
  double omega_b = 0.0;        // rad/s
  double delta_omega_b = 0.0;  // exchange shift of the noble gas, rad/s
  double pulse_duration = 1.0; // T, s
  double alkali_q_factor = 1.0;
  bool opposite_cells = true;

  static LangevinModel from(const DerivedParams& params);

  /// Frame frequency omega_b - delta_omega_b.
  double frame_frequency() const { return omega_b - delta_omega_b; }
  /// Alkali detuning seen in the frame.
  double frame_detuning() const { return delta + delta_omega_b; }
  /// Exchange sign of cell 0 or 1.
  double cell_sign(int cell) const { return cell == 1 && opposite_cells ? -1.0 : 1.0; }
  double kappa() const;
  /// Gamma_b = gamma_b + gamma_a J^2 / (Delta^2 + gamma_a^2).
  double total_noble_decay() const;
};

struct CellState {
  double f_y = 0.0, f_z = 0.0;  // alkali, rotating frame
  double k_y = 0.0, k_z = 0.0;  // noble gas, rotating frame
};

struct LightRecord {
  double x_l = 0.0;
  double p_l = 0.0;
};

struct RotatingFrameState {
  double t = 0.0;
  std::array<CellState, 2> cells{};
  LightRecord sector_y{};
  LightRecord sector_z{};
  /// Adiabatically eliminated model; f follows k and the probe instantaneously.
  std::array<CellState, 2> eliminated{};

  /// (k_1 - k_2) / sqrt(2) for the y and z components.
  double p_b_y() const;
  double p_b_z() const;
};

struct IntegrationOptions {
  bool include_adiabatic = false;
  bool noise = false;
  /// Deterministic circular-polarization drive S_z(t), in units where the
  /// record p_L,y = (sqrt(2)/T) int S_z sin(w t) dt.
  std::function<double(double)> probe_sz;
  /// Keep every n-th state (0: initial and final only).
  std::size_t record_every = 0;
  /// Adds vacuum fluctuations to the initial spins (variance q/2 alkali, 1/2 noble gas).
  bool vacuum_initial = false;
  /// Random substream index; with the settings' seed it fixes every draw of the path.
  std::uint64_t trajectory = 0;
};

/// Throws StepTooLarge unless dt <= min(1 / (20 |Delta|), 1 / (20 omega_b)).
void check_step(const LangevinModel& model, double dt);

/// f at the fixed point of the alkali equations for frozen k and S_z = 0.
CellState alkali_steady_state(const LangevinModel& model, int cell, double k_y, double k_z);

/// f from the eliminated model: +-(J/Delta) k +- (Q/Delta) S_z e(t).
CellState eliminated_alkali(const LangevinModel& model, int cell, double k_y, double k_z,
                            double s_z, double t);

/// RK4 on the linear drift; with `noise` each step adds independent white-noise
/// increments (alkali q gamma_a dt, noble gamma_b dt) and draws the probe
/// shot noise as a step-constant S_y, S_z of variance T / (2 dt).
std::vector<RotatingFrameState> integrate_rotating_frame(const LangevinModel& model,
                                                         const RotatingFrameState& initial,
                                                         const McSettings& settings,
                                                         const IntegrationOptions& options = {});

struct KappaCheck {
  double x_l;              // accumulated x_L,y for unit p_b,y
  double envelope;         // (2/T) int e^{-Gamma_b t} sin(w t - psi) sin(w t) dt
  double kappa_effective;  // x_l / envelope
  double kappa;            // J Q T / sqrt(Delta^2 + gamma_a^2)
  double relative_error;
};

/// Prepares p_b,y = 1 with the alkali at its steady state and integrates one pulse.
KappaCheck kappa_from_trajectories(const LangevinModel& model, double dt);

struct SelfRotation {
  double x_l_y;
  double x_l_z;
  double p_l_y;
  double p_b_y;
  double response;  // hypot(x_l_y, x_l_z)
};

/// Drives both cells with S_z(t) = sqrt(2) sin(w t) (p_L,y close to 1) and no
/// noble-gas displacement.
SelfRotation self_rotation_response(const LangevinModel& model, double dt);

struct AdiabaticDeviation {
  double delta;
  double deviation;  // RMS |f_full - f_eliminated| / RMS |f_eliminated| over the window
};

/// Deterministic comparison of full and eliminated dynamics for t >= window_start.
AdiabaticDeviation adiabatic_deviation(const LangevinModel& model, double dt, double t_final,
                                       double window_start);

struct AdiabaticScan {
  std::vector<AdiabaticDeviation> points;
  double slope;  // d log(deviation) / d log(Delta)
};

/// Repeats adiabatic_deviation over `deltas` with dt = 1 / (40 Delta) and
/// delta_omega_b following each Delta.
AdiabaticScan adiabatic_scan(const LangevinModel& base, const std::vector<double>& deltas,
                             double t_final, double window_start);

struct MeasurementSimulation {
  double conditional_variance;  // var(p_b,y(T) | x_L,y)
  double stderr_conditional;
  double regression_gain;       // -cov(p_b, x_L) / var(x_L)
  double predicted;             // closed form at (kappa, 0, eta, rho) of the model
  std::size_t n_trajectories;
};

/// Noisy trajectories from vacuum; the Gaussian posterior of p_b,y given the
/// recorded x_L,y is estimated by linear regression.
MeasurementSimulation simulate_measurement(const LangevinModel& model, const McSettings& settings);

}  // namespace nobleent
