#include "nobleent/rotating_frame.hpp"

#include <fmt/format.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "nobleent/error.hpp"

namespace nobleent {

namespace {

// Packed state: cell c occupies [4c, 4c + 4) as (f_y, f_z, k_y, k_z); then the
// light record (x_L,y, x_L,z, p_L,y, p_L,z); then the eliminated model's
// (k_y, k_z) per cell.
constexpr std::size_t dim = 16;
constexpr std::size_t light = 8;
constexpr std::size_t elim = 12;
using State = std::array<double, dim>;

struct Drive {
  double s_z;
  double s_y;
};

class Dynamics {
public:
  Dynamics(const LangevinModel& m, bool adiabatic)
      : m_(m),
        w_(m.frame_frequency()),
        detuning_(m.frame_detuning()),
        record_(std::numbers::sqrt2 / m.pulse_duration),
        adiabatic_(adiabatic) {}

  State derivative(double t, const State& y, Drive drive) const {
    State dy{};
    const double sn = std::sin(w_ * t);
    const double cs = std::cos(w_ * t);
    const double nu = m_.delta_omega_b;
    double lab = 0.0;
    for (int c = 0; c < 2; ++c) {
      const double s = m_.cell_sign(c);
      const double* x = y.data() + 4 * c;
      double* d = dy.data() + 4 * c;
      const double fy = x[0], fz = x[1], ky = x[2], kz = x[3];
      d[0] = s * m_.j * kz - detuning_ * fz + s * m_.q * drive.s_z * cs - m_.gamma_a * fy;
      d[1] = -s * m_.j * ky + detuning_ * fy - s * m_.q * drive.s_z * sn - m_.gamma_a * fz;
      d[2] = s * m_.j * fz - nu * kz - m_.gamma_b * ky;
      d[3] = -s * m_.j * fy + nu * ky - m_.gamma_b * kz;
      lab += sn * fy + cs * fz;

      if (adiabatic_) {
        const double ey = y[elim + 2 * c];
        const double ez = y[elim + 2 * c + 1];
        const CellState f = eliminated_alkali(m_, c, ey, ez, drive.s_z, t);
        dy[elim + 2 * c] = s * m_.j * f.f_z - nu * ez - m_.gamma_b * ey;
        dy[elim + 2 * c + 1] = -s * m_.j * f.f_y + nu * ey - m_.gamma_b * ez;
      }
    }
    const double faraday = std::numbers::sqrt2 * m_.q * lab + record_ * drive.s_y;
    dy[light + 0] = faraday * sn;
    dy[light + 1] = faraday * cs;
    dy[light + 2] = record_ * drive.s_z * sn;
    dy[light + 3] = record_ * drive.s_z * cs;
    return dy;
  }

private:
  const LangevinModel& m_;
  double w_;
  double detuning_;
  double record_;
  bool adiabatic_;
};

State axpy(const State& y, double h, const State& k) {
  State out;
  for (std::size_t i = 0; i < dim; ++i) out[i] = y[i] + h * k[i];
  return out;
}

State pack(const RotatingFrameState& s) {
  State y{};
  for (int c = 0; c < 2; ++c) {
    y[4 * c + 0] = s.cells[c].f_y;
    y[4 * c + 1] = s.cells[c].f_z;
    y[4 * c + 2] = s.cells[c].k_y;
    y[4 * c + 3] = s.cells[c].k_z;
    y[elim + 2 * c] = s.eliminated[c].k_y;
    y[elim + 2 * c + 1] = s.eliminated[c].k_z;
  }
  y[light + 0] = s.sector_y.x_l;
  y[light + 1] = s.sector_z.x_l;
  y[light + 2] = s.sector_y.p_l;
  y[light + 3] = s.sector_z.p_l;
  return y;
}

RotatingFrameState unpack(const LangevinModel& m, double t, const State& y, double s_z) {
  RotatingFrameState s;
  s.t = t;
  for (int c = 0; c < 2; ++c) {
    s.cells[c] = {y[4 * c], y[4 * c + 1], y[4 * c + 2], y[4 * c + 3]};
    s.eliminated[c] = eliminated_alkali(m, c, y[elim + 2 * c], y[elim + 2 * c + 1], s_z, t);
  }
  s.sector_y = {y[light + 0], y[light + 2]};
  s.sector_z = {y[light + 1], y[light + 3]};
  return s;
}

}  // namespace

LangevinModel LangevinModel::from(const DerivedParams& p) {
  LangevinModel m;
  m.gamma_a = p.gamma_a;
  m.gamma_b = p.gamma_b;
  m.j = p.j;
  m.q = p.q;
  m.delta = p.delta;
  m.omega_b = p.omega_b;
  m.delta_omega_b = p.delta_omega_b;
  m.pulse_duration = p.pulse_duration;
  m.alkali_q_factor = p.alkali_q_factor;
  return m;
}

double LangevinModel::kappa() const {
  return j * q * pulse_duration / std::hypot(delta, gamma_a);
}

double LangevinModel::total_noble_decay() const {
  return gamma_b + gamma_a * j * j / (delta * delta + gamma_a * gamma_a);
}

double RotatingFrameState::p_b_y() const {
  return (cells[0].k_y - cells[1].k_y) / std::numbers::sqrt2;
}

double RotatingFrameState::p_b_z() const {
  return (cells[0].k_z - cells[1].k_z) / std::numbers::sqrt2;
}

void check_step(const LangevinModel& m, double dt) {
  double limit = 1.0 / (20.0 * std::abs(m.delta));
  if (m.omega_b != 0.0) limit = std::min(limit, 1.0 / (20.0 * std::abs(m.omega_b)));
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw StepTooLarge(fmt::format("dt = {:.6g} s exceeds min(1/(20|Delta|), 1/(20 omega_b)) = {:.6g} s",
                                   dt, limit));
  }
}

CellState alkali_steady_state(const LangevinModel& m, int cell, double k_y, double k_z) {
  const double s = m.cell_sign(cell);
  const double d = m.frame_detuning();
  const double norm = d * d + m.gamma_a * m.gamma_a;
  CellState f;
  f.f_y = s * m.j * (m.gamma_a * k_z + d * k_y) / norm;
  f.f_z = s * m.j * (d * k_z - m.gamma_a * k_y) / norm;
  f.k_y = k_y;
  f.k_z = k_z;
  return f;
}

CellState eliminated_alkali(const LangevinModel& m, int cell, double k_y, double k_z, double s_z,
                            double t) {
  const double s = m.cell_sign(cell);
  const double w = m.frame_frequency();
  CellState f;
  f.f_y = s * (m.j * k_y + m.q * s_z * std::sin(w * t)) / m.delta;
  f.f_z = s * (m.j * k_z + m.q * s_z * std::cos(w * t)) / m.delta;
  f.k_y = k_y;
  f.k_z = k_z;
  return f;
}

std::vector<RotatingFrameState> integrate_rotating_frame(const LangevinModel& m,
                                                         const RotatingFrameState& initial,
                                                         const McSettings& settings,
                                                         const IntegrationOptions& options) {
  if (!(settings.t_final > 0.0)) throw ValidationError("t_final", "must be positive");
  check_step(m, settings.dt);

  const auto steps = static_cast<std::size_t>(std::ceil(settings.t_final / settings.dt - 1e-9));
  const double h = settings.t_final / static_cast<double>(steps);
  const Dynamics dynamics(m, options.include_adiabatic);
  const auto bias = [&](double t) { return options.probe_sz ? options.probe_sz(t) : 0.0; };

  std::mt19937_64 rng = substream(settings.seed, options.trajectory);
  std::normal_distribution<double> unit(0.0, 1.0);

  State y = pack(initial);
  if (options.vacuum_initial) {
    const double alkali_sd = std::sqrt(m.alkali_q_factor * vacuum_variance);
    const double noble_sd = std::sqrt(vacuum_variance);
    for (int c = 0; c < 2; ++c) {
      y[4 * c + 0] += alkali_sd * unit(rng);
      y[4 * c + 1] += alkali_sd * unit(rng);
      y[4 * c + 2] += noble_sd * unit(rng);
      y[4 * c + 3] += noble_sd * unit(rng);
    }
  }

  const double shot_sd = std::sqrt(m.pulse_duration / (2.0 * h));
  const double alkali_kick = std::sqrt(m.alkali_q_factor * m.gamma_a * h);
  const double noble_kick = std::sqrt(m.gamma_b * h);

  std::vector<RotatingFrameState> out;
  out.push_back(unpack(m, 0.0, y, bias(0.0)));
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * h;
    double shot_z = 0.0;
    double shot_y = 0.0;
    if (options.noise) {
      shot_z = shot_sd * unit(rng);
      shot_y = shot_sd * unit(rng);
    }
    const auto drive = [&](double time) { return Drive{bias(time) + shot_z, shot_y}; };

    const State k1 = dynamics.derivative(t, y, drive(t));
    const State k2 = dynamics.derivative(t + 0.5 * h, axpy(y, 0.5 * h, k1), drive(t + 0.5 * h));
    const State k3 = dynamics.derivative(t + 0.5 * h, axpy(y, 0.5 * h, k2), drive(t + 0.5 * h));
    const State k4 = dynamics.derivative(t + h, axpy(y, h, k3), drive(t + h));
    for (std::size_t i = 0; i < dim; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }

    if (options.noise) {
      for (int c = 0; c < 2; ++c) {
        y[4 * c + 0] += alkali_kick * unit(rng);
        y[4 * c + 1] += alkali_kick * unit(rng);
        y[4 * c + 2] += noble_kick * unit(rng);
        y[4 * c + 3] += noble_kick * unit(rng);
      }
    }

    const bool last = n + 1 == steps;
    if (last || (options.record_every > 0 && (n + 1) % options.record_every == 0)) {
      const double t_next = last ? settings.t_final : t + h;
      out.push_back(unpack(m, t_next, y, bias(t_next)));
    }
  }
  return out;
}

KappaCheck kappa_from_trajectories(const LangevinModel& m, double dt) {
  RotatingFrameState init;
  const double k = 1.0 / std::numbers::sqrt2;
  init.cells[0] = alkali_steady_state(m, 0, k, 0.0);
  init.cells[1] = alkali_steady_state(m, 1, -k, 0.0);

  McSettings settings;
  settings.dt = dt;
  settings.t_final = m.pulse_duration;
  const auto states = integrate_rotating_frame(m, init, settings);

  // Eliminated-model response to p_b,y = 1 decaying at Gamma_b:
  // (2/T) int e^{-G t} sin(w t - psi) sin(w t) dt.
  const double T = m.pulse_duration;
  const double g = m.total_noble_decay();
  const double w = m.frame_frequency();
  const double psi = std::atan2(m.gamma_a, m.delta);
  const double flat = g > 0.0 ? -std::expm1(-g * T) / g : T;
  const std::complex<double> rate(-g, 2.0 * w);
  std::complex<double> oscillating;
  if (std::abs(rate) > 0.0) {
    oscillating = std::exp(std::complex<double>(0.0, -psi)) * (std::exp(rate * T) - 1.0) / rate;
  } else {
    oscillating = std::exp(std::complex<double>(0.0, -psi)) * T;
  }

  KappaCheck out{};
  out.x_l = states.back().sector_y.x_l;
  out.envelope = (std::cos(psi) * flat - oscillating.real()) / T;
  out.kappa_effective = out.x_l / out.envelope;
  out.kappa = m.kappa();
  out.relative_error = std::abs(out.kappa_effective - out.kappa) / out.kappa;
  return out;
}

SelfRotation self_rotation_response(const LangevinModel& m, double dt) {
  McSettings settings;
  settings.dt = dt;
  settings.t_final = m.pulse_duration;
  IntegrationOptions options;
  const double w = m.frame_frequency();
  options.probe_sz = [w](double t) { return std::numbers::sqrt2 * std::sin(w * t); };
  const auto final_state = integrate_rotating_frame(m, RotatingFrameState{}, settings, options).back();

  SelfRotation out{};
  out.x_l_y = final_state.sector_y.x_l;
  out.x_l_z = final_state.sector_z.x_l;
  out.p_l_y = final_state.sector_y.p_l;
  out.p_b_y = final_state.p_b_y();
  out.response = std::hypot(out.x_l_y, out.x_l_z);
  return out;
}

AdiabaticDeviation adiabatic_deviation(const LangevinModel& m, double dt, double t_final,
                                       double window_start) {
  RotatingFrameState init;
  const double k = 1.0 / std::numbers::sqrt2;
  init.eliminated[0] = eliminated_alkali(m, 0, k, 0.0, 0.0, 0.0);
  init.eliminated[1] = eliminated_alkali(m, 1, -k, 0.0, 0.0, 0.0);
  init.cells = init.eliminated;

  McSettings settings;
  settings.dt = dt;
  settings.t_final = t_final;
  IntegrationOptions options;
  options.include_adiabatic = true;
  options.record_every = 10;
  const auto states = integrate_rotating_frame(m, init, settings, options);

  double diff = 0.0;
  double norm = 0.0;
  for (const auto& s : states) {
    if (s.t < window_start) continue;
    for (int c = 0; c < 2; ++c) {
      const double dy = s.cells[c].f_y - s.eliminated[c].f_y;
      const double dz = s.cells[c].f_z - s.eliminated[c].f_z;
      diff += dy * dy + dz * dz;
      norm += s.eliminated[c].f_y * s.eliminated[c].f_y + s.eliminated[c].f_z * s.eliminated[c].f_z;
    }
  }
  if (!(norm > 0.0)) throw ValidationError("window_start", "no samples in the comparison window");
  return {m.delta, std::sqrt(diff / norm)};
}

AdiabaticScan adiabatic_scan(const LangevinModel& base, const std::vector<double>& deltas,
                             double t_final, double window_start) {
  AdiabaticScan scan;
  std::vector<double> log_delta;
  std::vector<double> log_dev;
  for (double delta : deltas) {
    LangevinModel m = base;
    m.delta = delta;
    m.delta_omega_b = delta * m.j * m.j / (delta * delta + m.gamma_a * m.gamma_a);
    double dt = 1.0 / (40.0 * std::abs(delta));
    if (m.omega_b != 0.0) dt = std::min(dt, 1.0 / (40.0 * std::abs(m.omega_b)));
    scan.points.push_back(adiabatic_deviation(m, dt, t_final, window_start));
    log_delta.push_back(std::log(delta));
    log_dev.push_back(std::log(scan.points.back().deviation));
  }
  scan.slope = deltas.size() >= 2 ? fit_line(log_delta, log_dev).slope : 0.0;
  return scan;
}

MeasurementSimulation simulate_measurement(const LangevinModel& m, const McSettings& settings) {
  settings.validate();
  check_step(m, settings.dt);
  McSettings pulse = settings;
  pulse.t_final = m.pulse_duration;

  const std::size_t n = settings.n_samples;
  std::vector<double> x(n);
  std::vector<double> p(n);
  parallel_for(n, [&](std::size_t i) {
    IntegrationOptions options;
    options.noise = true;
    options.vacuum_initial = true;
    options.trajectory = i;
    const auto final_state = integrate_rotating_frame(m, RotatingFrameState{}, pulse, options).back();
    x[i] = final_state.sector_y.x_l;
    p[i] = final_state.p_b_y();
  });

  const Moments mx = compute_moments(x);
  const Moments mp = compute_moments(p);
  double cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) cov += (x[i] - mx.mean) * (p[i] - mp.mean);
  cov /= static_cast<double>(n - 1);
  const double beta = cov / mx.variance;

  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) residual[i] = p[i] - beta * x[i];
  const Moments mr = compute_moments(residual);

  ChannelSpec spec;
  spec.kappa = m.kappa();
  spec.eta = std::min(1.0, 2.0 * m.total_noble_decay() * m.pulse_duration);
  spec.rho = 4.0 * m.alkali_q_factor * m.gamma_a / (m.j * m.j * m.pulse_duration);

  MeasurementSimulation out{};
  out.conditional_variance = mr.variance;
  out.stderr_conditional = mr.stderr_variance;
  out.regression_gain = -beta;
  out.predicted = post_feedback_variance(spec);
  out.n_trajectories = n;
  return out;
}

}  // namespace nobleent
