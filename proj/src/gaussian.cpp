#include "nobleent/gaussian.hpp"

#include <fmt/format.h>

#include <cmath>

#include "nobleent/error.hpp"

namespace nobleent {

namespace q = quadrature;

Mat4 symplectic_form() {
  Mat4 omega = Mat4::Zero();
  omega(q::x_l, q::p_l) = 1.0;
  omega(q::p_l, q::x_l) = -1.0;
  omega(q::x_b, q::p_b) = 1.0;
  omega(q::p_b, q::x_b) = -1.0;
  return omega;
}

Eigen::Vector2d symplectic_eigenvalues(const Mat4& cov) {
  // Eigenvalues of Omega V come in pairs +-i nu.
  const Eigen::EigenSolver<Mat4> solver(symplectic_form() * cov, false);
  Eigen::Vector4d magnitudes = solver.eigenvalues().imag().cwiseAbs();
  std::sort(magnitudes.data(), magnitudes.data() + 4);
  return {0.5 * (magnitudes[0] + magnitudes[1]), 0.5 * (magnitudes[2] + magnitudes[3])};
}

GaussianSector GaussianSector::vacuum(SectorLabel label) {
  GaussianSector s;
  s.label = label;
  return s;
}

bool GaussianSector::is_physical(double tol) const {
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
  if ((cov.diagonal().array() < 0.0).any()) return false;
  return symplectic_eigenvalues(cov).minCoeff() >= vacuum_variance - tol;
}

void ChannelSpec::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw ValidationError("kappa", fmt::format("must be >= 0, got {}", kappa));
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ValidationError("epsilon", fmt::format("must lie in [0, 1], got {}", epsilon));
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw ValidationError("eta", fmt::format("must lie in [0, 1], got {}", eta));
  }
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw ValidationError("rho", fmt::format("must be >= 0, got {}", rho));
  }
}

GaussianSector GaussianChannel::apply(const GaussianSector& in) const {
  GaussianSector out;
  out.label = in.label;
  out.mean = transfer * in.mean;
  out.cov = transfer * in.cov * transfer.transpose() + noise;
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

GaussianChannel ideal_channel(double kappa) {
  if (!(kappa >= 0.0)) throw ValidationError("kappa", "must be >= 0");
  GaussianChannel ch;
  ch.transfer(q::x_l, q::p_b) = kappa;
  ch.transfer(q::x_b, q::p_l) = kappa;
  return ch;
}

GaussianChannel lossy_channel(const ChannelSpec& spec) {
  spec.validate();
  const double light = std::sqrt(1.0 - spec.epsilon);
  const double spin = std::sqrt(1.0 - spec.eta);

  GaussianChannel ch;
  ch.transfer = Mat4::Zero();
  ch.transfer(q::x_l, q::x_l) = light;
  ch.transfer(q::x_l, q::p_b) = light * spec.kappa;
  ch.transfer(q::p_l, q::p_l) = light;
  ch.transfer(q::x_b, q::x_b) = spin;
  ch.transfer(q::x_b, q::p_l) = spin * spec.kappa;
  ch.transfer(q::p_b, q::p_b) = spin;

  // w0 enters x_L through sqrt(1 - eps) kappa sqrt(rho); w1..w4 through sqrt(eps), sqrt(eta).
  ch.noise(q::x_l, q::x_l) = vacuum_variance * ((1.0 - spec.epsilon) * spec.kappa * spec.kappa *
                                                    spec.rho +
                                                spec.epsilon);
  ch.noise(q::p_l, q::p_l) = vacuum_variance * spec.epsilon;
  ch.noise(q::x_b, q::x_b) = vacuum_variance * spec.eta;
  ch.noise(q::p_b, q::p_b) = vacuum_variance * spec.eta;
  return ch;
}

GaussianChannel feedback_map(double gain) {
  GaussianChannel ch;
  ch.transfer(q::p_b, q::x_l) = gain;
  ch.transfer(q::p_l, q::x_b) = gain;
  return ch;
}

GaussianSector feedback(const GaussianSector& sector, double gain) {
  return feedback_map(gain).apply(sector);
}

double optimal_gain(const ChannelSpec& spec) {
  spec.validate();
  const double k2 = spec.kappa * spec.kappa;
  return -spec.kappa * std::sqrt(1.0 - spec.epsilon) * std::sqrt(1.0 - spec.eta) /
         (1.0 + k2 * (spec.rho + 1.0) * (1.0 - spec.epsilon));
}

double post_feedback_variance(const ChannelSpec& spec) {
  spec.validate();
  const double s = spec.kappa * spec.kappa * (1.0 - spec.epsilon);
  return vacuum_variance * (s * (spec.eta + spec.rho) + 1.0) / (s * (1.0 + spec.rho) + 1.0);
}

SqueezeResult squeezing_parameter(const ChannelSpec& spec) {
  spec.validate();
  const double s = spec.kappa * spec.kappa * (1.0 - spec.epsilon);
  SqueezeResult r{};
  r.xi = 0.5 * std::log((s * (1.0 + spec.rho) + 1.0) / (s * (spec.eta + spec.rho) + 1.0));
  r.var_out = std::exp(-2.0 * r.xi) / 2.0;
  r.squeezing_db = variance_to_db(r.var_out);
  r.gain = optimal_gain(spec);
  r.epr_value = 4.0 * r.var_out;
  r.entangled = r.epr_value < 2.0;
  return r;
}

EprResult epr_criterion(const GaussianSector& sector_y, const GaussianSector& sector_z) {
  const double value = 2.0 * sector_y.variance(q::p_b) + 2.0 * sector_z.variance(q::p_b);
  return {value, value < 2.0};
}

double conditional_variance(const GaussianSector& sector) {
  const double var_x = sector.cov(q::x_l, q::x_l);
  if (var_x <= 1e-15) {
    throw DegenerateMeasurement(fmt::format("var(x_L) = {} is degenerate", var_x));
  }
  const double c = sector.cov(q::p_b, q::x_l);
  return sector.cov(q::p_b, q::p_b) - c * c / var_x;
}

double variance_to_db(double variance) { return -10.0 * std::log10(2.0 * variance); }

double db_to_variance(double db) { return std::pow(10.0, -db / 10.0) / 2.0; }

}  // namespace nobleent
