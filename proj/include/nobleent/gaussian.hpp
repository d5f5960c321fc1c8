#pragma once

// Closed-form Gaussian description of one quadrature sector of the two-cell
// experiment. A sector holds the light quadratures (x_L, p_L) and the
// nonlocal noble-gas quadratures (x_b, p_b), with p_b the normalized spin
// difference. The vacuum variance is 1/2 per quadrature.

#include <Eigen/Dense>

namespace nobleent {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Index of each quadrature in a sector's mean vector and covariance.
namespace quadrature {
inline constexpr int x_l = 0;
inline constexpr int p_l = 1;
inline constexpr int x_b = 2;
inline constexpr int p_b = 3;
}  // namespace quadrature

inline constexpr double vacuum_variance = 0.5;

enum class SectorLabel { y, z };

/// Symplectic form for the (x_L, p_L, x_b, p_b) ordering.
Mat4 symplectic_form();

/// Both symplectic eigenvalues of a 4x4 covariance, ascending.
Eigen::Vector2d symplectic_eigenvalues(const Mat4& cov);

struct GaussianSector {
  SectorLabel label = SectorLabel::y;
  Vec4 mean = Vec4::Zero();
  Mat4 cov = Mat4::Identity() * vacuum_variance;

  static GaussianSector vacuum(SectorLabel label = SectorLabel::y);

  double variance(int index) const { return cov(index, index); }

  /// Symmetric, non-negative diagonal, and all symplectic eigenvalues >= 1/2 - tol.
  bool is_physical(double tol = 1e-10) const;
};

/// Dimensionless channel parameters: coupling kappa, probe loss epsilon,
/// noble-gas decoherence eta and alkali-to-noble noise ratio rho.
struct ChannelSpec {
  double kappa = 0.0;
  double epsilon = 0.0;
  double eta = 0.0;
  double rho = 0.0;

  /// Throws ValidationError on kappa < 0, epsilon/eta outside [0, 1] or rho < 0.
  void validate() const;
};

/// Gaussian channel acting as mean -> X mean, cov -> X cov X^T + Y.
struct GaussianChannel {
  Mat4 transfer = Mat4::Identity();
  Mat4 noise = Mat4::Zero();

  GaussianSector apply(const GaussianSector& in) const;
};

/// x_L -> x_L + kappa p_b, x_b -> x_b + kappa p_L; p_L and p_b pass through.
GaussianChannel ideal_channel(double kappa);

/// Probe loss epsilon, noble-gas decoherence eta and alkali noise rho on top of
/// the ideal relations; five independent vacuum noises of variance 1/2.
GaussianChannel lossy_channel(const ChannelSpec& spec);

/// Measurement feedback p_b -> p_b + G x_L. Realized as the shear
/// exp(-i G x_L x_b), which also moves p_L by G x_b so the map stays
/// symplectic; the atomic marginal equals a classical measure-and-displace.
GaussianChannel feedback_map(double gain);
GaussianSector feedback(const GaussianSector& sector, double gain);

/// Gain G minimizing var(p_b + G x_L) after the lossy channel on vacuum input.
double optimal_gain(const ChannelSpec& spec);

/// Closed-form minimum of var(p_b + G x_L).
double post_feedback_variance(const ChannelSpec& spec);

struct SqueezeResult {
  double xi;             // two-mode squeezing parameter
  double var_out;        // exp(-2 xi) / 2
  double squeezing_db;   // -10 log10(2 var_out), positive when squeezed
  double gain;
  double epr_value;      // 4 var_out for two identical sectors
  bool entangled;
};

SqueezeResult squeezing_parameter(const ChannelSpec& spec);

struct EprResult {
  double value;
  bool entangled;
};

/// var(k_1y - k_2y) + var(k_1z - k_2z) = 2 var(p_b,y) + 2 var(p_b,z), entangled when < 2.
EprResult epr_criterion(const GaussianSector& sector_y, const GaussianSector& sector_z);

/// var(p_b | x_L). Throws DegenerateMeasurement when var(x_L) <= 1e-15.
double conditional_variance(const GaussianSector& sector);

/// Squeezing in dB relative to vacuum: -10 log10(2 var).
double variance_to_db(double variance);
double db_to_variance(double db);

}  // namespace nobleent
