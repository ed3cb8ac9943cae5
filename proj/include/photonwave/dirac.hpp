#pragma once

#include <array>
#include <vector>

#include "photonwave/types.hpp"

namespace photonwave::dirac {

using Vec2c = Eigen::Vector2cd;
using Mat2c = Eigen::Matrix2cd;

// gamma matrices in the representation where the two-spinor split of the
// free equation takes the coupled first-order form
//   (sigma.grad) chi = (-d_t - i m) phi
//   (sigma.grad) phi = (-d_t + i m) chi
// with phi the upper pair (dominant at rest for positive energy) and chi the
// lower pair: gamma0 = diag(I2, -I2), gamma^i = offdiag(sigma_i, -sigma_i).
std::array<Mat2c, 3> pauli_matrices();
std::array<Mat4c, 4> gamma_matrices();
double gamma_anticommutator_residual();  // exact 0

// Plane-wave amplitude; positive sign means Psi = amp * e^{-i(Et - p.x)},
// negative sign Psi = amp * e^{+i(Et - p.x)}, E = sqrt(p^2 + m^2).
// Amplitudes are unit-normalized.
struct DiracPlaneWave {
  Vec4c amplitude;
  Vec3 p;
  double mass;
  int energy_sign;  // +1 or -1
  double energy() const { return std::sqrt(p.squaredNorm() + mass * mass); }

  Vec2c phi() const { return amplitude.head<2>(); }
  Vec2c chi() const { return amplitude.tail<2>(); }
};

DiracPlaneWave dirac_plane_wave(const Vec3& p, int spin_index, int energy_sign,
                                double mass);

// Residual of (i gamma^mu d_mu - m) on the plane wave (analytic derivatives).
double dirac_equation_residual(const DiracPlaneWave& w);

// Pointwise sample of a spinor field with analytic derivatives; used by the
// residual routines below.
struct SpinorSample {
  Vec4c psi;
  Vec4c dt;
  std::array<Vec4c, 3> dx;
};

// Residuals of the two-spinor first-order lines and of the 4-spinor equation
// at one sample, plus the exact linear map between them:
// r_a = -i R_upper, r_b = +i R_lower.
struct MaxwellLikeResidual {
  double line_a;       // |(sigma.grad)chi - (-d_t - i m)phi|
  double line_b;       // |(sigma.grad)phi - (-d_t + i m)chi|
  double four_spinor;  // |(i gamma^mu d_mu - m) psi|
  double map_residual; // |(r_a; r_b) - (-i R_u; +i R_l)|
};

MaxwellLikeResidual maxwell_like_residual(const SpinorSample& s, double mass);

// Closed-form evolution by H(p) = gamma0 (gamma.p + m) per Fourier mode;
// operates on plane-wave coefficient lists.
struct DiracModeCoeff {
  Vec3 p;
  Vec4c c;
};
std::vector<DiracModeCoeff> evolve_modes(const std::vector<DiracModeCoeff>& modes,
                                         double mass, double duration);

// The five structural checks; each result carries the measured value and the
// bound it is held to.
struct AnalogyReport {
  double coupling_offdiag_norm;       // (1) |offdiag H(p)| = |p| > 0
  double coupling_growth_mismatch;    // (1) short-time cross-population vs |sigma.p xi| dt
  double swap_residual;               // (2) swapped solution in the m -> -m system
  double blockswap_fg_residual;       // (2) photon side: X f = g for all lambda
  double invariant_second_order_ratio;  // (3) change(2eps)/change(eps), expect ~4
  double invariant_first_order_change;  // (3) |change(eps)| itself, O(eps^2)
  double norm_conservation_drift;     // (4) relative drift of int(phi^2+chi^2)
  double component_ratio_error;       // (5) ||chi|/|phi| - |p|/(E+m)| at +E
  double rest_frame_purity;           // (5) small-component content at p=0
};

AnalogyReport analogy_suite(std::uint64_t seed);

}  // namespace photonwave::dirac
