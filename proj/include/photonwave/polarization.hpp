#pragma once

#include "photonwave/types.hpp"

namespace photonwave::polarization {

// Helicity basis attached to a wave vector: eps0 = k/|k| (real, longitudinal)
// and circular vectors eps(k,+1), eps(k,-1) = conj(eps(k,+1)) satisfying
// (tau.khat) eps(k,l) = l eps(k,l).
//
// Smooth gauge away from the z axis:
//   eps(k,+1) = (k1 k3 - i k2|k|, k2 k3 + i k1|k|, -(k1^2+k2^2))^T
//               / (sqrt(2) |k| kappa),  kappa = sqrt(k1^2+k2^2),
// whose third component is real and non-positive. On the axis (kappa = 0)
// the closed-form triad at +z is used, with eps(-|k|z, l) = eps(+|k|z, -l)
// per the parity rule eps(-k, l) = eps(k, -l) that the smooth formula obeys.
struct PolarizationTriad {
  Vec3 k;
  Vec3c eps0;
  Vec3c eps_plus;
  Vec3c eps_minus;
};

Vec3c longitudinal(const Vec3& k);            // throws ZeroWaveVector
Vec3c circular(const Vec3& k, int lambda);    // lambda in {+1,-1}
Vec3c polarization_vector(const Vec3& k, int lambda);  // lambda in {-1,0,+1}

PolarizationTriad triad(const Vec3& k);

struct IdentityReport {
  double orthonormality_residual;  // max |eps_l^dag eps_m - delta_lm|
  double completeness_residual;    // max |sum_l eps eps^dag - I3|
  double helicity_residual;        // max |(tau.khat) eps_l - l eps_l|
  double conjugation_residual;     // max |eps(k,-1) - conj(eps(k,+1))|
};

IdentityReport verify_polarization_identities(const Vec3& k);

}  // namespace photonwave::polarization
