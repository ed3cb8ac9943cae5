#pragma once

#include <array>

#include "photonwave/field.hpp"
#include "photonwave/modes.hpp"
#include "photonwave/types.hpp"

namespace photonwave::lorentz {

// Infinitesimal transformation parameters: antisymmetric eps^{mu nu}.
// Spatial pairs generate rotations, (0,l) pairs generate boosts.
struct InfinitesimalLorentz {
  std::array<std::array<double, 4>, 4> eps{};  // eps[mu][nu]

  void validate() const;  // antisymmetry and |eps| <= 1e-2

  static InfinitesimalLorentz rotation(int axis, double angle);
  static InfinitesimalLorentz boost(int axis, double rapidity);
};

// Lambda = I - (i/2) eps^{mu nu} Sigma_{mu nu}.
Mat6c transform_matrix(const InfinitesimalLorentz& eps);

// Applies Lambda pointwise.
Field6 spinor_transform(const Field6& psi, const InfinitesimalLorentz& eps);

// ||beta0 Lambda^dag beta0 Lambda - I||, O(eps^2).
double pseudo_unitarity_defect(const InfinitesimalLorentz& eps);

// Pointwise checks of the generator variation identity on an on-shell
// superposition of transverse modes, every index pair (rho, sigma):
// psibar (beta_rho d_sigma - beta_sigma d_rho) psi
//   == psibar (i [beta^mu, Sigma_{rho sigma}] d_mu) psi,
// plus the reduced boost bilinear psibar[-(beta.grad)chi_l + beta0 d_l]psi.
// Derivatives are analytic (exact) for the mode superposition.
struct DeltaLReport {
  double max_pair_mismatch;     // worst over all (rho, sigma) pairs and points
  double max_boost_bilinear;    // worst reduced boost bilinear
  double field_scale;           // max |psi| for normalization
};

DeltaLReport delta_L_check(const modes::ModeSuperposition& field, const BoxSpec& box,
                           double t);

// Full second-order variation: delta L(x) = L_T - L with
// L_T = (Lambda psi)^dag beta0 (i beta^mu a_{mu nu} d^nu)(Lambda psi),
// a = g + eps. Returns max |delta L| over the grid (L itself vanishes
// on shell). Scales as O(eps^2).
double delta_L_magnitude(const modes::ModeSuperposition& field, const BoxSpec& box,
                         double t, const InfinitesimalLorentz& eps);

// s1 = E^2 - B^2 pointwise and its identity with the spinor bilinear:
// psibar psi = (E^2 - B^2)/2.
struct ScalarInvariantReport {
  std::vector<double> s1;              // E^2 - B^2 per grid point
  double identity_residual;            // max |s1 - 2 Re(psibar psi)|
};
ScalarInvariantReport scalar_invariants(const BoxSpec& box, const RealField3& e,
                                        const RealField3& b);

// Pointwise change of the bilinears under a transform: max |f(Lambda psi) - f(psi)|.
double psibar_psi_change(const Field6& psi, const InfinitesimalLorentz& eps);
double psidag_psi_change(const Field6& psi, const InfinitesimalLorentz& eps);

}  // namespace photonwave::lorentz
