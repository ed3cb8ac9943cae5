#pragma once

#include <string>
#include <vector>

#include "photonwave/types.hpp"

namespace photonwave::greens {

// Momentum-space conventions: a 4-vector k4 = (w, kx, ky, kz) pairs with
// plane waves e^{-i(w t - k.x)}, so d_t -> -iw, grad -> +ik and
// i beta^mu d_mu -> beta^mu k_mu = w beta0 - beta.k. The invariant square is
// k^2 = w^2 - |k|^2.
struct FourVector {
  double omega;
  Vec3 k;
  double squared() const { return omega * omega - k.squaredNorm(); }
};

// i/(k^2 + i eps)
cd scalar_propagator_multiplier(const FourVector& k4, double epsilon);

// beta^mu k_mu = w beta0 - beta.k
Mat6c momentum_symbol(const FourVector& k4);

// I2 (x) (I3 - khat khat^T); requires |k| > 0
Mat6c transverse_delta_hat(const Vec3& k);

// I2 (x) (k k^T): the symbol satisfying (beta.k)^2 = k^2 I6 + omega_hat(k).
Mat6c omega_hat(const Vec3& k);

// iR_T(k) = (beta^mu k_mu) deltaT_hat(k) i/(k^2 + i eps); ZeroSpatialK at |k|=0.
Mat6c transverse_green_multiplier(const FourVector& k4, double epsilon);

// Defining-property residual at one k: || (beta.k) R_T - k^2/(k^2+i eps) deltaT ||
// with R_T = multiplier / i; exact at the multiplier level.
double green_defining_residual(const FourVector& k4, double epsilon);

// Spacetime lattice for the position-space realization of the massless
// scalar propagator. Frequencies are w_j = 2 pi j / t_extent and the spatial
// k on the usual box grid; the k4 = 0 mode lies in ker d^2 and is excluded
// from the delta comparison (counted below). Extents must keep |k^2| of all
// other lattice points away from zero (validated).
struct PropagatorLattice {
  int n_t;
  std::array<int, 3> n_x;
  double t_extent;
  std::array<double, 3> lengths;
  double epsilon;

  void validate() const;
  std::int64_t total_points() const;
  double min_abs_k2() const;  // over k4 != 0
};

struct LatticePropagator {
  PropagatorLattice lattice;
  std::vector<cd> delta;      // i Delta(x) over (t, x, y, z), z fastest
  std::int64_t zero_modes_excluded;

  // residual of d^2(i Delta) = -i delta4 (band-limited, zero mode excluded
  // on both sides), relative to max |delta4|
  double dalembert_residual;
  double parity_residual;  // max |Delta(x) - Delta(-x)| / max |Delta|
};

LatticePropagator position_space_propagator(const PropagatorLattice& lattice);

// CSV over lattice sites: it,ix,iy,iz,t,x,y,z,re,im
void export_propagator(const std::string& path, const LatticePropagator& p);

}  // namespace photonwave::greens
