#pragma once

#include <array>
#include <vector>

#include "photonwave/box.hpp"
#include "photonwave/types.hpp"

namespace photonwave::algebra {

// Fixed matrices of the six-component field formalism.
//
// tau_i are the spin-1 generators with entries (tau_i)_{jk} = -i eps_{ijk};
// beta0 = diag(I3, -I3); beta_i has blocks (0, tau_i; -tau_i, 0);
// chi_i = beta0 * beta_i; spin S_i = I2 (x) tau_i. sigma is the 4x4
// antisymmetric table of group generators: sigma[l][m] = eps_{lmn} S_n for
// spatial l,m and sigma[l][0] = -sigma[0][l] = i chi_l.
//
// Indices are written 1-based in prose to match the physics convention but
// are 0-based in code throughout (tau[0] is tau_1, and so on). All entries
// are exact values in {0, +-1, +-i}, so identity tests on products of these
// matrices may demand exact floating-point equality.
struct MatrixSet {
  std::array<Mat3c, 3> tau;
  Mat6c beta0;
  std::array<Mat6c, 3> beta;
  std::array<Mat6c, 3> chi;
  std::array<Mat6c, 3> spin;
  std::array<std::array<Mat6c, 4>, 4> sigma;  // sigma[mu][nu]
};

std::array<Mat3c, 3> build_tau();
const MatrixSet& matrix_set();  // built once, immutable after construction

// Fourier symbol of the first-order evolution operator: H(k) = chi . k,
// Hermitian with eigenvalues {|k|, |k|, 0, 0, -|k|, -|k|}.
Mat6c hamiltonian_symbol(const Vec3& k);

// Spectrum of H(k), sorted descending.
std::array<double, 6> dispersion_spectrum(const Vec3& k);

// Residual of the exact multiplier factorization
// (chi.k)^2 + I2 (x) k k^T - |k|^2 I6 = 0.
double multiplier_identity_residual(const Vec3& k);

// --- linear-in-x plane-wave fields -----------------------------------------
//
// Closed-form test fields of the shape  sum_t (a0 + sum_j ax_j x_j) e^{i k.x}.
// Derivatives and coordinate multiplications act analytically, so operator
// identities involving x (orbital angular momentum) can be evaluated
// pointwise without periodic-boundary artifacts.
struct LinearWaveTerm {
  Vec3 k = Vec3::Zero();
  Vec6c a0 = Vec6c::Zero();
  std::array<Vec6c, 3> ax{Vec6c::Zero(), Vec6c::Zero(), Vec6c::Zero()};
};

struct LinearWaveField {
  std::vector<LinearWaveTerm> terms;

  Vec6c eval(const Vec3& x) const;
  LinearWaveField derivative(int j) const;
  // multiply by coordinate x_j; only defined for fields with ax == 0
  LinearWaveField multiply_x(int j) const;
  LinearWaveField apply(const Mat6c& m) const;
  LinearWaveField operator-(const LinearWaveField& o) const;
  LinearWaveField operator+(const LinearWaveField& o) const;

  // H = -i chi . grad
  LinearWaveField apply_hamiltonian() const;
  // n-th component of x <cross> (-i grad), taken about the origin
  LinearWaveField apply_orbital(int n) const;

  double max_abs_on_grid(const BoxSpec& box) const;
  // max |Omega psi| with Omega = I2 (x) grad(div .)
  double omega_residual_on_grid(const BoxSpec& box) const;
};

// Applies H(L+S) - (L+S)H componentwise to a randomized band-limited
// transverse field on the box and returns max residual / max field value.
// Rejects (NonTransverse) test fields whose Omega-residual is not negligible.
double verify_spin_orbit_commutator(const BoxSpec& box, std::uint64_t seed);

// Same residual for a caller-supplied field.
double spin_orbit_commutator_residual(const LinearWaveField& psi, const BoxSpec& box);

}  // namespace photonwave::algebra
