#pragma once

#include <map>
#include <string>

#include "photonwave/dynamics.hpp"
#include "photonwave/modes.hpp"
#include "photonwave/spectral.hpp"

namespace photonwave::observables {

// Transverse mode content of a field state: amplitude a(k,l) per grid wave
// vector k != 0 and helicity l = +-1, defined by the projection
// a(k,l) = (sqrt(2)/w) int phi_{k,l}^dag psi d^3x
// against the mode functions evaluated at the state's own time (so the
// amplitudes of an evolving solution are constants of motion).
struct ModeAmplitudes {
  struct Key {
    std::array<int, 3> n;
    int lambda;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  std::map<Key, cd> a;
  BoxSpec box;
  double time = 0.0;

  double energy() const;    // sum w |a|^2
  Vec3 momentum() const;    // sum k |a|^2
};

// require_real enforces the contract that E and B carry no imaginary part
// (NonRealField above 1e-12 relative); the raw projection itself is defined
// for any band-limited state.
ModeAmplitudes decompose(const SpectralGrid& grid, const dynamics::FieldState& s,
                         bool require_real = true);

// Synthesizes the transverse part encoded by the amplitudes:
// psi_T = (1/sqrt(2)) sum [a phi + beta0 conj(a phi)].
dynamics::FieldState reconstruct(const SpectralGrid& grid, const ModeAmplitudes& amps);

// Positive-frequency part only: psi_+ = (1/sqrt(2)) sum a phi. This is the
// one-photon amplitude; expectation values such as <L+S> are nonzero on it,
// while for real fields the +- frequency parts cancel them pointwise.
dynamics::FieldState reconstruct_positive(const SpectralGrid& grid,
                                          const ModeAmplitudes& amps);

// Pointwise pseudo-Lagrangian density L = psibar (i beta^mu d_mu) psi with the
// supplied time derivative (pass the analytic/spectral one; for any solution
// of the first-order equation it vanishes identically). The density is
// complex-valued off shell; on shell it is zero.
std::vector<cd> pseudo_lagrangian_density(const SpectralGrid& grid, const Field6& psi,
                                          const Field6& dpsi_dt);

// Canonical momentum pi = [(-i d_t)^{-1}(i psi)]^dag, realized spectrally via
// the frequency decomposition of the evolution operator: the positive-
// frequency part of psi is scaled by -1/w, the negative-frequency part by
// +1/w, and zero-frequency (uniform and longitudinal) content is projected
// out (the inverse does not exist on that kernel). On a single positive-
// frequency mode phi this gives pi = +(i/w) phi^dag -- the sign for which
// H = int pi psidot d^3x comes out as + sum w |a|^2 and quantizes to the
// number operator with a +1/2 zero point. The stored field is the column
// avatar pi^dag, so contractions read pi . v = stored.dot(v).
struct ConjugateField {
  Field6 pi_dagger;
  std::int64_t zero_modes_removed = 0;
};

ConjugateField canonical_momentum(const SpectralGrid& grid, const dynamics::FieldState& s);

struct FourMomentum {
  double energy = 0.0;     // H = int (pi psidot - L') d^3x
  Vec3 momentum = Vec3::Zero();  // p = -int pi grad psi d^3x
  double lprime_integral_abs = 0.0;  // |int L' d^3x| (identically ~0 on shell)
};

FourMomentum four_momentum(const SpectralGrid& grid, const dynamics::FieldState& s);

// Transverse projector as a Fourier multiplier: delta_ij - k_i k_j/|k|^2 per
// nonzero grid k; the identity at k = 0 (no longitudinal direction exists).
struct TransverseDelta {
  const SpectralGrid* grid;
  Mat3c multiplier(const Vec3& k) const;
  RealField3 apply(const RealField3& v) const;
};

TransverseDelta transverse_delta(const SpectralGrid& grid);

// Amplitude table export: header + one CSV row per (k index, lambda).
void export_amplitudes(const std::string& path, const ModeAmplitudes& amps);

// Synthesis helpers for building real transverse field states via reconstruct().
ModeAmplitudes random_transverse_amplitudes(const BoxSpec& box, int max_n, int n_modes,
                                            std::uint64_t seed);
// Gaussian spectral envelope exp(-|k-k0|^2 sigma_x^2 / 2) with a phase
// centering the packet at x_center; helicity `lambda` only.
ModeAmplitudes gaussian_packet_amplitudes(const BoxSpec& box, const Vec3& k_center,
                                          double sigma_x, const Vec3& x_center,
                                          int lambda);

// --- stationary-action check ------------------------------------------------
//
// The action over box x [0, T] for trial fields spanned by spacetime Fourier
// elements u_m = e_s exp(i(k.x - nu t)) is the exact quadratic form
// A(cbar, c) = sum cbar_m G_{mm'} c_{m'},
// G diagonal in (k, nu) with spinor factor V T e_s^dag beta0 (nu beta0 - beta.k) e_s'.
// The Euler-Lagrange gradient dA/dcbar_m recovers the first-order-equation
// residual projected on u_m; a central finite difference of A must match it.
struct ActionBasisElement {
  std::array<int, 3> n;  // spatial mode integers
  int j;                 // temporal integer: nu = 2 pi j / T
  int spinor;            // 0..5
};

struct ActionCheckResult {
  double max_rel_gradient_error;  // FD vs analytic, after step-scan plateau
  double grid_vs_exact_rel_error; // Riemann-sum action vs exact quadratic form
};

ActionCheckResult stationary_action_check(const BoxSpec& box, double t_extent,
                                          int n_time, std::uint64_t seed);

}  // namespace photonwave::observables
