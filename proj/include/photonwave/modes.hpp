#pragma once

#include <array>
#include <vector>

#include "photonwave/box.hpp"
#include "photonwave/field.hpp"
#include "photonwave/types.hpp"

namespace photonwave::modes {

// One fundamental plane-wave solution on the box. freq_sign = +1 selects
// sqrt(w/V) f(k,l) e^{-i(wt - k.x)}, freq_sign = -1 selects
// sqrt(w/V) g(k,l) e^{+i(wt - k.x)}; w = |k| for l = +-1 and the l = 0
// branch carries w = 0 (zero-frequency sector).
struct ModeSpec {
  BoxSpec box;
  std::array<int, 3> n{0, 0, 0};
  int lambda = 1;        // -1, 0, +1
  int freq_sign = 1;     // +1 or -1

  Vec3 wave_vector() const { return box.wave_vector(n); }
  double omega() const { return lambda == 0 ? 0.0 : wave_vector().norm(); }
  bool is_admixture_sector() const { return lambda == 0; }

  void validate() const;
};

// Unit spinor amplitudes built from the polarization triad:
// f = (eps; l eps)/sqrt(1+l^2), g = (l eps; eps)/sqrt(1+l^2).
Vec6c f_spinor(const Vec3& k, int lambda);
Vec6c g_spinor(const Vec3& k, int lambda);

// Amplitude normalization policy for the zero-frequency sector: the physical
// prefactor sqrt(w/V) vanishes for l = 0; unit_amplitude substitutes
// 1/sqrt(V) so the admixture sector can be probed in tests.
enum class Lambda0Policy { zero_amplitude, unit_amplitude };

Vec6c mode_field(const ModeSpec& m, const Vec3& x, double t,
                 Lambda0Policy policy = Lambda0Policy::zero_amplitude);

// Synthesize a mode (amplitude 1) on the grid at time t.
Field6 mode_on_grid(const ModeSpec& m, double t,
                    Lambda0Policy policy = Lambda0Policy::zero_amplitude);

// Residual of the first-order equation evaluated analytically for the mode:
// max |i beta^mu d_mu phi| / max |phi| over the grid.
double dirac_equation_residual(const ModeSpec& m,
                               Lambda0Policy policy = Lambda0Policy::zero_amplitude);

struct OrthonormalityReport {
  // entry (i,j): Riemann-sum overlap <phi_i, phi_j> minus w_i delta_ij
  Eigen::MatrixXd same_sign_residual;
  // overlap of positive-frequency mode i against the negative-frequency
  // partner of mode j at t = 0 (both pairings appear in the scan)
  Eigen::MatrixXd mixed_residual;
  double max_residual() const;
};

OrthonormalityReport orthonormality_check(const BoxSpec& box,
                                          const std::vector<ModeSpec>& mode_list);

struct CompletenessReport {
  Mat6c single_k_sum;        // w * sum_l (f f^dag + g g^dag) at k
  Mat6c symmetrized_sum;     // average of the k and -k sums
  double symmetrized_residual;   // max |symmetrized - w I6|
  double single_k_offdiag_defect_residual;  // max |offdiag/w - tau.khat|
  double diagonal_block_residual;           // max |diag blocks/w - I3|
};

CompletenessReport completeness_check(const Vec3& k);

// Superposition of modes with complex coefficients; evaluation and the
// analytic time/space derivatives of the exact solution.
struct ModeSuperposition {
  struct Term {
    ModeSpec mode;
    cd coeff;
  };
  std::vector<Term> terms;
  Lambda0Policy policy = Lambda0Policy::zero_amplitude;

  Vec6c eval(const Vec3& x, double t) const;
  Vec6c time_derivative(const Vec3& x, double t) const;
  std::array<Vec6c, 3> gradient(const Vec3& x, double t) const;

  bool has_lambda0() const;
  bool has_uniform() const;

  Field6 on_grid(const BoxSpec& box, double t) const;
};

}  // namespace photonwave::modes
