#include "photonwave/polarization.hpp"

#include <cmath>

#include "photonwave/algebra.hpp"
#include "photonwave/errors.hpp"

namespace photonwave::polarization {

namespace {
constexpr double kAxisTol = 1e-14;  // relative kappa below which k counts as on-axis
}

Vec3c longitudinal(const Vec3& k) {
  const double kn = k.norm();
  if (kn == 0.0) throw ZeroWaveVector{};
  return (k / kn).cast<cd>();
}

Vec3c circular(const Vec3& k, int lambda) {
  const double kn = k.norm();
  if (kn == 0.0) throw ZeroWaveVector{};
  const double kappa = std::hypot(k[0], k[1]);
  Vec3c e;
  if (kappa <= kAxisTol * kn) {
    e = Vec3c(cd(1, 0), cd(0, 1), cd(0, 0)) / std::sqrt(2.0);
    if (k[2] < 0) e = e.conjugate();  // parity rule at the degenerate axis
  } else {
    const double s = 1.0 / (std::sqrt(2.0) * kn * kappa);
    e = Vec3c(cd(k[0] * k[2], -k[1] * kn), cd(k[1] * k[2], k[0] * kn),
              cd(-(k[0] * k[0] + k[1] * k[1]), 0)) *
        s;
  }
  return lambda == 1 ? e : Vec3c(e.conjugate());
}

Vec3c polarization_vector(const Vec3& k, int lambda) {
  return lambda == 0 ? longitudinal(k) : circular(k, lambda);
}

PolarizationTriad triad(const Vec3& k) {
  return {k, longitudinal(k), circular(k, 1), circular(k, -1)};
}

IdentityReport verify_polarization_identities(const Vec3& k) {
  const PolarizationTriad t = triad(k);
  const Vec3c e[3] = {t.eps_minus, t.eps0, t.eps_plus};
  const int lam[3] = {-1, 0, 1};

  IdentityReport r{0, 0, 0, 0};
  Mat3c sum = Mat3c::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const cd ip = e[a].dot(e[b]);  // conjugates the left argument
      r.orthonormality_residual =
          std::max(r.orthonormality_residual, std::abs(ip - (a == b ? cd(1) : cd(0))));
    }
    sum += e[a] * e[a].adjoint();
  }
  r.completeness_residual = (sum - Mat3c::Identity()).cwiseAbs().maxCoeff();

  const Vec3 khat = k / k.norm();
  Mat3c tk = Mat3c::Zero();
  const auto tau = algebra::build_tau();
  for (int i = 0; i < 3; ++i) tk += khat[i] * tau[i];
  for (int a = 0; a < 3; ++a)
    r.helicity_residual = std::max(
        r.helicity_residual, (tk * e[a] - double(lam[a]) * e[a]).cwiseAbs().maxCoeff());

  r.conjugation_residual = (t.eps_minus - t.eps_plus.conjugate()).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace photonwave::polarization
