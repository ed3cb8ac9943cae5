#include <doctest.h>

#include "photonwave/algebra.hpp"
#include "photonwave/errors.hpp"
#include "photonwave/polarization.hpp"
#include "photonwave/rng.hpp"

using namespace photonwave;
namespace pol = photonwave::polarization;

TEST_CASE("longitudinal vector normalizes k") {
  CHECK((pol::longitudinal(Vec3{0, 0, 5}) - Vec3c(0, 0, 1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((pol::longitudinal(Vec3{3, 4, 0}) - Vec3c(0.6, 0.8, 0)).cwiseAbs().maxCoeff() <=
        1e-16);
  const Vec3c d = pol::longitudinal(Vec3{1, 1, 1});
  CHECK((d - Vec3c::Constant(1.0 / std::sqrt(3.0))).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_THROWS_AS(pol::longitudinal(Vec3::Zero()), ZeroWaveVector);
}

TEST_CASE("circular vectors on the z axis solve the helicity eigenproblem") {
  const auto tau = algebra::build_tau();
  for (int lambda : {1, -1}) {
    const Vec3c e = pol::circular(Vec3{0, 0, 1}, lambda);
    CHECK(std::abs(e.norm() - 1.0) <= 1e-15);
    const Vec3c te = tau[2] * e;
    CHECK((te - double(lambda) * e).cwiseAbs().maxCoeff() <= 1e-15);
    // spanned by (1, +-i, 0)/sqrt(2)
    CHECK(std::abs(std::abs(e[0]) - 1 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(e[2]) == 0.0);
  }
  CHECK_THROWS_AS(pol::circular(Vec3::Zero(), 1), ZeroWaveVector);
}

TEST_CASE("helicity eigenproblem, orthogonality and conjugation for random k") {
  Rng rng(5);
  const auto tau = algebra::build_tau();
  for (int trial = 0; trial < 100; ++trial) {
    Vec3 k{rng.normal(), rng.normal(), rng.normal()};
    if (k.norm() < 1e-3) continue;
    k *= rng.uniform(0.1, 4.0);
    const Vec3 khat = k / k.norm();
    Mat3c tk = Mat3c::Zero();
    for (int i = 0; i < 3; ++i) tk += khat[i] * tau[i];

    const Vec3c ep = pol::circular(k, 1);
    const Vec3c em = pol::circular(k, -1);
    CHECK((tk * ep - ep).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((tk * em + em).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(std::abs(ep.dot(em)) <= 1e-14);              // eps+^dag eps-
    CHECK(std::abs(ep.dot(k.cast<cd>())) <= 1e-13);    // orthogonal to k
    CHECK((em - ep.conjugate()).cwiseAbs().maxCoeff() == 0.0);
    // phase convention: third component of eps(k, +1) real and non-positive
    CHECK(std::abs(ep[2].imag()) <= 1e-16 * k.norm());
    CHECK(ep[2].real() <= 1e-16);
  }
}

TEST_CASE("identity report near machine precision, including near-axis k") {
  SUBCASE("exact axis") {
    const auto rep = pol::verify_polarization_identities(Vec3{0, 0, 1});
    CHECK(rep.orthonormality_residual <= 1e-15);
    CHECK(rep.completeness_residual <= 1e-15);
  }
  SUBCASE("frozen example k = (1, 2, -2)") {
    const auto rep = pol::verify_polarization_identities(Vec3{1, 2, -2});
    CHECK(rep.orthonormality_residual <= 1e-12);
    CHECK(rep.completeness_residual <= 1e-12);
    CHECK(rep.helicity_residual <= 1e-12);
  }
  SUBCASE("100 random directions") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
      Vec3 k{rng.normal(), rng.normal(), rng.normal()};
      if (k.norm() < 1e-3) continue;
      const auto rep = pol::verify_polarization_identities(k);
      CHECK(rep.orthonormality_residual <= 1e-12);
      CHECK(rep.completeness_residual <= 1e-12);
      CHECK(rep.conjugation_residual == 0.0);
    }
  }
  SUBCASE("near-axis stability down to kappa = 1e-10") {
    for (double kappa : {1e-8, 1e-9, 1e-10}) {
      const auto rep = pol::verify_polarization_identities(Vec3{kappa, kappa / 3, -2.0});
      CHECK(rep.orthonormality_residual <= 1e-12);
      CHECK(rep.completeness_residual <= 1e-12);
      CHECK(rep.helicity_residual <= 1e-12);
    }
  }
}

TEST_CASE("parity: eps0 flips, helicity labels swap") {
  Rng rng(29);
  for (int t = 0; t < 30; ++t) {
    Vec3 k{rng.normal(), rng.normal(), rng.normal()};
    if (k.norm() < 1e-3) continue;
    CHECK((pol::longitudinal(-k) + pol::longitudinal(k)).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((pol::circular(-k, 1) - pol::circular(k, -1)).cwiseAbs().maxCoeff() == 0.0);
  }
  // the parity rule also holds through the on-axis fallback
  CHECK((pol::circular(Vec3{0, 0, -2}, 1) - pol::circular(Vec3{0, 0, 2}, -1))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}
