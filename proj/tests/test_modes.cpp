#include <doctest.h>

#include "photonwave/algebra.hpp"
#include "photonwave/dynamics.hpp"
#include "photonwave/errors.hpp"
#include "photonwave/modes.hpp"
#include "photonwave/polarization.hpp"
#include "photonwave/rng.hpp"

using namespace photonwave;

namespace {
BoxSpec small_box() {
  BoxSpec b;
  b.grid_points = {8, 8, 8};
  return b;
}
}  // namespace

TEST_CASE("f and g spinors: structure and norms") {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    Vec3 k{rng.normal(), rng.normal(), rng.normal()};
    if (k.norm() < 1e-3) continue;
    for (int lambda : {-1, 0, 1}) {
      const Vec6c f = modes::f_spinor(k, lambda);
      const Vec6c g = modes::g_spinor(k, lambda);
      CHECK(std::abs(f.norm() - 1.0) <= 1e-14);
      CHECK(std::abs(g.norm() - 1.0) <= 1e-14);
      // block swap X maps f to g, any lambda
      Vec6c xf;
      xf.head<3>() = f.tail<3>();
      xf.tail<3>() = f.head<3>();
      CHECK((xf - g).cwiseAbs().maxCoeff() == 0.0);
      if (lambda != 0) CHECK((g - double(lambda) * f).cwiseAbs().maxCoeff() == 0.0);
    }
    // lambda = 0: f = (eps0; 0), g = (0; eps0)
    const Vec6c f0 = modes::f_spinor(k, 0);
    CHECK(f0.tail<3>().cwiseAbs().maxCoeff() == 0.0);
    CHECK(modes::g_spinor(k, 0).head<3>().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("eigenvector relations of the evolution symbol") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Vec3 k{rng.normal(), rng.normal(), rng.normal()};
    if (k.norm() < 1e-3) continue;
    const Mat6c h = algebra::hamiltonian_symbol(k);
    const double w = k.norm();
    for (int lambda : {1, -1}) {
      const Vec6c f = modes::f_spinor(k, lambda);
      CHECK((h * f - w * f).cwiseAbs().maxCoeff() <= 1e-13 * w);
    }
    const Vec6c f0 = modes::f_spinor(k, 0);
    CHECK((h * f0).cwiseAbs().maxCoeff() <= 1e-13 * w);
  }
}

TEST_CASE("mode field values and the first-order equation") {
  const BoxSpec box = small_box();
  modes::ModeSpec m;
  m.box = box;
  m.n = {1, 2, 0};
  m.lambda = 1;

  SUBCASE("t = 0, x = 0 gives the bare amplitude") {
    const Vec6c v = modes::mode_field(m, Vec3::Zero(), 0.0);
    const Vec6c expect =
        std::sqrt(m.omega() / box.volume()) * modes::f_spinor(m.wave_vector(), 1);
    CHECK((v - expect).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("equation residual vanishes for every mode and frequency sign") {
    for (int lambda : {1, -1})
      for (int sign : {1, -1}) {
        modes::ModeSpec mm = m;
        mm.lambda = lambda;
        mm.freq_sign = sign;
        CHECK(modes::dirac_equation_residual(mm) <= 1e-12);
      }
  }

  SUBCASE("lambda = 0 modes carry zero amplitude under the physical policy") {
    modes::ModeSpec m0 = m;
    m0.lambda = 0;
    CHECK(modes::mode_field(m0, Vec3{1, 2, 3}, 0.7).cwiseAbs().maxCoeff() == 0.0);
    const Vec6c unit =
        modes::mode_field(m0, Vec3{1, 2, 3}, 0.7, modes::Lambda0Policy::unit_amplitude);
    CHECK(unit.cwiseAbs().maxCoeff() > 0.0);
  }

  SUBCASE("Nyquist indices are rejected") {
    modes::ModeSpec bad = m;
    bad.n = {4, 0, 0};
    CHECK_THROWS_AS(modes::mode_field(bad, Vec3::Zero(), 0.0), ConfigError);
  }
}

TEST_CASE("orthonormality: exact discrete Fourier orthogonality") {
  const BoxSpec box = small_box();
  std::vector<modes::ModeSpec> list;
  for (const auto& n : {std::array<int, 3>{1, 0, 0}, std::array<int, 3>{0, 2, 1},
                        std::array<int, 3>{-1, 0, 0}, std::array<int, 3>{1, 1, -1}})
    for (int lambda : {1, -1}) {
      modes::ModeSpec m;
      m.box = box;
      m.n = n;
      m.lambda = lambda;
      list.push_back(m);
    }
  const auto rep = modes::orthonormality_check(box, list);
  CHECK(rep.max_residual() <= 1e-13 * 3.0);

  SUBCASE("boxes must match") {
    BoxSpec other = box;
    other.lengths[0] *= 2;
    std::vector<modes::ModeSpec> bad = list;
    bad[0].box = other;
    CHECK_THROWS_AS(modes::orthonormality_check(box, bad), MixedBox);
  }
}

TEST_CASE("completeness: symmetrized identity and the single-k defect") {
  Rng rng(13);
  const auto tau = algebra::build_tau();
  for (int trial = 0; trial < 25; ++trial) {
    Vec3 k{rng.normal(), rng.normal(), rng.normal()};
    if (k.norm() < 1e-3) continue;
    const auto rep = modes::completeness_check(k);
    const double w = k.norm();
    CHECK(rep.symmetrized_residual <= 1e-12 * w);
    CHECK(rep.diagonal_block_residual <= 1e-12);
    CHECK(rep.single_k_offdiag_defect_residual <= 1e-12);

    // the defect is tau . khat, verified against the independent sum
    // sum_{lambda=+-1} lambda eps eps^dag
    Mat3c defect_oracle = Mat3c::Zero();
    for (int lambda : {1, -1}) {
      const Vec3c e = polarization::circular(k, lambda);
      defect_oracle += double(lambda) * e * e.adjoint();
    }
    Mat3c tk = Mat3c::Zero();
    for (int i = 0; i < 3; ++i) tk += (k[i] / w) * tau[i];
    CHECK((defect_oracle - tk).cwiseAbs().maxCoeff() <= 1e-13);
  }
  CHECK_THROWS_AS(modes::completeness_check(Vec3::Zero()), ZeroWaveVector);
}

TEST_CASE("mode superposition evaluates consistently with its grid synthesis") {
  const BoxSpec box = small_box();
  Rng rng(23);
  modes::ModeSuperposition sup;
  for (int t = 0; t < 5; ++t) {
    modes::ModeSpec m;
    m.box = box;
    do {
      for (int d = 0; d < 3; ++d) m.n[std::size_t(d)] = rng.uniform_int(-2, 2);
    } while (m.n == std::array<int, 3>{0, 0, 0});
    m.lambda = rng.uniform() < 0.5 ? 1 : -1;
    m.freq_sign = rng.uniform() < 0.5 ? 1 : -1;
    sup.terms.push_back({m, cd(rng.normal(), rng.normal())});
  }
  const Field6 f = sup.on_grid(box, 0.4);
  const auto idx = box.index(3, 1, 6);
  CHECK((f.at(idx) - sup.eval(box.coord(3, 1, 6), 0.4)).cwiseAbs().maxCoeff() == 0.0);

  // analytic time derivative agrees with a finite difference
  const double h = 1e-6;
  const Vec3 x = box.coord(2, 5, 1);
  const Vec6c fd = (sup.eval(x, 0.4 + h) - sup.eval(x, 0.4 - h)) / (2 * h);
  CHECK((fd - sup.time_derivative(x, 0.4)).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("admixture sector: flagged and transversality-violating") {
  const BoxSpec box = small_box();
  modes::ModeSpec m0;
  m0.box = box;
  m0.n = {0, 0, 2};
  m0.lambda = 0;
  CHECK(m0.is_admixture_sector());
  CHECK(!modes::ModeSpec{box, {0, 0, 2}, 1, 1}.is_admixture_sector());
  CHECK(m0.omega() == 0.0);

  // the unit-amplitude longitudinal mode violates the transversality operator
  SpectralGrid grid(box);
  const Field6 f = modes::mode_on_grid(m0, 0.0, modes::Lambda0Policy::unit_amplitude);
  const Field6 omega_f = photonwave::dynamics::omega_apply(grid, f);
  CHECK(std::sqrt(omega_f.squared_norm()) >
        0.5 * box.wave_vector(m0.n).squaredNorm() * std::sqrt(f.squared_norm()));
}
