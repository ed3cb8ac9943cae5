#include <doctest.h>

#include "photonwave/dirac.hpp"
#include "photonwave/errors.hpp"
#include "photonwave/rng.hpp"

using namespace photonwave;
namespace dr = photonwave::dirac;

TEST_CASE("gamma algebra is exact") {
  CHECK(dr::gamma_anticommutator_residual() == 0.0);
}

TEST_CASE("plane waves solve the equation; component structure") {
  Rng rng(19);
  SUBCASE("rest frame: positive energy is pure phi, negative pure chi") {
    const auto pos = dr::dirac_plane_wave(Vec3::Zero(), 0, +1, 1.3);
    CHECK(pos.chi().norm() == 0.0);
    CHECK(pos.phi().norm() == doctest::Approx(1.0));
    const auto neg = dr::dirac_plane_wave(Vec3::Zero(), 1, -1, 1.3);
    CHECK(neg.phi().norm() == 0.0);
    CHECK(dr::dirac_equation_residual(pos) <= 1e-15);
    CHECK(dr::dirac_equation_residual(neg) <= 1e-15);
  }

  SUBCASE("moving frames: residual and the small-component ratio") {
    for (int trial = 0; trial < 30; ++trial) {
      const Vec3 p{rng.normal(), rng.normal(), rng.normal()};
      const double m = rng.uniform(0.0, 2.0);
      const double e = std::sqrt(p.squaredNorm() + m * m);
      for (int sign : {1, -1})
        for (int spin : {0, 1}) {
          const auto w = dr::dirac_plane_wave(p, spin, sign, m);
          CHECK(dr::dirac_equation_residual(w) <= 1e-12);
          const double ratio = sign > 0 ? w.chi().norm() / w.phi().norm()
                                        : w.phi().norm() / w.chi().norm();
          CHECK(std::abs(ratio - p.norm() / (e + m)) <= 1e-10);
        }
    }
  }

  SUBCASE("small-p expansion of the ratio") {
    const double m = 1.0;
    for (double pn : {1e-2, 1e-3}) {
      const auto w = dr::dirac_plane_wave(Vec3{0, 0, pn}, 0, +1, m);
      const double e = std::sqrt(pn * pn + m * m);
      CHECK(std::abs(w.chi().norm() / w.phi().norm() - pn / (e + m)) <= 1e-12);
    }
  }
}

TEST_CASE("two-spinor lines are an exact recombination of the 4-spinor residual") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    dr::SpinorSample s;
    for (int c = 0; c < 4; ++c) {
      s.psi[c] = cd(rng.normal(), rng.normal());
      s.dt[c] = cd(rng.normal(), rng.normal());
      for (int d = 0; d < 3; ++d) s.dx[std::size_t(d)][c] = cd(rng.normal(), rng.normal());
    }
    const auto r = dr::maxwell_like_residual(s, rng.uniform(0.0, 2.0));
    CHECK(r.map_residual <= 1e-13);
  }
}

TEST_CASE("solutions satisfy both two-spinor lines") {
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 p{rng.normal(), rng.normal(), rng.normal()};
    const double m = rng.uniform(0.1, 2.0);
    const auto w = dr::dirac_plane_wave(p, trial % 2, trial % 4 < 2 ? 1 : -1, m);
    dr::SpinorSample s;
    s.psi = w.amplitude;
    s.dt = cd(0, -double(w.energy_sign) * w.energy()) * w.amplitude;
    for (int d = 0; d < 3; ++d)
      s.dx[std::size_t(d)] = cd(0, double(w.energy_sign) * p[d]) * w.amplitude;
    const auto r = dr::maxwell_like_residual(s, m);
    CHECK(r.line_a <= 1e-13);
    CHECK(r.line_b <= 1e-13);
    CHECK(r.four_spinor <= 1e-13);
  }
}

TEST_CASE("massless equal components collapse the two lines into one") {
  Rng rng(31);
  dr::SpinorSample s;
  for (int c = 0; c < 2; ++c) {
    const cd v{rng.normal(), rng.normal()}, dv{rng.normal(), rng.normal()};
    s.psi[c] = v;
    s.psi[c + 2] = v;
    s.dt[c] = dv;
    s.dt[c + 2] = dv;
  }
  for (int d = 0; d < 3; ++d)
    for (int c = 0; c < 2; ++c) {
      const cd g{rng.normal(), rng.normal()};
      s.dx[std::size_t(d)][c] = g;
      s.dx[std::size_t(d)][c + 2] = g;
    }
  const auto r = dr::maxwell_like_residual(s, 0.0);
  CHECK(std::abs(r.line_a - r.line_b) <= 1e-15);
}

TEST_CASE("spectral evolution is unitary; swap symmetry maps solutions across m -> -m") {
  Rng rng(37);
  std::vector<dr::DiracModeCoeff> modes;
  for (int i = 0; i < 4; ++i) {
    Vec4c c;
    for (int j = 0; j < 4; ++j) c[j] = cd(rng.normal(), rng.normal());
    modes.push_back({Vec3{rng.normal(), rng.normal(), rng.normal()}, c});
  }
  double before = 0;
  for (const auto& m : modes) before += m.c.squaredNorm();
  const auto out = dr::evolve_modes(modes, 1.1, 9.4);
  double after = 0;
  for (const auto& m : out) after += m.c.squaredNorm();
  CHECK(std::abs(after - before) <= 1e-12 * before);

  const auto rep = dr::analogy_suite(7);
  CHECK(rep.swap_residual <= 1e-12);
  CHECK(rep.blockswap_fg_residual == 0.0);
  CHECK(std::abs(rep.invariant_second_order_ratio - 4.0) <= 0.2);
  CHECK(rep.norm_conservation_drift <= 1e-10);
  CHECK(rep.component_ratio_error <= 1e-10);
  CHECK(rep.rest_frame_purity == 0.0);
  CHECK(rep.coupling_offdiag_norm > 0.0);
  CHECK(rep.coupling_growth_mismatch <= 1e-3);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(dr::dirac_plane_wave(Vec3{1, 0, 0}, 2, 1, 1.0), ConfigError);
  CHECK_THROWS_AS(dr::dirac_plane_wave(Vec3{1, 0, 0}, 0, 0, 1.0), ConfigError);
  CHECK_THROWS_AS(dr::dirac_plane_wave(Vec3{1, 0, 0}, 0, 1, -1.0), ConfigError);
  CHECK_THROWS_AS(dr::dirac_plane_wave(Vec3::Zero(), 0, 1, 0.0), ConfigError);
}
