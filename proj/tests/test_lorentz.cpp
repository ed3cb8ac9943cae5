#include <doctest.h>

#include "photonwave/dynamics.hpp"
#include "photonwave/errors.hpp"
#include "photonwave/lorentz.hpp"
#include "photonwave/observables.hpp"
#include "photonwave/rng.hpp"

using namespace photonwave;
namespace lz = photonwave::lorentz;

namespace {
BoxSpec box8() {
  BoxSpec b;
  b.grid_points = {8, 8, 8};
  return b;
}

modes::ModeSuperposition onshell_field(const BoxSpec& box, std::uint64_t seed) {
  Rng rng(seed);
  modes::ModeSuperposition sup;
  for (int t = 0; t < 6; ++t) {
    modes::ModeSpec m;
    m.box = box;
    do {
      for (int d = 0; d < 3; ++d) m.n[std::size_t(d)] = rng.uniform_int(-2, 2);
    } while (m.n == std::array<int, 3>{0, 0, 0});
    m.lambda = rng.uniform() < 0.5 ? 1 : -1;
    m.freq_sign = rng.uniform() < 0.5 ? 1 : -1;
    sup.terms.push_back({m, cd(rng.normal(), rng.normal())});
  }
  return sup;
}
}  // namespace

TEST_CASE("infinitesimal parameter validation") {
  lz::InfinitesimalLorentz eps{};
  eps.eps[0][1] = 1e-3;  // not antisymmetric
  CHECK_THROWS_AS(eps.validate(), ConfigError);
  CHECK_THROWS_AS(lz::InfinitesimalLorentz::boost(0, 0.5).validate(), ConfigError);
  CHECK_NOTHROW(lz::InfinitesimalLorentz::boost(0, 1e-3).validate());
}

TEST_CASE("identity transform at eps = 0") {
  const lz::InfinitesimalLorentz zero{};
  CHECK((lz::transform_matrix(zero) - Mat6c::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotations act as the same 3-rotation on both field blocks") {
  const BoxSpec box = box8();
  const auto sup = onshell_field(box, 5);
  const Field6 psi = sup.on_grid(box, 0.0);

  auto diff_at = [&](double angle) {
    const Field6 tpsi = lz::spinor_transform(psi, lz::InfinitesimalLorentz::rotation(2, angle));
    Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
    r(0, 0) = std::cos(angle);
    r(0, 1) = -std::sin(angle);
    r(1, 0) = std::sin(angle);
    r(1, 1) = std::cos(angle);
    double worst = 0;
    for (std::int64_t i = 0; i < psi.size(); ++i) {
      Vec6c rv;
      rv.head<3>() = r.cast<cd>() * psi.at(i).head<3>();
      rv.tail<3>() = r.cast<cd>() * psi.at(i).tail<3>();
      worst = std::max(worst, (tpsi.at(i) - rv).cwiseAbs().maxCoeff());
    }
    return worst;
  };
  const double d1 = diff_at(1e-3), d2 = diff_at(2e-3);
  CHECK(d2 / d1 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("boost pseudo-unitarity defect is exactly second order") {
  const double d1 = lz::pseudo_unitarity_defect(lz::InfinitesimalLorentz::boost(1, 1e-3));
  const double d2 = lz::pseudo_unitarity_defect(lz::InfinitesimalLorentz::boost(1, 2e-3));
  CHECK(d2 / d1 == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(d1 <= 1.5 * 1e-6);
}

TEST_CASE("variation identity holds pairwise on shell; transversality enforced") {
  const BoxSpec box = box8();
  const auto sup = onshell_field(box, 7);
  const auto rep = lz::delta_L_check(sup, box, 0.3);
  double kmax = 0;
  for (const auto& t : sup.terms) kmax = std::max(kmax, t.mode.wave_vector().norm());
  const double scale = rep.field_scale * rep.field_scale * std::max(1.0, kmax);
  CHECK(rep.max_pair_mismatch <= 1e-10 * scale);
  CHECK(rep.max_boost_bilinear <= 1e-10 * scale);

  SUBCASE("lambda = 0 content is rejected") {
    auto bad = sup;
    modes::ModeSpec m0;
    m0.box = box;
    m0.n = {1, 0, 0};
    m0.lambda = 0;
    bad.terms.push_back({m0, cd(1.0, 0.0)});
    bad.policy = modes::Lambda0Policy::unit_amplitude;
    CHECK_THROWS_AS(lz::delta_L_check(bad, box, 0.0), NonTransverse);
  }
  SUBCASE("uniform content is rejected") {
    auto bad = sup;
    modes::ModeSpec mu;
    mu.box = box;
    mu.n = {0, 0, 0};
    bad.terms.push_back({mu, cd(1.0, 0.0)});
    CHECK_THROWS_AS(lz::delta_L_check(bad, box, 0.0), NonTransverse);
  }
}

TEST_CASE("delta L is second order in the transformation") {
  const BoxSpec box = box8();
  const auto sup = onshell_field(box, 11);
  const double d2 = lz::delta_L_magnitude(sup, box, 0.1,
                                          lz::InfinitesimalLorentz::boost(2, 1e-2));
  const double d3 = lz::delta_L_magnitude(sup, box, 0.1,
                                          lz::InfinitesimalLorentz::boost(2, 1e-3));
  const double d4 = lz::delta_L_magnitude(sup, box, 0.1,
                                          lz::InfinitesimalLorentz::boost(2, 1e-4));
  CHECK(std::log10(d2 / d3) >= 1.9);
  CHECK(std::log10(d3 / d4) >= 1.9);

  // rotations too
  const double r2 = lz::delta_L_magnitude(sup, box, 0.1,
                                          lz::InfinitesimalLorentz::rotation(0, 1e-2));
  const double r3 = lz::delta_L_magnitude(sup, box, 0.1,
                                          lz::InfinitesimalLorentz::rotation(0, 1e-3));
  CHECK(std::log10(r2 / r3) >= 1.9);
}

TEST_CASE("scalar invariants") {
  const BoxSpec box = box8();
  SUBCASE("uniform E = x_hat gives s1 = 1") {
    RealField3 e(box.num_points()), b(box.num_points());
    for (auto& v : e.comp[0]) v = 1.0;
    const auto rep = lz::scalar_invariants(box, e, b);
    for (double v : rep.s1) CHECK(v == 1.0);
    CHECK(rep.identity_residual <= 1e-15);
  }
  SUBCASE("circularly polarized traveling wave: s1 = 0 pointwise") {
    SpectralGrid grid(box);
    observables::ModeAmplitudes amps;
    amps.box = box;
    amps.a[{{0, 0, 2}, 1}] = cd(1.1, 0.0);
    const auto s = observables::reconstruct(grid, amps);
    const auto eb = dynamics::to_EB(s);
    const auto rep = lz::scalar_invariants(box, eb.e, eb.b);
    double worst = 0;
    for (double v : rep.s1) worst = std::max(worst, std::abs(v));
    CHECK(worst <= 1e-13);
  }
}

TEST_CASE("psibar psi is boost invariant to second order; psi^dag psi is not") {
  const BoxSpec box = box8();
  SpectralGrid grid(box);
  observables::ModeAmplitudes amps;
  amps.box = box;
  amps.a[{{0, 0, 2}, 1}] = cd(1.0, 0.3);  // traveling wave: nonzero Poynting flux
  const auto s = observables::reconstruct(grid, amps);

  // transverse boost for the quadratic bilinear (a z-boost on the z-aligned
  // circular mode has an identically vanishing quadratic coefficient)
  const auto t1 = lz::InfinitesimalLorentz::boost(0, 1e-3);
  const auto t2 = lz::InfinitesimalLorentz::boost(0, 2e-3);
  const double w1 = lz::psibar_psi_change(s.psi, t1);
  const double w2 = lz::psibar_psi_change(s.psi, t2);
  CHECK(w2 / w1 == doctest::Approx(4.0).epsilon(0.01));

  // boost along the propagation axis sees the Poynting flux at first order
  const auto b1 = lz::InfinitesimalLorentz::boost(2, 1e-3);
  const auto b2 = lz::InfinitesimalLorentz::boost(2, 2e-3);
  const double n1 = lz::psidag_psi_change(s.psi, b1);
  const double n2 = lz::psidag_psi_change(s.psi, b2);
  CHECK(n2 / n1 == doctest::Approx(2.0).epsilon(0.01));
  const double scale2 = s.psi.max_abs() * s.psi.max_abs();
  CHECK(n1 >= 0.1 * 1e-3 * scale2);  // genuinely first order
}
