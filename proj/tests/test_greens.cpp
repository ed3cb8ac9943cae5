#include <doctest.h>

#include "photonwave/errors.hpp"
#include "photonwave/greens.hpp"
#include "photonwave/rng.hpp"

using namespace photonwave;
namespace gr = photonwave::greens;

TEST_CASE("scalar propagator multiplier values") {
  // k^2 = 4 - 1 = 3
  const cd v = gr::scalar_propagator_multiplier({2.0, Vec3{0, 0, 1}}, 1e-10);
  CHECK(std::abs(v - kI / 3.0) <= 1e-10);
  // on shell: regulated pole i/(i eps) = 1/eps
  const cd pole = gr::scalar_propagator_multiplier({1.0, Vec3{0, 0, 1}}, 1e-3);
  CHECK(std::abs(pole - cd(1e3)) <= 1e-9 * 1e3);
  // even in k4
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const gr::FourVector k4{rng.normal(), Vec3{rng.normal(), rng.normal(), rng.normal()}};
    const gr::FourVector mk4{-k4.omega, -k4.k};
    CHECK(std::abs(gr::scalar_propagator_multiplier(k4, 1e-6) -
                   gr::scalar_propagator_multiplier(mk4, 1e-6)) == 0.0);
  }
  CHECK_THROWS_AS(gr::scalar_propagator_multiplier({1.0, Vec3{0, 0, 1}}, 0.0), ConfigError);
}

TEST_CASE("momentum-symbol square factorizes through omega_hat") {
  Rng rng(7);
  SUBCASE("exact on integer 4-vectors") {
    for (int t = 0; t < 30; ++t) {
      const gr::FourVector k4{double(rng.uniform_int(-5, 5)),
                              Vec3{double(rng.uniform_int(-5, 5)),
                                   double(rng.uniform_int(-5, 5)),
                                   double(rng.uniform_int(-5, 5))}};
      const Mat6c lhs = gr::momentum_symbol(k4) * gr::momentum_symbol(k4);
      const Mat6c rhs = k4.squared() * Mat6c::Identity() + gr::omega_hat(k4.k);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("to rounding on real 4-vectors") {
    for (int t = 0; t < 30; ++t) {
      const gr::FourVector k4{rng.normal(), Vec3{rng.normal(), rng.normal(), rng.normal()}};
      const Mat6c lhs = gr::momentum_symbol(k4) * gr::momentum_symbol(k4);
      const Mat6c rhs = k4.squared() * Mat6c::Identity() + gr::omega_hat(k4.k);
      const double scale = std::max(1.0, k4.omega * k4.omega + k4.k.squaredNorm());
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13 * scale);
    }
  }
}

TEST_CASE("transverse green multiplier") {
  const gr::FourVector k4{1.7, Vec3{0.4, -1.1, 0.8}};

  SUBCASE("omega_hat annihilates the transverse delta") {
    CHECK((gr::omega_hat(k4.k) * gr::transverse_delta_hat(k4.k)).cwiseAbs().maxCoeff() <=
          1e-14 * k4.k.squaredNorm());
  }
  SUBCASE("longitudinal directions are annihilated") {
    const Mat6c rt = gr::transverse_green_multiplier(k4, 1e-8);
    const Vec3 khat = k4.k / k4.k.norm();
    Mat6c long6 = Mat6c::Zero();
    long6.block<3, 3>(0, 0) = (khat * khat.transpose()).cast<cd>();
    long6.block<3, 3>(3, 3) = (khat * khat.transpose()).cast<cd>();
    CHECK((rt * long6).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("defining property, regulated and in the limit") {
    CHECK(gr::green_defining_residual(k4, 1e-4) <= 1e-13);
    auto err = [&](double epsv) {
      const Mat6c rt = gr::transverse_green_multiplier(k4, epsv) / kI;
      return (gr::momentum_symbol(k4) * rt - gr::transverse_delta_hat(k4.k))
          .cwiseAbs()
          .maxCoeff();
    };
    CHECK(err(1e-4) / err(5e-5) == doctest::Approx(2.0).epsilon(0.01));
    CHECK(err(1e-10) <= 1e-9);
  }
  SUBCASE("zero spatial k is rejected") {
    CHECK_THROWS_AS(gr::transverse_delta_hat(Vec3::Zero()), ZeroSpatialK);
    CHECK_THROWS_AS(gr::transverse_green_multiplier({1.0, Vec3::Zero()}, 1e-6),
                    ZeroSpatialK);
  }
}

TEST_CASE("lattice propagator: wave-operator identity and symmetry") {
  gr::PropagatorLattice lat;
  lat.n_t = 8;
  lat.n_x = {8, 8, 8};
  lat.t_extent = 5.483;
  lat.lengths = {7.635, 4.518, 4.509};
  lat.epsilon = 1e-12;
  REQUIRE(lat.min_abs_k2() > 1e-3);

  const auto prop = gr::position_space_propagator(lat);
  CHECK(prop.dalembert_residual <= 1e-10);
  CHECK(prop.parity_residual <= 1e-12);
  CHECK(prop.zero_modes_excluded == 1);

  SUBCASE("epsilon dependence dies away from the light cone") {
    gr::PropagatorLattice l1 = lat, l2 = lat;
    l1.epsilon = 1e-6;
    l2.epsilon = 2e-6;
    const auto p1 = gr::position_space_propagator(l1);
    const auto p2 = gr::position_space_propagator(l2);
    double maxd = 0;
    for (const auto& z : p1.delta) maxd = std::max(maxd, std::abs(z));
    // far corner: max |t^2 - |x|^2| over periodic distances
    double best = -1;
    std::size_t best_idx = 0;
    std::int64_t idx = 0;
    for (int jt = 0; jt < lat.n_t; ++jt)
      for (int jx = 0; jx < lat.n_x[0]; ++jx)
        for (int jy = 0; jy < lat.n_x[1]; ++jy)
          for (int jz = 0; jz < lat.n_x[2]; ++jz, ++idx) {
            auto d = [](int j, int n, double l) { return std::min(j, n - j) * l / n; };
            const double t = d(jt, lat.n_t, lat.t_extent);
            const double x2 = d(jx, lat.n_x[0], lat.lengths[0]) * d(jx, lat.n_x[0], lat.lengths[0]) +
                              d(jy, lat.n_x[1], lat.lengths[1]) * d(jy, lat.n_x[1], lat.lengths[1]) +
                              d(jz, lat.n_x[2], lat.lengths[2]) * d(jz, lat.n_x[2], lat.lengths[2]);
            const double sep = std::abs(t * t - x2);
            if (sep > best) {
              best = sep;
              best_idx = std::size_t(idx);
            }
          }
    // normalized to the propagator scale: the far field itself is tiny on a
    // desk-scale lattice, so the meaningful statement is that the change out
    // there stays at the eps level of the global amplitude
    const double rel = std::abs(p2.delta[best_idx] - p1.delta[best_idx]) / maxd;
    CHECK(rel <= 2e-6);
  }

  SUBCASE("budget and light-cone validation") {
    gr::PropagatorLattice big = lat;
    big.n_t = 64;
    big.n_x = {64, 64, 64};
    CHECK_THROWS_AS(big.validate(), BudgetExceeded);
    gr::PropagatorLattice resonant = lat;
    resonant.t_extent = resonant.lengths[0];  // w grid == |k| grid on the axis
    CHECK_THROWS_AS(resonant.validate(), ConfigError);
  }
}
