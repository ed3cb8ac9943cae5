#include <doctest.h>

#include "photonwave/errors.hpp"
#include "photonwave/quantization.hpp"

using namespace photonwave;
namespace qz = photonwave::quantization;

namespace {
BoxSpec box8() {
  BoxSpec b;
  b.grid_points = {8, 8, 8};
  return b;
}
}  // namespace

TEST_CASE("single-mode ladder matrices") {
  const auto model = qz::make_fock_model(box8(), {{{0, 0, 1}, 1}}, 3);
  const auto ladders = qz::ladder_operators(model);
  const auto& a = ladders[0].a;
  const auto& ad = ladders[0].a_dagger;

  SUBCASE("action a|n> = sqrt(n)|n-1>") {
    for (int n = 1; n <= 3; ++n)
      CHECK(std::abs(a(n - 1, n) - std::sqrt(double(n))) == 0.0);
    CHECK((ad - a.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("commutator diagonal (1,1,1,-3)") {
    const Eigen::MatrixXcd comm = a * ad - ad * a;
    const double expect[4] = {1, 1, 1, -3};
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(comm(i, i) - expect[i]) <= 1e-13);
    Eigen::MatrixXcd od = comm;
    od.diagonal().setZero();
    CHECK(od.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("number operator diagonal (0,1,2,3)") {
    const Eigen::MatrixXcd num = ad * a;
    for (int i = 0; i < 4; ++i) CHECK(std::abs(num(i, i) - double(i)) <= 1e-13);
  }
}

TEST_CASE("two-mode tensor factors commute exactly") {
  const auto model = qz::make_fock_model(box8(), {{{0, 0, 1}, 1}, {{0, 1, 0}, 1}}, 2);
  const auto ladders = qz::ladder_operators(model);
  CHECK((ladders[0].a * ladders[1].a_dagger - ladders[1].a_dagger * ladders[0].a)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((ladders[0].a * ladders[1].a - ladders[1].a * ladders[0].a)
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("Hamiltonian spectrum is an arithmetic ladder with zero point") {
  SUBCASE("single mode") {
    const auto model = qz::make_fock_model(box8(), {{{0, 0, 2}, 1}}, 4);
    const double w = model.fock_modes[0].omega();
    const auto spec = qz::spectrum(model);
    for (std::size_t i = 0; i < spec.size(); ++i)
      CHECK(spec[i].energy == doctest::Approx(w * (double(i) + 0.5)).epsilon(1e-13));
    // Hermiticity of the operator
    const auto h = qz::hamiltonian_operator(model);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("three modes: ground energy is half the frequency sum") {
    const auto model = qz::make_fock_model(
        box8(), {{{0, 0, 1}, 1}, {{0, 0, 1}, -1}, {{1, 1, 0}, 1}}, 2);
    double half = 0;
    for (const auto& m : model.fock_modes) half += 0.5 * m.omega();
    CHECK(qz::spectrum(model).front().energy == doctest::Approx(half).epsilon(1e-13));
  }
  SUBCASE("momentum operator annihilates the ground state") {
    const auto model = qz::make_fock_model(box8(), {{{0, 0, 1}, 1}, {{0, -1, 0}, -1}}, 2);
    for (const auto& pc : qz::momentum_operators(model)) {
      CHECK(std::abs(pc(0, 0)) == 0.0);
      CHECK((pc - pc.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("Heisenberg equation of motion in the truncated space") {
  const auto model = qz::make_fock_model(box8(), {{{0, 0, 1}, 1}, {{0, 1, 0}, -1}}, 4);
  const std::vector<Vec3> pts{Vec3{0.1, 0.2, 0.3}, Vec3{2.0, 1.0, 3.0}};
  CHECK(qz::heisenberg_evolution_check(model, pts) <= 1e-12);
}

TEST_CASE("field commutator equals the band-limited transverse delta") {
  const BoxSpec box = box8();
  const auto res = qz::field_commutator_check(box, 3);
  CHECK(res.max_deviation <= 1e-10 * res.delta_scale);
  CHECK(res.max_cross_block <= 1e-10 * res.delta_scale);
  CHECK(res.translation_residual <= 1e-12 * res.delta_scale);

  SUBCASE("cutoff sweep deviations shrink monotonically") {
    const double l1 = qz::commutator_cutoff_deviation(box, 1);
    const double l2 = qz::commutator_cutoff_deviation(box, 2);
    const double l3 = qz::commutator_cutoff_deviation(box, 3);
    CHECK(l2 < l1);
    CHECK(l3 < l2);
    const double m1 = qz::commutator_cutoff_deviation_max(box, 1);
    const double m2 = qz::commutator_cutoff_deviation_max(box, 2);
    const double m3 = qz::commutator_cutoff_deviation_max(box, 3);
    CHECK(m2 < m1);
    CHECK(m3 < m2);
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(qz::make_fock_model(box8(), {{{0, 0, 0}, 1}}, 2), ZeroWaveVector);
  CHECK_THROWS_AS(qz::make_fock_model(box8(), {{{0, 0, 1}, 0}}, 2), ConfigError);
  CHECK_THROWS_AS(qz::make_fock_model(box8(), {{{0, 0, 1}, 1}}, 0), ConfigError);
  // dimension cap
  const std::vector<std::pair<std::array<int, 3>, int>> many{
      {{0, 0, 1}, 1}, {{0, 0, 1}, -1}, {{0, 1, 0}, 1}, {{0, 1, 0}, -1},
      {{1, 0, 0}, 1}, {{1, 0, 0}, -1}, {{0, 0, 2}, 1}};
  CHECK_THROWS_AS(qz::make_fock_model(box8(), many, 6), BudgetExceeded);
}
