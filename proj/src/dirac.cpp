#include "photonwave/dirac.hpp"

#include <cmath>

#include "photonwave/errors.hpp"
#include "photonwave/modes.hpp"
#include "photonwave/rng.hpp"

namespace photonwave::dirac {

std::array<Mat2c, 3> pauli_matrices() {
  std::array<Mat2c, 3> s;
  s[0] << cd(0), cd(1), cd(1), cd(0);
  s[1] << cd(0), cd(0, -1), cd(0, 1), cd(0);
  s[2] << cd(1), cd(0), cd(0), cd(-1);
  return s;
}

std::array<Mat4c, 4> gamma_matrices() {
  const auto sig = pauli_matrices();
  std::array<Mat4c, 4> g;
  g[0].setZero();
  g[0].block<2, 2>(0, 0) = Mat2c::Identity();
  g[0].block<2, 2>(2, 2) = -Mat2c::Identity();
  for (int i = 0; i < 3; ++i) {
    g[std::size_t(i + 1)].setZero();
    g[std::size_t(i + 1)].block<2, 2>(0, 2) = sig[std::size_t(i)];
    g[std::size_t(i + 1)].block<2, 2>(2, 0) = -sig[std::size_t(i)];
  }
  return g;
}

double gamma_anticommutator_residual() {
  const auto g = gamma_matrices();
  const double metric[4] = {1, -1, -1, -1};
  double worst = 0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Mat4c lhs = g[std::size_t(mu)] * g[std::size_t(nu)] +
                        g[std::size_t(nu)] * g[std::size_t(mu)];
      const Mat4c rhs = (mu == nu ? 2 * metric[mu] : 0.0) * Mat4c::Identity();
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

DiracPlaneWave dirac_plane_wave(const Vec3& p, int spin_index, int energy_sign,
                                double mass) {
  if (mass < 0) throw ConfigError("mass must be >= 0");
  if (spin_index != 0 && spin_index != 1) throw ConfigError("spin index is 0 or 1");
  if (energy_sign != 1 && energy_sign != -1) throw ConfigError("energy sign is +-1");
  const double e = std::sqrt(p.squaredNorm() + mass * mass);
  if (e == 0.0) throw ConfigError("massless rest state is degenerate");

  const auto sig = pauli_matrices();
  Mat2c sp = Mat2c::Zero();
  for (int i = 0; i < 3; ++i) sp += p[i] * sig[std::size_t(i)];
  Vec2c xi = Vec2c::Zero();
  xi[spin_index] = 1.0;

  DiracPlaneWave w;
  w.p = p;
  w.mass = mass;
  w.energy_sign = energy_sign;
  if (energy_sign > 0) {
    w.amplitude.head<2>() = xi;
    w.amplitude.tail<2>() = sp * xi / (e + mass);
  } else {
    w.amplitude.head<2>() = sp * xi / (e + mass);
    w.amplitude.tail<2>() = xi;
  }
  w.amplitude.normalize();
  return w;
}

double dirac_equation_residual(const DiracPlaneWave& w) {
  // on Psi = amp e^{-i s(Et - p.x)}: i gamma^mu d_mu -> s(E gamma0 - gamma.p)
  const auto g = gamma_matrices();
  Mat4c op = double(w.energy_sign) * w.energy() * g[0];
  for (int i = 0; i < 3; ++i)
    op -= double(w.energy_sign) * w.p[i] * g[std::size_t(i + 1)];
  op -= w.mass * Mat4c::Identity();
  return (op * w.amplitude).cwiseAbs().maxCoeff();
}

MaxwellLikeResidual maxwell_like_residual(const SpinorSample& s, double mass) {
  const auto sig = pauli_matrices();
  const Vec2c phi = s.psi.head<2>(), chi = s.psi.tail<2>();
  const Vec2c dphi_t = s.dt.head<2>(), dchi_t = s.dt.tail<2>();
  Vec2c sg_phi = Vec2c::Zero(), sg_chi = Vec2c::Zero();
  for (int i = 0; i < 3; ++i) {
    sg_phi += sig[std::size_t(i)] * s.dx[std::size_t(i)].head<2>();
    sg_chi += sig[std::size_t(i)] * s.dx[std::size_t(i)].tail<2>();
  }
  const Vec2c ra = sg_chi - (-dphi_t - kI * mass * phi);
  const Vec2c rb = sg_phi - (-dchi_t + kI * mass * chi);

  const auto g = gamma_matrices();
  Vec4c r4 = kI * (g[0] * s.dt) - mass * s.psi;
  for (int i = 0; i < 3; ++i) r4 += kI * (g[std::size_t(i + 1)] * s.dx[std::size_t(i)]);

  MaxwellLikeResidual res;
  res.line_a = ra.cwiseAbs().maxCoeff();
  res.line_b = rb.cwiseAbs().maxCoeff();
  res.four_spinor = r4.cwiseAbs().maxCoeff();
  const Vec2c map_a = -kI * r4.head<2>();
  const Vec2c map_b = kI * r4.tail<2>();
  res.map_residual = std::max((ra - map_a).cwiseAbs().maxCoeff(),
                              (rb - map_b).cwiseAbs().maxCoeff());
  return res;
}

std::vector<DiracModeCoeff> evolve_modes(const std::vector<DiracModeCoeff>& in,
                                         double mass, double duration) {
  // H(p) = gamma0(gamma.p + m); H^2 = E^2 => exp(-iHt) = cos - i sin H/E
  const auto g = gamma_matrices();
  std::vector<DiracModeCoeff> out = in;
  for (auto& m : out) {
    const double e = std::sqrt(m.p.squaredNorm() + mass * mass);
    Mat4c h = mass * g[0];
    for (int i = 0; i < 3; ++i) h += m.p[i] * (g[0] * g[std::size_t(i + 1)]);
    if (e == 0.0) continue;
    const Mat4c u = std::cos(e * duration) * Mat4c::Identity() -
                    kI * std::sin(e * duration) / e * h;
    m.c = u * m.c;
  }
  return out;
}

AnalogyReport analogy_suite(std::uint64_t seed) {
  Rng rng(seed);
  AnalogyReport rep{};
  const auto sig = pauli_matrices();
  const auto g = gamma_matrices();
  const double mass = 1.0 + rng.uniform();
  const Vec3 p{rng.normal(), rng.normal(), rng.normal()};
  const double e = std::sqrt(p.squaredNorm() + mass * mass);

  // (1) off-diagonal coupling of the first-order system is sigma.p
  Mat4c h = mass * g[0];
  for (int i = 0; i < 3; ++i) h += p[i] * (g[0] * g[std::size_t(i + 1)]);
  rep.coupling_offdiag_norm = h.block<2, 2>(0, 2).norm() / std::sqrt(2.0);  // = |p|
  {
    // short-time growth of the chi population from a pure-phi start
    Vec2c xi{cd(rng.normal(), rng.normal()), cd(rng.normal(), rng.normal())};
    xi.normalize();
    Mat2c sp = Mat2c::Zero();
    for (int i = 0; i < 3; ++i) sp += p[i] * sig[std::size_t(i)];
    const double dt = 1e-5;
    Vec4c c0 = Vec4c::Zero();
    c0.head<2>() = xi;
    std::vector<DiracModeCoeff> modes{{p, c0}};
    const Vec4c c1 = evolve_modes(modes, mass, dt)[0].c;
    const double grown = c1.tail<2>().norm() / dt;
    rep.coupling_growth_mismatch =
        std::abs(grown - (sp * xi).norm()) / std::max(1.0, (sp * xi).norm());
  }

  // (2) swap chi <-> phi with m -> -m maps solutions to solutions
  {
    const DiracPlaneWave w = dirac_plane_wave(p, 0, +1, mass);
    SpinorSample s;
    Vec4c swapped;
    swapped.head<2>() = w.amplitude.tail<2>();
    swapped.tail<2>() = w.amplitude.head<2>();
    s.psi = swapped;
    s.dt = cd(0, -e) * swapped;
    for (int i = 0; i < 3; ++i) s.dx[std::size_t(i)] = cd(0, p[i]) * swapped;
    const auto r = maxwell_like_residual(s, -mass);
    rep.swap_residual = std::max(r.line_a, r.line_b);
  }
  {
    // photon side: block swap X maps f -> g for every helicity
    double worst = 0;
    const Vec3 k{1.0, -2.0, 0.5};
    for (int lambda = -1; lambda <= 1; ++lambda) {
      const Vec6c f = modes::f_spinor(k, lambda);
      const Vec6c gsp = modes::g_spinor(k, lambda);
      Vec6c xf;
      xf.head<3>() = f.tail<3>();
      xf.tail<3>() = f.head<3>();
      worst = std::max(worst, (xf - gsp).cwiseAbs().maxCoeff());
    }
    rep.blockswap_fg_residual = worst;
  }

  // (3) phi^dag phi - chi^dag chi is invariant to O(eps^2) under a boost
  {
    auto boosted_change = [&](double eta) {
      Mat4c k1 = Mat4c::Zero();
      k1.block<2, 2>(0, 2) = sig[0];
      k1.block<2, 2>(2, 0) = sig[0];
      const Mat4c lam = Mat4c::Identity() - (eta / 2) * k1;
      const DiracPlaneWave w = dirac_plane_wave(p, 0, +1, mass);
      const Vec4c q = lam * w.amplitude;
      auto inv = [&](const Vec4c& v) {
        return v.head<2>().squaredNorm() - v.tail<2>().squaredNorm();
      };
      return std::abs(inv(q) - inv(w.amplitude));
    };
    const double c1 = boosted_change(1e-3), c2 = boosted_change(2e-3);
    rep.invariant_second_order_ratio = c2 / c1;
    rep.invariant_first_order_change = c1;
  }

  // (4) conservation of int(phi^dag phi + chi^dag chi) over one period
  {
    std::vector<DiracModeCoeff> modes;
    for (int i = 0; i < 5; ++i) {
      Vec4c c;
      for (int j = 0; j < 4; ++j) c[j] = cd(rng.normal(), rng.normal());
      modes.push_back({Vec3{rng.normal(), rng.normal(), rng.normal()}, c});
    }
    double before = 0;
    for (const auto& m : modes) before += m.c.squaredNorm();
    const double period = 2 * kPi / e;
    const auto evolved = evolve_modes(modes, mass, period);
    double after = 0;
    for (const auto& m : evolved) after += m.c.squaredNorm();
    rep.norm_conservation_drift = std::abs(after - before) / before;
  }

  // (5) component ratio and rest-frame structure
  {
    const DiracPlaneWave w = dirac_plane_wave(p, 1, +1, mass);
    const double ratio = w.chi().norm() / w.phi().norm();
    rep.component_ratio_error = std::abs(ratio - p.norm() / (e + mass));
    const DiracPlaneWave rest_pos = dirac_plane_wave(Vec3::Zero(), 0, +1, mass);
    const DiracPlaneWave rest_neg = dirac_plane_wave(Vec3::Zero(), 0, -1, mass);
    rep.rest_frame_purity =
        std::max(rest_pos.chi().norm(), rest_neg.phi().norm());
  }
  return rep;
}

}  // namespace photonwave::dirac
