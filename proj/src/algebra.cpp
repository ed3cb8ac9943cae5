#include "photonwave/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cstdint>

#include "photonwave/errors.hpp"
#include "photonwave/polarization.hpp"
#include "photonwave/rng.hpp"

namespace photonwave::algebra {

std::array<Mat3c, 3> build_tau() {
  std::array<Mat3c, 3> tau;
  for (int i = 0; i < 3; ++i) {
    tau[i].setZero();
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int e = levi_civita(i, j, k);
        if (e != 0) tau[i](j, k) = cd(0, -double(e));
      }
  }
  return tau;
}

namespace {

MatrixSet build_matrix_set() {
  MatrixSet ms;
  ms.tau = build_tau();

  ms.beta0.setZero();
  for (int i = 0; i < 3; ++i) {
    ms.beta0(i, i) = 1.0;
    ms.beta0(i + 3, i + 3) = -1.0;
  }

  for (int i = 0; i < 3; ++i) {
    ms.beta[i].setZero();
    ms.beta[i].block<3, 3>(0, 3) = ms.tau[i];
    ms.beta[i].block<3, 3>(3, 0) = -ms.tau[i];
    ms.chi[i] = ms.beta0 * ms.beta[i];
    ms.spin[i].setZero();
    ms.spin[i].block<3, 3>(0, 0) = ms.tau[i];
    ms.spin[i].block<3, 3>(3, 3) = ms.tau[i];
  }

  for (auto& row : ms.sigma)
    for (auto& m : row) m.setZero();
  for (int l = 0; l < 3; ++l) {
    for (int m = 0; m < 3; ++m) {
      Mat6c s = Mat6c::Zero();
      for (int n = 0; n < 3; ++n) {
        const int e = levi_civita(l, m, n);
        if (e != 0) s += double(e) * ms.spin[n];
      }
      ms.sigma[l + 1][m + 1] = s;
    }
    ms.sigma[l + 1][0] = kI * ms.chi[l];
    ms.sigma[0][l + 1] = -kI * ms.chi[l];
  }
  return ms;
}

}  // namespace

const MatrixSet& matrix_set() {
  static const MatrixSet ms = build_matrix_set();
  return ms;
}

Mat6c hamiltonian_symbol(const Vec3& k) {
  const auto& ms = matrix_set();
  Mat6c h = Mat6c::Zero();
  for (int i = 0; i < 3; ++i) h += k[i] * ms.chi[i];
  return h;
}

std::array<double, 6> dispersion_spectrum(const Vec3& k) {
  Eigen::SelfAdjointEigenSolver<Mat6c> es(hamiltonian_symbol(k));
  std::array<double, 6> w;
  for (int i = 0; i < 6; ++i) w[std::size_t(5 - i)] = es.eigenvalues()[i];
  return w;
}

double multiplier_identity_residual(const Vec3& k) {
  const Mat6c h = hamiltonian_symbol(k);
  Mat6c rhs = k.squaredNorm() * Mat6c::Identity();
  const Eigen::Matrix3d kkt = k * k.transpose();
  rhs.block<3, 3>(0, 0) -= kkt.cast<cd>();
  rhs.block<3, 3>(3, 3) -= kkt.cast<cd>();
  return (h * h - rhs).cwiseAbs().maxCoeff();
}

Vec6c LinearWaveField::eval(const Vec3& x) const {
  Vec6c v = Vec6c::Zero();
  for (const auto& t : terms) {
    Vec6c a = t.a0;
    for (int j = 0; j < 3; ++j) a += x[j] * t.ax[j];
    v += a * std::exp(kI * t.k.dot(x));
  }
  return v;
}

LinearWaveField LinearWaveField::derivative(int j) const {
  LinearWaveField r;
  r.terms.reserve(terms.size());
  for (const auto& t : terms) {
    LinearWaveTerm d;
    d.k = t.k;
    d.a0 = t.ax[std::size_t(j)] + kI * t.k[j] * t.a0;
    for (int m = 0; m < 3; ++m) d.ax[std::size_t(m)] = kI * t.k[j] * t.ax[std::size_t(m)];
    r.terms.push_back(std::move(d));
  }
  return r;
}

LinearWaveField LinearWaveField::multiply_x(int j) const {
  LinearWaveField r;
  r.terms.reserve(terms.size());
  for (const auto& t : terms) {
    for (const auto& a : t.ax)
      if (a.cwiseAbs().maxCoeff() != 0.0)
        throw Error("multiply_x: field already linear in x");
    LinearWaveTerm d;
    d.k = t.k;
    d.ax[std::size_t(j)] = t.a0;
    r.terms.push_back(std::move(d));
  }
  return r;
}

LinearWaveField LinearWaveField::apply(const Mat6c& m) const {
  LinearWaveField r;
  r.terms.reserve(terms.size());
  for (const auto& t : terms) {
    LinearWaveTerm d;
    d.k = t.k;
    d.a0 = m * t.a0;
    for (int j = 0; j < 3; ++j) d.ax[std::size_t(j)] = m * t.ax[std::size_t(j)];
    r.terms.push_back(std::move(d));
  }
  return r;
}

LinearWaveField LinearWaveField::operator-(const LinearWaveField& o) const {
  LinearWaveField r = *this;
  for (const auto& t : o.terms) {
    LinearWaveTerm d = t;
    d.a0 = -d.a0;
    for (auto& a : d.ax) a = -a;
    r.terms.push_back(std::move(d));
  }
  return r;
}

LinearWaveField LinearWaveField::operator+(const LinearWaveField& o) const {
  LinearWaveField r = *this;
  r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
  return r;
}

LinearWaveField LinearWaveField::apply_hamiltonian() const {
  const auto& ms = matrix_set();
  LinearWaveField r;
  for (int m = 0; m < 3; ++m) {
    const LinearWaveField d = derivative(m).apply(-kI * ms.chi[m]);
    r.terms.insert(r.terms.end(), d.terms.begin(), d.terms.end());
  }
  return r;
}

LinearWaveField LinearWaveField::apply_orbital(int n) const {
  LinearWaveField r;
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) {
      const int e = levi_civita(n, j, l);
      if (e == 0) continue;
      LinearWaveField d = derivative(l).multiply_x(j).apply(cd(0, -double(e)) * Mat6c::Identity());
      r.terms.insert(r.terms.end(), d.terms.begin(), d.terms.end());
    }
  return r;
}

double LinearWaveField::max_abs_on_grid(const BoxSpec& box) const {
  double m = 0;
  for (int ix = 0; ix < box.grid_points[0]; ++ix)
    for (int iy = 0; iy < box.grid_points[1]; ++iy)
      for (int iz = 0; iz < box.grid_points[2]; ++iz)
        m = std::max(m, eval(box.coord(ix, iy, iz)).cwiseAbs().maxCoeff());
  return m;
}

double LinearWaveField::omega_residual_on_grid(const BoxSpec& box) const {
  // Omega = I2 (x) grad(div): component c of the result is d_c(d_m psi_m)
  // within each 3-block.
  LinearWaveField div_upper, div_lower;
  for (int m = 0; m < 3; ++m) {
    Mat6c pick_u = Mat6c::Zero(), pick_l = Mat6c::Zero();
    pick_u(0, m) = 1.0;
    pick_l(0, m + 3) = 1.0;
    auto du = derivative(m).apply(pick_u);
    auto dl = derivative(m).apply(pick_l);
    div_upper.terms.insert(div_upper.terms.end(), du.terms.begin(), du.terms.end());
    div_lower.terms.insert(div_lower.terms.end(), dl.terms.begin(), dl.terms.end());
  }
  double m = 0;
  for (int c = 0; c < 3; ++c) {
    Mat6c to_c = Mat6c::Zero(), to_c3 = Mat6c::Zero();
    to_c(c, 0) = 1.0;
    to_c3(c + 3, 0) = 1.0;
    auto ru = div_upper.derivative(c).apply(to_c);
    auto rl = div_lower.derivative(c).apply(to_c3);
    m = std::max(m, ru.max_abs_on_grid(box));
    m = std::max(m, rl.max_abs_on_grid(box));
  }
  return m;
}

double spin_orbit_commutator_residual(const LinearWaveField& psi, const BoxSpec& box) {
  const double scale = psi.max_abs_on_grid(box);
  if (scale == 0.0) return 0.0;
  if (psi.omega_residual_on_grid(box) > 1e-10 * scale)
    throw NonTransverse("spin-orbit check requires a transverse test field");

  const auto& ms = matrix_set();
  const LinearWaveField hpsi = psi.apply_hamiltonian();
  double worst = 0;
  for (int n = 0; n < 3; ++n) {
    const LinearWaveField js_psi = psi.apply_orbital(n) + psi.apply(ms.spin[n]);
    const LinearWaveField lhs = js_psi.apply_hamiltonian();
    const LinearWaveField rhs = hpsi.apply_orbital(n) + hpsi.apply(ms.spin[n]);
    worst = std::max(worst, (lhs - rhs).max_abs_on_grid(box));
  }
  return worst / scale;
}

double verify_spin_orbit_commutator(const BoxSpec& box, std::uint64_t seed) {
  box.validate();
  for (int d = 0; d < 3; ++d)
    if (box.grid_points[d] < 8) throw ConfigError("spin-orbit check needs >= 8 points per axis");

  Rng rng(seed);
  LinearWaveField psi;
  for (int t = 0; t < 6; ++t) {
    std::array<int, 3> n{};
    do {
      for (int d = 0; d < 3; ++d)
        n[d] = rng.uniform_int(-std::min(3, box.grid_points[d] / 2 - 1),
                               std::min(3, box.grid_points[d] / 2 - 1));
    } while (n[0] == 0 && n[1] == 0 && n[2] == 0);
    const Vec3 k = box.wave_vector(n);
    const int lambda = rng.uniform() < 0.5 ? 1 : -1;
    const Vec3c eps = polarization::circular(k, lambda);
    LinearWaveTerm term;
    term.k = k;
    const cd c{rng.normal(), rng.normal()};
    term.a0.head<3>() = c * eps;
    term.a0.tail<3>() = cd(0, double(lambda)) * c * eps;  // any transverse filling works
    psi.terms.push_back(std::move(term));
  }
  return spin_orbit_commutator_residual(psi, box);
}

}  // namespace photonwave::algebra
