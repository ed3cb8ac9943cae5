#include "photonwave/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "photonwave/algebra.hpp"
#include "photonwave/errors.hpp"
#include "photonwave/polarization.hpp"
#include "photonwave/rng.hpp"

namespace photonwave::observables {

double ModeAmplitudes::energy() const {
  double h = 0;
  for (const auto& [key, amp] : a) h += box.wave_vector(key.n).norm() * std::norm(amp);
  return h;
}

Vec3 ModeAmplitudes::momentum() const {
  Vec3 p = Vec3::Zero();
  for (const auto& [key, amp] : a) p += box.wave_vector(key.n) * std::norm(amp);
  return p;
}

ModeAmplitudes decompose(const SpectralGrid& grid, const dynamics::FieldState& s,
                         bool require_real) {
  if (!(grid.box() == s.box)) throw MixedBox{};
  if (require_real) {
    const auto eb = dynamics::to_EB(s);
    const double scale = std::max(1e-300, std::sqrt(s.psi.squared_norm() /
                                                    double(s.psi.size())));
    if (eb.max_imag > 1e-12 * std::max(1.0, scale))
      throw NonRealField("decompose requires real E and B fields");
  }

  const BoxSpec& box = s.box;
  Field6 w = s.psi;
  grid.forward(w);
  const double dv = box.cell_volume();
  const double v = box.volume();

  ModeAmplitudes out;
  out.box = box;
  out.time = s.time;

  const auto n0 = box.grid_points[0], n1 = box.grid_points[1], n2 = box.grid_points[2];
  for (int ix = 0; ix < n0; ++ix)
    for (int iy = 0; iy < n1; ++iy)
      for (int iz = 0; iz < n2; ++iz) {
        const std::array<int, 3> n{box.mode_int(0, ix), box.mode_int(1, iy),
                                   box.mode_int(2, iz)};
        // skip the uniform bin and the Nyquist rows (alias boundary)
        if ((n[0] == 0 && n[1] == 0 && n[2] == 0) || !box.alias_free(n)) continue;
        const auto i = box.index(ix, iy, iz);
        const Vec3 k = box.wave_vector(n);
        const double omega = k.norm();
        Vec6c psik;
        for (int c = 0; c < 6; ++c) psik[c] = w.comp[std::size_t(c)][std::size_t(i)] * dv;
        const cd phase = std::exp(kI * omega * s.time);
        for (int lambda : {1, -1}) {
          const Vec6c f = modes::f_spinor(k, lambda);
          const cd amp = std::sqrt(2.0 / (omega * v)) * phase * f.dot(psik);
          if (std::abs(amp) > 0.0) out.a[{n, lambda}] = amp;
        }
      }
  return out;
}

namespace {

Field6 positive_part_on_grid(const SpectralGrid& grid, const ModeAmplitudes& amps) {
  const BoxSpec& box = amps.box;
  if (!(grid.box() == box)) throw MixedBox{};
  const double v = box.volume();
  const double npts = double(box.num_points());

  Field6 spec(box.num_points());
  // positive-frequency part in the spectral representation
  for (const auto& [key, amp] : amps.a) {
    const Vec3 k = box.wave_vector(key.n);
    const double omega = k.norm();
    const Vec6c f = modes::f_spinor(k, key.lambda);
    const cd coef = amp / std::sqrt(2.0) * std::sqrt(omega / v) *
                    std::exp(-kI * omega * amps.time) * npts;
    const int ix = (key.n[0] + box.grid_points[0]) % box.grid_points[0];
    const int iy = (key.n[1] + box.grid_points[1]) % box.grid_points[1];
    const int iz = (key.n[2] + box.grid_points[2]) % box.grid_points[2];
    const auto i = box.index(ix, iy, iz);
    for (int c = 0; c < 6; ++c) spec.comp[std::size_t(c)][std::size_t(i)] += coef * f[c];
  }
  grid.backward(spec);
  return spec;
}

}  // namespace

dynamics::FieldState reconstruct(const SpectralGrid& grid, const ModeAmplitudes& amps) {
  const BoxSpec& box = amps.box;
  const Field6 spec = positive_part_on_grid(grid, amps);
  // psi = psi_+ + beta0 conj(psi_+)
  dynamics::FieldState out{box, Field6(box.num_points()), amps.time};
  for (std::int64_t i = 0; i < spec.size(); ++i) {
    const Vec6c p = spec.at(i);
    Vec6c full = p;
    full.head<3>() += p.head<3>().conjugate();
    full.tail<3>() -= p.tail<3>().conjugate();
    out.psi.set(i, full);
  }
  return out;
}

dynamics::FieldState reconstruct_positive(const SpectralGrid& grid,
                                          const ModeAmplitudes& amps) {
  return {amps.box, positive_part_on_grid(grid, amps), amps.time};
}

std::vector<cd> pseudo_lagrangian_density(const SpectralGrid& grid, const Field6& psi,
                                          const Field6& dpsi_dt) {
  if (psi.size() != dpsi_dt.size()) throw ShapeMismatch("psi and dpsi_dt sizes differ");
  // L = i psi^dag dpsi_dt + i psi^dag (chi . grad psi)
  const auto& ms = algebra::matrix_set();
  std::array<Field6, 3> gradf{Field6(psi.size()), Field6(psi.size()), Field6(psi.size())};
  {
    Field6 w = psi;
    grid.forward(w);
    for (int d = 0; d < 3; ++d) {
      Field6 g = w;
      for (int c = 0; c < 6; ++c)
        for (std::int64_t i = 0; i < g.size(); ++i)
          g.comp[std::size_t(c)][std::size_t(i)] *= kI * grid.wave_vector(i)[d];
      grid.backward(g);
      gradf[std::size_t(d)] = std::move(g);
    }
  }
  std::vector<cd> out(std::size_t(psi.size()));
  for (std::int64_t i = 0; i < psi.size(); ++i) {
    const Vec6c p = psi.at(i);
    Vec6c chigrad = Vec6c::Zero();
    for (int d = 0; d < 3; ++d) chigrad += ms.chi[d] * gradf[std::size_t(d)].at(i);
    out[std::size_t(i)] = kI * p.dot(dpsi_dt.at(i)) + kI * p.dot(chigrad);
  }
  return out;
}

namespace {

// multiplier picking the +-frequency parts and weighting by -+1/w:
// X(k) = -(i/w) (chi.khat) psi(k); annihilates longitudinal and k = 0 content.
void frequency_inverse(const SpectralGrid& grid, Field6& w, std::int64_t* removed) {
  std::int64_t cnt = 0;
  const double scale = std::sqrt(w.squared_norm() / double(std::max<std::int64_t>(1, w.size())));
  for (std::int64_t i = 0; i < w.size(); ++i) {
    const Vec3 k = grid.wave_vector(i);
    const double omega = k.norm();
    Vec3c u, l;
    for (int c = 0; c < 3; ++c) {
      u[c] = w.comp[std::size_t(c)][std::size_t(i)];
      l[c] = w.comp[std::size_t(c + 3)][std::size_t(i)];
    }
    if (omega == 0.0) {
      if (u.norm() + l.norm() > 1e-14 * scale) ++cnt;
      u.setZero();
      l.setZero();
    } else {
      const Vec3 khat = k / omega;
      const cd klu = khat[0] * u[0] + khat[1] * u[1] + khat[2] * u[2];
      const cd kll = khat[0] * l[0] + khat[1] * l[1] + khat[2] * l[2];
      if (std::abs(klu) + std::abs(kll) > 1e-14 * scale) ++cnt;
      // (chi.khat) swaps blocks through tau.khat = i khat x
      const Vec3c nu = -(kI / omega) * (kI * cross_rc(khat, l));
      const Vec3c nl = -(kI / omega) * (kI * cross_rc(khat, u));
      u = nu;
      l = nl;
    }
    for (int c = 0; c < 3; ++c) {
      w.comp[std::size_t(c)][std::size_t(i)] = u[c];
      w.comp[std::size_t(c + 3)][std::size_t(i)] = l[c];
    }
  }
  if (removed) *removed = cnt;
}

}  // namespace

ConjugateField canonical_momentum(const SpectralGrid& grid, const dynamics::FieldState& s) {
  if (!(grid.box() == s.box)) throw MixedBox{};
  ConjugateField out;
  Field6 w = s.psi;
  grid.forward(w);
  frequency_inverse(grid, w, &out.zero_modes_removed);
  grid.backward(w);
  out.pi_dagger = std::move(w);
  return out;
}

FourMomentum four_momentum(const SpectralGrid& grid, const dynamics::FieldState& s) {
  if (!(grid.box() == s.box)) throw MixedBox{};
  const BoxSpec& box = s.box;
  const double dv = box.cell_volume();
  const auto& ms = algebra::matrix_set();

  Field6 spec = s.psi;
  grid.forward(spec);

  // pi^dag, psidot = -i H psi, grad psi, and Y = ((-i d_t)^{-1} psibar)^dag
  Field6 x = spec;
  std::int64_t removed = 0;
  frequency_inverse(grid, x, &removed);
  grid.backward(x);

  Field6 psidot = spec;
  for (std::int64_t i = 0; i < psidot.size(); ++i) {
    const Vec3 k = grid.wave_vector(i);
    Vec3c u, l;
    for (int c = 0; c < 3; ++c) {
      u[c] = psidot.comp[std::size_t(c)][std::size_t(i)];
      l[c] = psidot.comp[std::size_t(c + 3)][std::size_t(i)];
    }
    // -i H(k): H = chi.k, (chi.k)v swaps blocks with i k x
    const Vec3c nu = -kI * (kI * cross_rc(k, l));
    const Vec3c nl = -kI * (kI * cross_rc(k, u));
    for (int c = 0; c < 3; ++c) {
      psidot.comp[std::size_t(c)][std::size_t(i)] = nu[c];
      psidot.comp[std::size_t(c + 3)][std::size_t(i)] = nl[c];
    }
  }
  grid.backward(psidot);

  std::array<Field6, 3> gradf;
  for (int d = 0; d < 3; ++d) {
    Field6 g = spec;
    for (int c = 0; c < 6; ++c)
      for (std::int64_t i = 0; i < g.size(); ++i)
        g.comp[std::size_t(c)][std::size_t(i)] *= kI * grid.wave_vector(i)[d];
    grid.backward(g);
    gradf[std::size_t(d)] = std::move(g);
  }

  // Y spectral: beta0 (1/w)(chi.khat) psi content = -conj-multiplier of X
  Field6 y = spec;
  frequency_inverse(grid, y, nullptr);
  // frequency_inverse gave -(i/w)(chi.khat); Y needs beta0 * (+1/w)(chi.khat)
  for (std::int64_t i = 0; i < y.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      y.comp[std::size_t(c)][std::size_t(i)] *= kI;        // * i, then beta0 upper +
      y.comp[std::size_t(c + 3)][std::size_t(i)] *= -kI;   // beta0 lower -
    }
  }
  grid.backward(y);

  // R = i beta^mu d_mu psi with the spectral time derivative (identically ~0)
  FourMomentum fm;
  cd h{}, lint{};
  Vec3c p = Vec3c::Zero();
  for (std::int64_t i = 0; i < s.psi.size(); ++i) {
    const Vec6c xv = x.at(i);
    const Vec6c pd = psidot.at(i);
    h += xv.dot(pd);
    for (int d = 0; d < 3; ++d) p[d] -= xv.dot(gradf[std::size_t(d)].at(i));
    Vec6c r = kI * (ms.beta0 * pd);
    for (int d = 0; d < 3; ++d) r += kI * (ms.beta[d] * gradf[std::size_t(d)].at(i));
    lint += y.at(i).dot(r);
  }
  fm.energy = (h * dv - lint * dv).real();
  fm.momentum = (p * dv).real();
  fm.lprime_integral_abs = std::abs(lint * dv);
  return fm;
}

Mat3c TransverseDelta::multiplier(const Vec3& k) const {
  const double k2 = k.squaredNorm();
  if (k2 == 0.0) return Mat3c::Identity();
  return Mat3c::Identity() - (k * k.transpose()).cast<cd>() / k2;
}

RealField3 TransverseDelta::apply(const RealField3& v) const {
  const auto n = v.size();
  std::array<std::vector<cd>, 3> w;
  for (int c = 0; c < 3; ++c) {
    w[std::size_t(c)].assign(std::size_t(n), cd{});
    for (std::int64_t i = 0; i < n; ++i)
      w[std::size_t(c)][std::size_t(i)] = v.comp[std::size_t(c)][std::size_t(i)];
    grid->forward(w[std::size_t(c)]);
  }
  for (std::int64_t i = 0; i < n; ++i) {
    const Mat3c m = multiplier(grid->wave_vector(i));
    const Vec3c in{w[0][std::size_t(i)], w[1][std::size_t(i)], w[2][std::size_t(i)]};
    const Vec3c out = m * in;
    for (int c = 0; c < 3; ++c) w[std::size_t(c)][std::size_t(i)] = out[c];
  }
  RealField3 out(n);
  for (int c = 0; c < 3; ++c) {
    grid->backward(w[std::size_t(c)]);
    for (std::int64_t i = 0; i < n; ++i)
      out.comp[std::size_t(c)][std::size_t(i)] = w[std::size_t(c)][std::size_t(i)].real();
  }
  return out;
}

TransverseDelta transverse_delta(const SpectralGrid& grid) { return {&grid}; }

void export_amplitudes(const std::string& path, const ModeAmplitudes& amps) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open amplitude export file: " + path);
  os << "n1,n2,n3,lambda,re_a,im_a,omega\n";
  char buf[128];
  for (const auto& [key, amp] : amps.a) {
    const double omega = amps.box.wave_vector(key.n).norm();
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%.17g,%.17g,%.17g\n", key.n[0], key.n[1],
                  key.n[2], key.lambda, amp.real(), amp.imag(), omega);
    os << buf;
  }
}

ModeAmplitudes random_transverse_amplitudes(const BoxSpec& box, int max_n, int n_modes,
                                            std::uint64_t seed) {
  box.validate();
  if (std::min({box.grid_points[0], box.grid_points[1], box.grid_points[2]}) < 4)
    throw ConfigError("grid too small to hold alias-free modes");
  Rng rng(seed);
  ModeAmplitudes amps;
  amps.box = box;
  int placed = 0;
  while (placed < n_modes) {
    std::array<int, 3> n{};
    for (int d = 0; d < 3; ++d) {
      const int cap = std::min(max_n, box.grid_points[d] / 2 - 1);
      n[d] = rng.uniform_int(-cap, cap);
    }
    if (n == std::array<int, 3>{0, 0, 0}) continue;
    const int lambda = rng.uniform() < 0.5 ? 1 : -1;
    ModeAmplitudes::Key key{n, lambda};
    if (amps.a.count(key)) continue;
    amps.a[key] = cd(rng.normal(), rng.normal());
    ++placed;
  }
  return amps;
}

ModeAmplitudes gaussian_packet_amplitudes(const BoxSpec& box, const Vec3& k_center,
                                          double sigma_x, const Vec3& x_center,
                                          int lambda) {
  box.validate();
  if (k_center.norm() == 0.0) throw ZeroWaveVector{};
  // A fixed carrier polarization keeps the spectral envelope smooth in k.
  // Writing the amplitudes directly in the helicity basis would wind the
  // basis phase around the polar axis and turn the Gaussian into a
  // power-law-tailed packet.
  const Vec3c carrier = polarization::circular(k_center, lambda);
  ModeAmplitudes amps;
  amps.box = box;
  for (int ix = 0; ix < box.grid_points[0]; ++ix)
    for (int iy = 0; iy < box.grid_points[1]; ++iy)
      for (int iz = 0; iz < box.grid_points[2]; ++iz) {
        const std::array<int, 3> n{box.mode_int(0, ix), box.mode_int(1, iy),
                                   box.mode_int(2, iz)};
        if ((n[0] == 0 && n[1] == 0 && n[2] == 0) || !box.alias_free(n)) continue;
        const Vec3 k = box.wave_vector(n);
        const double w = std::exp(-(k - k_center).squaredNorm() * sigma_x * sigma_x / 2);
        if (w < 1e-16) continue;
        for (int lam : {1, -1}) {
          const cd overlap = polarization::circular(k, lam).dot(carrier);
          if (std::abs(overlap) < 1e-16) continue;
          amps.a[{n, lam}] += w * overlap * std::exp(-kI * k.dot(x_center));
        }
      }
  return amps;
}

ActionCheckResult stationary_action_check(const BoxSpec& box, double t_extent,
                                          int n_time, std::uint64_t seed) {
  box.validate();
  if (!(t_extent > 0) || n_time <= 0 || n_time % 2 != 0)
    throw ConfigError("action check needs positive extent and even time points");

  Rng rng(seed);
  std::vector<ActionBasisElement> basis;
  while (basis.size() < 18) {
    ActionBasisElement e;
    for (int d = 0; d < 3; ++d) e.n[d] = rng.uniform_int(-2, 2);
    e.j = rng.uniform_int(-2, 2);
    e.spinor = rng.uniform_int(0, 5);
    const bool dup = std::any_of(basis.begin(), basis.end(), [&](const auto& o) {
      return o.n == e.n && o.j == e.j && o.spinor == e.spinor;
    });
    if (!dup) basis.push_back(e);
  }
  const int m = int(basis.size());
  Eigen::VectorXcd c(m);
  for (int i = 0; i < m; ++i) c[i] = cd(rng.normal(), rng.normal());

  const auto& ms = algebra::matrix_set();
  const double vt = box.volume() * t_extent;

  // exact quadratic form
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (basis[std::size_t(a)].n != basis[std::size_t(b)].n ||
          basis[std::size_t(a)].j != basis[std::size_t(b)].j)
        continue;
      const Vec3 k = box.wave_vector(basis[std::size_t(b)].n);
      const double nu = 2 * kPi * basis[std::size_t(b)].j / t_extent;
      Mat6c op = nu * ms.beta0;
      for (int d = 0; d < 3; ++d) op -= k[d] * ms.beta[d];
      g(a, b) = vt * (ms.beta0 * op)(basis[std::size_t(a)].spinor, basis[std::size_t(b)].spinor);
    }

  auto action_exact = [&](const Eigen::VectorXcd& coeff) -> cd {
    return (coeff.adjoint() * g * coeff)(0);
  };

  // spacetime Riemann sum of the same action
  auto action_grid = [&]() -> cd {
    cd acc{};
    const double dv = box.cell_volume();
    const double dt = t_extent / n_time;
    for (int it = 0; it < n_time; ++it) {
      const double t = it * dt;
      for (int ix = 0; ix < box.grid_points[0]; ++ix)
        for (int iy = 0; iy < box.grid_points[1]; ++iy)
          for (int iz = 0; iz < box.grid_points[2]; ++iz) {
            const Vec3 xx = box.coord(ix, iy, iz);
            Vec6c psi = Vec6c::Zero(), dpsi = Vec6c::Zero();
            std::array<Vec6c, 3> gr{Vec6c::Zero(), Vec6c::Zero(), Vec6c::Zero()};
            for (int a = 0; a < m; ++a) {
              const Vec3 k = box.wave_vector(basis[std::size_t(a)].n);
              const double nu = 2 * kPi * basis[std::size_t(a)].j / t_extent;
              const cd ph = c[a] * std::exp(kI * (k.dot(xx) - nu * t));
              psi[basis[std::size_t(a)].spinor] += ph;
              dpsi[basis[std::size_t(a)].spinor] += cd(0, -nu) * ph;
              for (int d = 0; d < 3; ++d)
                gr[std::size_t(d)][basis[std::size_t(a)].spinor] += cd(0, k[d]) * ph;
            }
            Vec6c op = kI * (ms.beta0 * dpsi);
            for (int d = 0; d < 3; ++d) op += kI * (ms.beta[d] * gr[std::size_t(d)]);
            acc += (ms.beta0 * psi).dot(op) * dv * dt;
          }
    }
    return acc;
  };

  ActionCheckResult res{};
  const cd a0 = action_exact(c);
  const cd ag = action_grid();
  res.grid_vs_exact_rel_error = std::abs(ag - a0) / std::max(1e-300, std::abs(a0));

  // finite-difference gradient with step scan and plateau selection
  const Eigen::VectorXcd gc = g * c;
  const Eigen::VectorXcd gtc = g.transpose() * c.conjugate();
  double worst = 0;
  for (int comp = 0; comp < m; ++comp) {
    for (int part = 0; part < 2; ++part) {
      const cd dir = part == 0 ? cd(1, 0) : cd(0, 1);
      const cd analytic = part == 0 ? gc[comp] + gtc[comp] : kI * (gtc[comp] - gc[comp]);
      const double steps[4] = {1e-4, 1e-5, 1e-6, 1e-7};
      cd fd[4];
      for (int si = 0; si < 4; ++si) {
        Eigen::VectorXcd cp = c, cm = c;
        cp[comp] += steps[si] * dir;
        cm[comp] -= steps[si] * dir;
        fd[si] = (action_exact(cp) - action_exact(cm)) / (2 * steps[si]);
      }
      int best = 0;
      double bestgap = std::abs(fd[1] - fd[0]);
      for (int si = 1; si < 3; ++si) {
        const double gap = std::abs(fd[si + 1] - fd[si]);
        if (gap < bestgap) {
          bestgap = gap;
          best = si;
        }
      }
      const cd plateau = 0.5 * (fd[best] + fd[best + 1]);
      const double scale = std::max(1.0, std::abs(analytic));
      worst = std::max(worst, std::abs(plateau - analytic) / scale);
    }
  }
  res.max_rel_gradient_error = worst;
  return res;
}

}  // namespace photonwave::observables
