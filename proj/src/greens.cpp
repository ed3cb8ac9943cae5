#include "photonwave/greens.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "photonwave/algebra.hpp"
#include "photonwave/errors.hpp"

namespace photonwave::greens {

cd scalar_propagator_multiplier(const FourVector& k4, double epsilon) {
  if (!(epsilon > 0)) throw ConfigError("epsilon must be positive");
  return kI / (cd(k4.squared()) + cd(0, epsilon));
}

Mat6c momentum_symbol(const FourVector& k4) {
  const auto& ms = algebra::matrix_set();
  Mat6c m = k4.omega * ms.beta0;
  for (int i = 0; i < 3; ++i) m -= k4.k[i] * ms.beta[i];
  return m;
}

Mat6c transverse_delta_hat(const Vec3& k) {
  const double kn2 = k.squaredNorm();
  if (kn2 == 0.0) throw ZeroSpatialK{};
  const Mat3c pt = Mat3c::Identity() - (k * k.transpose()).cast<cd>() / kn2;
  Mat6c d = Mat6c::Zero();
  d.block<3, 3>(0, 0) = pt;
  d.block<3, 3>(3, 3) = pt;
  return d;
}

Mat6c omega_hat(const Vec3& k) {
  const Mat3c kk = (k * k.transpose()).cast<cd>();
  Mat6c o = Mat6c::Zero();
  o.block<3, 3>(0, 0) = kk;
  o.block<3, 3>(3, 3) = kk;
  return o;
}

Mat6c transverse_green_multiplier(const FourVector& k4, double epsilon) {
  return momentum_symbol(k4) * transverse_delta_hat(k4.k) *
         scalar_propagator_multiplier(k4, epsilon);
}

double green_defining_residual(const FourVector& k4, double epsilon) {
  const Mat6c rt = transverse_green_multiplier(k4, epsilon) / kI;
  const cd factor = cd(k4.squared()) / (cd(k4.squared()) + cd(0, epsilon));
  const Mat6c expect = factor * transverse_delta_hat(k4.k);
  return (momentum_symbol(k4) * rt - expect).cwiseAbs().maxCoeff();
}

void PropagatorLattice::validate() const {
  if (n_t <= 0 || n_t % 2 != 0) throw ConfigError("n_t must be positive and even");
  for (int d = 0; d < 3; ++d)
    if (n_x[std::size_t(d)] <= 0 || n_x[std::size_t(d)] % 2 != 0)
      throw ConfigError("lattice dims must be positive and even");
  if (!(t_extent > 0)) throw ConfigError("t extent must be positive");
  for (double l : lengths)
    if (!(l > 0)) throw ConfigError("lattice lengths must be positive");
  if (!(epsilon > 0)) throw ConfigError("epsilon must be positive");
  if (total_points() > (1 << 20))
    throw BudgetExceeded("lattice beyond the desk-scale cap of 2^20 points");
  if (min_abs_k2() < 1e-6)
    throw ConfigError("lattice extents put a nonzero mode on the light cone");
}

std::int64_t PropagatorLattice::total_points() const {
  return std::int64_t(n_t) * n_x[0] * n_x[1] * n_x[2];
}

namespace {
int signed_mode(int bin, int n) { return bin < n / 2 ? bin : bin - n; }
}  // namespace

double PropagatorLattice::min_abs_k2() const {
  double best = 1e300;
  for (int jt = 0; jt < n_t; ++jt)
    for (int jx = 0; jx < n_x[0]; ++jx)
      for (int jy = 0; jy < n_x[1]; ++jy)
        for (int jz = 0; jz < n_x[2]; ++jz) {
          if (jt == 0 && jx == 0 && jy == 0 && jz == 0) continue;
          const double w = 2 * kPi * signed_mode(jt, n_t) / t_extent;
          const Vec3 k{2 * kPi * signed_mode(jx, n_x[0]) / lengths[0],
                       2 * kPi * signed_mode(jy, n_x[1]) / lengths[1],
                       2 * kPi * signed_mode(jz, n_x[2]) / lengths[2]};
          best = std::min(best, std::abs(w * w - k.squaredNorm()));
        }
  return best;
}

LatticePropagator position_space_propagator(const PropagatorLattice& lattice) {
  lattice.validate();
  const std::int64_t total = lattice.total_points();

  LatticePropagator out;
  out.lattice = lattice;
  out.zero_modes_excluded = 1;  // the k4 = 0 bin

  // momentum-space multipliers; iDelta(x) = (1/(T V)) sum i/(k^2+i eps) e^{-ik.x}
  // with e^{-ik.x} = e^{-i w t} e^{+i k.x}; the t-transform therefore uses the
  // opposite FFT sign from the spatial ones, realized by conjugating the w bin.
  const auto n_total = static_cast<std::size_t>(total);
  std::vector<cd> mult(n_total);
  std::vector<cd> d2mult(n_total);   // multiplier after applying d^2
  std::vector<cd> deltamult(n_total);
  std::int64_t idx = 0;
  for (int jt = 0; jt < lattice.n_t; ++jt)
    for (int jx = 0; jx < lattice.n_x[0]; ++jx)
      for (int jy = 0; jy < lattice.n_x[1]; ++jy)
        for (int jz = 0; jz < lattice.n_x[2]; ++jz, ++idx) {
          const bool zero = jt == 0 && jx == 0 && jy == 0 && jz == 0;
          const double w = 2 * kPi * signed_mode(jt, lattice.n_t) / lattice.t_extent;
          const Vec3 k{2 * kPi * signed_mode(jx, lattice.n_x[0]) / lattice.lengths[0],
                       2 * kPi * signed_mode(jy, lattice.n_x[1]) / lattice.lengths[1],
                       2 * kPi * signed_mode(jz, lattice.n_x[2]) / lattice.lengths[2]};
          const double k2 = w * w - k.squaredNorm();
          const cd prop = zero ? cd(0) : kI / (cd(k2) + cd(0, lattice.epsilon));
          mult[std::size_t(idx)] = prop;
          d2mult[std::size_t(idx)] = -k2 * prop;  // d^2 -> -k^2
          deltamult[std::size_t(idx)] = zero ? cd(0) : cd(-kI);  // target -i delta4
        }

  // inverse 4D transform: backward FFT gives e^{+i(w t + k.x)}; flip the time
  // axis afterwards to realize e^{-i w t} e^{+i k.x}.
  auto to_position = [&](std::vector<cd>& data) {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan =
        fftw_plan_dft(4,
                      std::array<int, 4>{lattice.n_t, lattice.n_x[0], lattice.n_x[1],
                                         lattice.n_x[2]}
                          .data(),
                      p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_execute_dft(plan, p, p);
    fftw_destroy_plan(plan);
    const double norm = 1.0 / (lattice.t_extent * lattice.lengths[0] *
                               lattice.lengths[1] * lattice.lengths[2]);
    for (cd& z : data) z *= norm;
    // time-axis flip: bin jt -> (n_t - jt) mod n_t
    const std::int64_t stride =
        std::int64_t(lattice.n_x[0]) * lattice.n_x[1] * lattice.n_x[2];
    std::vector<cd> tmp = data;
    for (int jt = 0; jt < lattice.n_t; ++jt) {
      const int src = (lattice.n_t - jt) % lattice.n_t;
      std::copy(tmp.begin() + src * stride, tmp.begin() + (src + 1) * stride,
                data.begin() + jt * stride);
    }
  };

  out.delta = mult;
  to_position(out.delta);
  std::vector<cd> d2field = d2mult;
  to_position(d2field);
  std::vector<cd> deltafield = deltamult;
  to_position(deltafield);

  double worst = 0, scale = 0;
  for (std::size_t i = 0; i < d2field.size(); ++i) {
    worst = std::max(worst, std::abs(d2field[i] - deltafield[i]));
    scale = std::max(scale, std::abs(deltafield[i]));
  }
  out.dalembert_residual = worst / scale;

  // parity: Delta(-x) with all four axes reflected
  double pworst = 0, pscale = 0;
  idx = 0;
  auto at = [&](int jt, int jx, int jy, int jz) {
    return out.delta[std::size_t(
        ((std::int64_t(jt) * lattice.n_x[0] + jx) * lattice.n_x[1] + jy) *
            lattice.n_x[2] +
        jz)];
  };
  for (int jt = 0; jt < lattice.n_t; ++jt)
    for (int jx = 0; jx < lattice.n_x[0]; ++jx)
      for (int jy = 0; jy < lattice.n_x[1]; ++jy)
        for (int jz = 0; jz < lattice.n_x[2]; ++jz) {
          const cd a = at(jt, jx, jy, jz);
          const cd b = at((lattice.n_t - jt) % lattice.n_t,
                          (lattice.n_x[0] - jx) % lattice.n_x[0],
                          (lattice.n_x[1] - jy) % lattice.n_x[1],
                          (lattice.n_x[2] - jz) % lattice.n_x[2]);
          pworst = std::max(pworst, std::abs(a - b));
          pscale = std::max(pscale, std::abs(a));
        }
  out.parity_residual = pworst / pscale;
  return out;
}

void export_propagator(const std::string& path, const LatticePropagator& p) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open propagator export file: " + path);
  os << "it,ix,iy,iz,t,x,y,z,re,im\n";
  char buf[256];
  std::int64_t idx = 0;
  for (int jt = 0; jt < p.lattice.n_t; ++jt)
    for (int jx = 0; jx < p.lattice.n_x[0]; ++jx)
      for (int jy = 0; jy < p.lattice.n_x[1]; ++jy)
        for (int jz = 0; jz < p.lattice.n_x[2]; ++jz, ++idx) {
          const double t = jt * p.lattice.t_extent / p.lattice.n_t;
          const double x = jx * p.lattice.lengths[0] / p.lattice.n_x[0];
          const double y = jy * p.lattice.lengths[1] / p.lattice.n_x[1];
          const double z = jz * p.lattice.lengths[2] / p.lattice.n_x[2];
          const cd v = p.delta[std::size_t(idx)];
          std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                        jt, jx, jy, jz, t, x, y, z, v.real(), v.imag());
          os << buf;
        }
}

}  // namespace photonwave::greens
