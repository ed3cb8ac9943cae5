#include "photonwave/dynamics.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "photonwave/algebra.hpp"
#include "photonwave/errors.hpp"
#include "photonwave/parallel.hpp"

namespace photonwave::dynamics {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

FieldState from_EB(const BoxSpec& box, const RealField3& e, const RealField3& b,
                   double time) {
  box.validate();
  if (e.size() != box.num_points() || b.size() != box.num_points())
    throw ShapeMismatch("E/B field size does not match the grid");
  FieldState s{box, Field6(box.num_points()), time};
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < e.comp[std::size_t(c)].size(); ++i) {
      s.psi.comp[std::size_t(c)][i] = e.comp[std::size_t(c)][i] / kSqrt2;
      s.psi.comp[std::size_t(c + 3)][i] = cd(0, b.comp[std::size_t(c)][i] / kSqrt2);
    }
  return s;
}

EBFields to_EB(const FieldState& s) {
  EBFields out;
  out.e = RealField3(s.psi.size());
  out.b = RealField3(s.psi.size());
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < s.psi.comp[std::size_t(c)].size(); ++i) {
      const cd ec = kSqrt2 * s.psi.comp[std::size_t(c)][i];
      const cd bc = -kI * kSqrt2 * s.psi.comp[std::size_t(c + 3)][i];
      out.e.comp[std::size_t(c)][i] = ec.real();
      out.b.comp[std::size_t(c)][i] = bc.real();
      out.max_imag = std::max({out.max_imag, std::abs(ec.imag()), std::abs(bc.imag())});
    }
  return out;
}

namespace {

// exp(-i (chi.k) t) v, using (chi.k)^2 = |k|^2 P_T6 and (chi.khat) as a
// block-swapped curl: U v = v + (cos-1) P_T6 v + sin * (khat x swap) v.
void apply_propagator(const Vec3& k, double t, Vec3c& upper, Vec3c& lower) {
  const double w = k.norm();
  if (w == 0.0) return;
  const Vec3 khat = k / w;
  const double c = std::cos(w * t), s = std::sin(w * t);
  const Vec3c pu = upper - khat.cast<cd>() * (khat[0] * upper[0] + khat[1] * upper[1] +
                                              khat[2] * upper[2]);
  const Vec3c pl = lower - khat.cast<cd>() * (khat[0] * lower[0] + khat[1] * lower[1] +
                                              khat[2] * lower[2]);
  const Vec3c nu = upper + (c - 1.0) * pu + s * cross_rc(khat, lower);
  const Vec3c nl = lower + (c - 1.0) * pl + s * cross_rc(khat, upper);
  upper = nu;
  lower = nl;
}

}  // namespace

FieldState evolve_spectral(const SpectralGrid& grid, const FieldState& s, double duration) {
  if (!(grid.box() == s.box)) throw MixedBox{};
  FieldState out = s;
  grid.forward(out.psi);
  parallel_for(out.psi.size(), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      Vec3c upper, lower;
      for (int c = 0; c < 3; ++c) {
        upper[c] = out.psi.comp[std::size_t(c)][std::size_t(i)];
        lower[c] = out.psi.comp[std::size_t(c + 3)][std::size_t(i)];
      }
      apply_propagator(grid.wave_vector(i), duration, upper, lower);
      for (int c = 0; c < 3; ++c) {
        out.psi.comp[std::size_t(c)][std::size_t(i)] = upper[c];
        out.psi.comp[std::size_t(c + 3)][std::size_t(i)] = lower[c];
      }
    }
  });
  grid.backward(out.psi);
  out.time = s.time + duration;
  return out;
}

namespace {

// curl via the multiplier i k x, real fields in and out
RealField3 spectral_curl(const SpectralGrid& grid, const RealField3& f) {
  const auto n = f.size();
  std::array<std::vector<cd>, 3> w;
  for (int c = 0; c < 3; ++c) {
    w[std::size_t(c)].resize(std::size_t(n));
    for (std::int64_t i = 0; i < n; ++i)
      w[std::size_t(c)][std::size_t(i)] = f.comp[std::size_t(c)][std::size_t(i)];
    grid.forward(w[std::size_t(c)]);
  }
  std::array<std::vector<cd>, 3> r;
  for (auto& c : r) c.assign(std::size_t(n), cd{});
  for (std::int64_t i = 0; i < n; ++i) {
    const Vec3& k = grid.wave_vector(i);
    const Vec3c v{w[0][std::size_t(i)], w[1][std::size_t(i)], w[2][std::size_t(i)]};
    const Vec3c c = kI * cross_rc(k, v);
    for (int d = 0; d < 3; ++d) r[std::size_t(d)][std::size_t(i)] = c[d];
  }
  RealField3 out(n);
  for (int c = 0; c < 3; ++c) {
    grid.backward(r[std::size_t(c)]);
    for (std::int64_t i = 0; i < n; ++i)
      out.comp[std::size_t(c)][std::size_t(i)] = r[std::size_t(c)][std::size_t(i)].real();
  }
  return out;
}

void axpy(RealField3& y, double a, const RealField3& x) {
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < y.comp[std::size_t(c)].size(); ++i)
      y.comp[std::size_t(c)][i] += a * x.comp[std::size_t(c)][i];
}

}  // namespace

void evolve_curl(const SpectralGrid& grid, RealField3& e, RealField3& b, double dt,
                 int steps) {
  const BoxSpec& box = grid.box();
  if (e.size() != box.num_points() || b.size() != box.num_points())
    throw ShapeMismatch("E/B field size does not match the grid");
  const double bound = 2.0 / box.max_frequency();
  if (!(dt > 0.0) || dt > bound)
    throw UnstableStep("dt exceeds the leapfrog stability bound 2/omega_max");

  // stagger B to t + dt/2, leapfrog, then unstagger
  RealField3 bh = b;
  axpy(bh, -dt / 2, spectral_curl(grid, e));
  for (int s = 0; s < steps; ++s) {
    axpy(e, dt, spectral_curl(grid, bh));
    if (s + 1 < steps) axpy(bh, -dt, spectral_curl(grid, e));
  }
  b = bh;
  axpy(b, -dt / 2, spectral_curl(grid, e));
}

Field6 omega_apply(const SpectralGrid& grid, const Field6& f) {
  Field6 w = f;
  grid.forward(w);
  const auto n = w.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const Vec3 k = grid.wave_vector(i);
    for (int blk = 0; blk < 2; ++blk) {
      cd kv{};
      for (int c = 0; c < 3; ++c) kv += k[c] * w.comp[std::size_t(3 * blk + c)][std::size_t(i)];
      for (int c = 0; c < 3; ++c)
        w.comp[std::size_t(3 * blk + c)][std::size_t(i)] = -k[c] * kv;
    }
  }
  grid.backward(w);
  return w;
}

double transversality_residual(const SpectralGrid& grid, const FieldState& s) {
  const double nrm = s.grid_norm();
  if (nrm == 0.0) return 0.0;
  Field6 r = omega_apply(grid, s.psi);
  return std::sqrt(r.squared_norm()) / nrm;
}

ConservedRow conserved_quantities(const SpectralGrid& grid, const FieldState& s) {
  ConservedRow row;
  row.time = s.time;
  const BoxSpec& box = s.box;
  const double dv = box.cell_volume();

  row.energy = s.psi.squared_norm() * dv;

  // Re(conj(E) x B); reduces to E x B for real fields and stays conserved
  // for complex (positive-frequency) states
  Vec3 p = Vec3::Zero();
  for (std::int64_t i = 0; i < s.psi.size(); ++i) {
    const Vec6c v = s.psi.at(i);
    const Vec3c e = std::sqrt(2.0) * v.head<3>();
    const Vec3c b = -kI * std::sqrt(2.0) * v.tail<3>();
    const Vec3c ec = e.conjugate();
    p += Vec3{(ec[1] * b[2] - ec[2] * b[1]).real(),
              (ec[2] * b[0] - ec[0] * b[2]).real(),
              (ec[0] * b[1] - ec[1] * b[0]).real()};
  }
  row.momentum = p * dv;

  // <L+S>: spectral gradient first, then the pointwise x-cross about the center
  Field6 grad[3];
  {
    Field6 w = s.psi;
    grid.forward(w);
    for (int d = 0; d < 3; ++d) {
      grad[d] = w;
      for (int c = 0; c < 6; ++c)
        for (std::int64_t i = 0; i < w.size(); ++i)
          grad[d].comp[std::size_t(c)][std::size_t(i)] *= kI * grid.wave_vector(i)[d];
      grid.backward(grad[d]);
    }
  }
  const auto& ms = algebra::matrix_set();
  Vec3c j = Vec3c::Zero();
  for (int ix = 0; ix < box.grid_points[0]; ++ix)
    for (int iy = 0; iy < box.grid_points[1]; ++iy)
      for (int iz = 0; iz < box.grid_points[2]; ++iz) {
        const auto i = box.index(ix, iy, iz);
        const Vec3 xc = box.coord(ix, iy, iz) - box.center();
        const Vec6c psi = s.psi.at(i);
        for (int n = 0; n < 3; ++n) {
          Vec6c op = ms.spin[n] * psi;
          for (int a = 0; a < 3; ++a)
            for (int bdx = 0; bdx < 3; ++bdx) {
              const int e = levi_civita(n, a, bdx);
              if (e != 0) op += cd(0, -double(e)) * xc[a] * grad[bdx].at(i);
            }
          j[n] += psi.dot(op);
        }
      }
  row.angular_momentum = (j * dv).real();

  row.transversality = transversality_residual(grid, s);

  // boundary shell mass fraction
  double shell = 0, total = 0;
  for (int ix = 0; ix < box.grid_points[0]; ++ix)
    for (int iy = 0; iy < box.grid_points[1]; ++iy)
      for (int iz = 0; iz < box.grid_points[2]; ++iz) {
        const auto i = box.index(ix, iy, iz);
        const double m = s.psi.at(i).squaredNorm();
        total += m;
        const bool edge = ix == 0 || iy == 0 || iz == 0 ||
                          ix == box.grid_points[0] - 1 || iy == box.grid_points[1] - 1 ||
                          iz == box.grid_points[2] - 1;
        if (edge) shell += m;
      }
  row.boundary_mass = total > 0 ? shell / total : 0.0;
  row.angular_momentum_reliable = row.boundary_mass <= 1e-6;
  return row;
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& os, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

}  // namespace

void write_snapshot(std::ostream& os, const FieldState& s) {
  for (int d = 0; d < 3; ++d) put_u32(os, std::uint32_t(s.box.grid_points[d]));
  for (int d = 0; d < 3; ++d) put_f64(os, s.box.lengths[d]);
  put_f64(os, s.time);
  for (std::int64_t i = 0; i < s.psi.size(); ++i)
    for (int c = 0; c < 6; ++c) {
      const cd z = s.psi.comp[std::size_t(c)][std::size_t(i)];
      put_f64(os, z.real());
      put_f64(os, z.imag());
    }
}

FieldState read_snapshot(std::istream& is) {
  FieldState s;
  for (int d = 0; d < 3; ++d) s.box.grid_points[d] = int(get_u32(is));
  for (int d = 0; d < 3; ++d) s.box.lengths[d] = get_f64(is);
  s.time = get_f64(is);
  s.box.validate();
  s.psi = Field6(s.box.num_points());
  for (std::int64_t i = 0; i < s.psi.size(); ++i)
    for (int c = 0; c < 6; ++c) {
      const double re = get_f64(is), im = get_f64(is);
      s.psi.comp[std::size_t(c)][std::size_t(i)] = cd(re, im);
    }
  if (!is) throw Error("snapshot stream truncated");
  return s;
}

void write_snapshot_file(const std::string& path, const FieldState& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open snapshot file for writing: " + path);
  write_snapshot(os, s);
}

FieldState read_snapshot_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open snapshot file: " + path);
  return read_snapshot(is);
}

}  // namespace photonwave::dynamics
