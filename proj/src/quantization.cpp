#include "photonwave/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "photonwave/errors.hpp"

namespace photonwave::quantization {

namespace {
constexpr std::int64_t kMaxFockDim = 4096;

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

OperatorMatrix single_mode_lowering(int n_max) {
  OperatorMatrix a = OperatorMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

}  // namespace

std::int64_t FockModel::dimension() const {
  std::int64_t d = 1;
  for (int nm : n_max) d *= nm + 1;
  return d;
}

void FockModel::validate() const {
  if (fock_modes.empty()) throw ConfigError("Fock model needs at least one mode");
  if (n_max.size() != fock_modes.size())
    throw ConfigError("one cutoff per mode required");
  for (const auto& m : fock_modes) {
    if (m.lambda != 1 && m.lambda != -1)
      throw ConfigError("Fock modes carry lambda = +-1 only");
    if (m.n == std::array<int, 3>{0, 0, 0}) throw ZeroWaveVector{};
  }
  for (int nm : n_max)
    if (nm < 1) throw ConfigError("n_max must be >= 1");
  for (std::size_t i = 0; i < fock_modes.size(); ++i)
    for (std::size_t j = i + 1; j < fock_modes.size(); ++j)
      if (fock_modes[i].n == fock_modes[j].n &&
          fock_modes[i].lambda == fock_modes[j].lambda)
        throw ConfigError("duplicate mode in the Fock model");
  if (dimension() > kMaxFockDim)
    throw BudgetExceeded("Fock dimension beyond the desk-scale cap");
}

FockModel make_fock_model(const BoxSpec& box,
                          const std::vector<std::pair<std::array<int, 3>, int>>& modes,
                          int n_max_all) {
  FockModel model;
  for (const auto& [n, lambda] : modes) model.fock_modes.push_back({box, n, lambda});
  std::sort(model.fock_modes.begin(), model.fock_modes.end(),
            [](const FockModel::Mode& a, const FockModel::Mode& b) {
              return std::tie(a.n, a.lambda) < std::tie(b.n, b.lambda);
            });
  model.n_max.assign(model.fock_modes.size(), n_max_all);
  model.validate();
  return model;
}

std::vector<LadderPair> ladder_operators(const FockModel& model) {
  model.validate();
  const int m = int(model.fock_modes.size());
  std::vector<LadderPair> out;
  out.reserve(std::size_t(m));
  for (int target = 0; target < m; ++target) {
    OperatorMatrix op = OperatorMatrix::Identity(1, 1);
    for (int i = 0; i < m; ++i) {
      const int d = model.n_max[std::size_t(i)] + 1;
      op = kron(op, i == target ? single_mode_lowering(model.n_max[std::size_t(i)])
                                : OperatorMatrix::Identity(d, d));
    }
    out.push_back({op, op.adjoint()});
  }
  return out;
}

OperatorMatrix hamiltonian_operator(const FockModel& model) {
  const auto ladders = ladder_operators(model);
  const auto dim = model.dimension();
  OperatorMatrix h = OperatorMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < ladders.size(); ++i) {
    const double w = model.fock_modes[i].omega();
    h += w * (ladders[i].a_dagger * ladders[i].a +
              0.5 * OperatorMatrix::Identity(dim, dim));
  }
  return h;
}

std::array<OperatorMatrix, 3> momentum_operators(const FockModel& model) {
  const auto ladders = ladder_operators(model);
  const auto dim = model.dimension();
  std::array<OperatorMatrix, 3> p{OperatorMatrix::Zero(dim, dim),
                                  OperatorMatrix::Zero(dim, dim),
                                  OperatorMatrix::Zero(dim, dim)};
  for (std::size_t i = 0; i < ladders.size(); ++i) {
    const Vec3 k = model.fock_modes[i].box.wave_vector(model.fock_modes[i].n);
    const OperatorMatrix num = ladders[i].a_dagger * ladders[i].a;
    for (int d = 0; d < 3; ++d) p[std::size_t(d)] += k[d] * num;
  }
  return p;
}

std::vector<SpectrumRow> spectrum(const FockModel& model) {
  model.validate();
  // H is diagonal in the occupation basis; enumerate labels in kron order
  const int m = int(model.fock_modes.size());
  std::vector<SpectrumRow> rows;
  rows.reserve(std::size_t(model.dimension()));
  std::vector<int> occ(std::size_t(m), 0);
  while (true) {
    double e = 0;
    for (int i = 0; i < m; ++i)
      e += model.fock_modes[std::size_t(i)].omega() * (occ[std::size_t(i)] + 0.5);
    rows.push_back({occ, e});
    int i = m - 1;
    while (i >= 0 && occ[std::size_t(i)] == model.n_max[std::size_t(i)]) {
      occ[std::size_t(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++occ[std::size_t(i)];
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SpectrumRow& a, const SpectrumRow& b) { return a.energy < b.energy; });
  return rows;
}

void export_spectrum(const std::string& path, const FockModel& model) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open spectrum export file: " + path);
  os << "occupations,energy\n";
  char buf[64];
  for (const auto& row : spectrum(model)) {
    std::string occ;
    for (std::size_t i = 0; i < row.occupations.size(); ++i) {
      if (i) occ += ' ';
      occ += std::to_string(row.occupations[i]);
    }
    std::snprintf(buf, sizeof buf, ",%.17g\n", row.energy);
    os << occ << buf;
  }
}

namespace {

// positive-frequency mode function and its Hermitian-pairing partner
Vec6c mode_fn(const FockModel::Mode& m, const Vec3& x, double t) {
  modes::ModeSpec spec{m.box, m.n, m.lambda, +1};
  return modes::mode_field(spec, x, t);
}

Vec6c partner_fn(const FockModel::Mode& m, const Vec3& x, double t) {
  // beta0 * conj(phi): keeps E and B Hermitian as operators
  const Vec6c phi = mode_fn(m, x, t);
  Vec6c p;
  p.head<3>() = phi.head<3>().conjugate();
  p.tail<3>() = -phi.tail<3>().conjugate();
  return p;
}

}  // namespace

double heisenberg_evolution_check(const FockModel& model,
                                  const std::vector<Vec3>& sample_points) {
  model.validate();
  const auto ladders = ladder_operators(model);
  const OperatorMatrix h = hamiltonian_operator(model);
  const double t = 0.37;  // arbitrary fixed instant

  double worst = 0, scale = 0;
  for (const Vec3& x : sample_points) {
    for (int comp = 0; comp < 6; ++comp) {
      const auto dim = model.dimension();
      OperatorMatrix psi_op = OperatorMatrix::Zero(dim, dim);
      OperatorMatrix dpsi_op = OperatorMatrix::Zero(dim, dim);
      for (std::size_t i = 0; i < ladders.size(); ++i) {
        const auto& m = model.fock_modes[i];
        const double w = m.omega();
        const cd phi_c = mode_fn(m, x, t)[comp] / std::sqrt(2.0);
        const cd pac = partner_fn(m, x, t)[comp] / std::sqrt(2.0);
        psi_op += phi_c * ladders[i].a + pac * ladders[i].a_dagger;
        dpsi_op += cd(0, -w) * phi_c * ladders[i].a + cd(0, w) * pac * ladders[i].a_dagger;
      }
      const OperatorMatrix resid = kI * (h * psi_op - psi_op * h) - dpsi_op;
      worst = std::max(worst, resid.cwiseAbs().maxCoeff());
      scale = std::max(scale, psi_op.cwiseAbs().maxCoeff());
    }
  }
  return scale > 0 ? worst / scale : worst;
}

namespace {

// Precomputed per-mode spinor projectors for the c-number commutator sum;
// modes restricted to |n_i| <= cutoff (and alias-free).
struct CommutatorSum {
  struct Entry {
    Vec3 k;
    Mat6c f_outer;  // sum_lambda f f^dag
    Mat6c g_outer;  // sum_lambda g g^dag
    Mat6c pt6;      // I2 (x) (I - khat khat^T)
  };
  std::vector<Entry> entries;
  double volume;

  CommutatorSum(const BoxSpec& box, int cutoff) : volume(box.volume()) {
    for (int n0 = -cutoff; n0 <= cutoff; ++n0)
      for (int n1 = -cutoff; n1 <= cutoff; ++n1)
        for (int n2 = -cutoff; n2 <= cutoff; ++n2) {
          const std::array<int, 3> n{n0, n1, n2};
          if (n == std::array<int, 3>{0, 0, 0} || !box.alias_free(n)) continue;
          Entry e;
          e.k = box.wave_vector(n);
          e.f_outer.setZero();
          e.g_outer.setZero();
          for (int lambda : {1, -1}) {
            const Vec6c f = modes::f_spinor(e.k, lambda);
            const Vec6c g = modes::g_spinor(e.k, lambda);
            e.f_outer += f * f.adjoint();
            e.g_outer += g * g.adjoint();
          }
          const Vec3 khat = e.k / e.k.norm();
          const Mat3c pt = Mat3c::Identity() - (khat * khat.transpose()).cast<cd>();
          e.pt6.setZero();
          e.pt6.block<3, 3>(0, 0) = pt;
          e.pt6.block<3, 3>(3, 3) = pt;
          entries.push_back(std::move(e));
        }
  }

  // [psi_i(x), pi_j(x')] at displacement dx = x - x', and the band-limited
  // transverse-delta reference (i/2) I2 (x) delta_T(dx)
  void eval(const Vec3& dx, Mat6c& comm, Mat6c& delta_ref) const {
    comm.setZero();
    delta_ref.setZero();
    for (const auto& e : entries) {
      const cd eplus = std::exp(kI * e.k.dot(dx));
      comm += eplus * e.f_outer + std::conj(eplus) * e.g_outer;
      delta_ref += eplus * e.pt6;
    }
    comm *= kI / (2 * volume);
    delta_ref *= kI / (2 * volume);
  }
};

int full_cutoff(const BoxSpec& box) {
  return std::min({box.grid_points[0], box.grid_points[1], box.grid_points[2]}) / 2 - 1;
}

}  // namespace

CommutatorCheck field_commutator_check(const BoxSpec& box, int mode_cutoff) {
  box.validate();
  if (mode_cutoff < 1 || mode_cutoff > full_cutoff(box))
    throw ConfigError("mode cutoff outside the alias-free range");

  const CommutatorSum sum(box, mode_cutoff);
  CommutatorCheck res{0, 0, 0, 0};
  Mat6c comm, ref;
  for (int ix = 0; ix < box.grid_points[0]; ++ix)
    for (int iy = 0; iy < box.grid_points[1]; ++iy)
      for (int iz = 0; iz < box.grid_points[2]; ++iz) {
        const Vec3 dx = box.coord(ix, iy, iz);
        sum.eval(dx, comm, ref);
        res.delta_scale = std::max(res.delta_scale, ref.cwiseAbs().maxCoeff());
        res.max_deviation = std::max(
            res.max_deviation,
            std::max((comm.block<3, 3>(0, 0) - ref.block<3, 3>(0, 0)).cwiseAbs().maxCoeff(),
                     (comm.block<3, 3>(3, 3) - ref.block<3, 3>(3, 3)).cwiseAbs().maxCoeff()));
        res.max_cross_block =
            std::max({res.max_cross_block, comm.block<3, 3>(0, 3).cwiseAbs().maxCoeff(),
                      comm.block<3, 3>(3, 0).cwiseAbs().maxCoeff()});
      }

  // translation invariance: the double expansion at (x, x') depends on the
  // displacement only
  {
    const Vec3 dx = box.coord(1, 2, 1);
    Mat6c ref_dx, dummy;
    sum.eval(dx, ref_dx, dummy);
    for (const Vec3& base :
         {box.coord(0, 0, 0), box.coord(2, 1, 3), box.coord(3, 3, 2)}) {
      Mat6c at_pair = Mat6c::Zero();
      for (const auto& e : sum.entries) {
        const Vec3 x = base + dx, xp = base;
        at_pair += std::exp(kI * e.k.dot(x)) * std::exp(-kI * e.k.dot(xp)) * e.f_outer +
                   std::exp(-kI * e.k.dot(x)) * std::exp(kI * e.k.dot(xp)) * e.g_outer;
      }
      at_pair *= kI / (2 * sum.volume);
      res.translation_residual =
          std::max(res.translation_residual, (at_pair - ref_dx).cwiseAbs().maxCoeff());
    }
  }
  return res;
}

namespace {

void cutoff_deviation_scan(const BoxSpec& box, int cutoff, double& l2, double& maxnorm) {
  const CommutatorSum part(box, cutoff);
  const CommutatorSum full(box, full_cutoff(box));
  double sum = 0, worst = 0;
  Mat6c a, b, dummy;
  for (int ix = 0; ix < box.grid_points[0]; ++ix)
    for (int iy = 0; iy < box.grid_points[1]; ++iy)
      for (int iz = 0; iz < box.grid_points[2]; ++iz) {
        const Vec3 dx = box.coord(ix, iy, iz);
        part.eval(dx, a, dummy);
        full.eval(dx, b, dummy);
        sum += (a - b).squaredNorm();
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
      }
  l2 = std::sqrt(sum * box.cell_volume());
  maxnorm = worst;
}

}  // namespace

double commutator_cutoff_deviation(const BoxSpec& box, int cutoff) {
  double l2, mx;
  cutoff_deviation_scan(box, cutoff, l2, mx);
  return l2;
}

double commutator_cutoff_deviation_max(const BoxSpec& box, int cutoff) {
  double l2, mx;
  cutoff_deviation_scan(box, cutoff, l2, mx);
  return mx;
}

Mat6c vacuum_two_point(const FockModel& model, const Vec3& x, const Vec3& xp,
                       double t, double tp) {
  model.validate();
  Mat6c s = Mat6c::Zero();
  for (const auto& m : model.fock_modes) {
    const Vec6c phi = mode_fn(m, x, t);
    const Vec6c phip = mode_fn(m, xp, tp);
    s += 0.5 * phi * phip.adjoint();
  }
  return s;
}

}  // namespace photonwave::quantization
