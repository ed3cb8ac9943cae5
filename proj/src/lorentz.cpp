#include "photonwave/lorentz.hpp"

#include <cmath>

#include "photonwave/algebra.hpp"
#include "photonwave/errors.hpp"

namespace photonwave::lorentz {

void InfinitesimalLorentz::validate() const {
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      if (eps[std::size_t(mu)][std::size_t(nu)] !=
          -eps[std::size_t(nu)][std::size_t(mu)])
        throw ConfigError("eps must be antisymmetric");
      if (std::abs(eps[std::size_t(mu)][std::size_t(nu)]) > 1e-2)
        throw ConfigError("|eps| must stay <= 1e-2 for first-order validity");
    }
}

InfinitesimalLorentz InfinitesimalLorentz::rotation(int axis, double angle) {
  // rotation about `axis`: eps^{lm} = -angle * eps_{lmn} n_axis (spatial pair)
  InfinitesimalLorentz t{};
  const int l = (axis + 1) % 3, m = (axis + 2) % 3;
  t.eps[std::size_t(l + 1)][std::size_t(m + 1)] = angle;
  t.eps[std::size_t(m + 1)][std::size_t(l + 1)] = -angle;
  return t;
}

InfinitesimalLorentz InfinitesimalLorentz::boost(int axis, double rapidity) {
  InfinitesimalLorentz t{};
  t.eps[0][std::size_t(axis + 1)] = rapidity;
  t.eps[std::size_t(axis + 1)][0] = -rapidity;
  return t;
}

Mat6c transform_matrix(const InfinitesimalLorentz& eps) {
  eps.validate();
  const auto& ms = algebra::matrix_set();
  Mat6c lam = Mat6c::Identity();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const double e = eps.eps[std::size_t(mu)][std::size_t(nu)];
      if (e != 0.0)
        lam -= cd(0, 0.5) * e * ms.sigma[std::size_t(mu)][std::size_t(nu)];
    }
  return lam;
}

Field6 spinor_transform(const Field6& psi, const InfinitesimalLorentz& eps) {
  const Mat6c lam = transform_matrix(eps);
  Field6 out(psi.size());
  for (std::int64_t i = 0; i < psi.size(); ++i) out.set(i, lam * psi.at(i));
  return out;
}

double pseudo_unitarity_defect(const InfinitesimalLorentz& eps) {
  const auto& ms = algebra::matrix_set();
  const Mat6c lam = transform_matrix(eps);
  return (ms.beta0 * lam.adjoint() * ms.beta0 * lam - Mat6c::Identity())
      .cwiseAbs()
      .maxCoeff();
}

namespace {

// covariant dictionary: beta_lower = (beta0, -beta_i), d_lower = (d_t, +grad),
// d_upper = (d_t, -grad), beta^mu d_mu = beta0 d_t + beta.grad
struct PointDerivs {
  Vec6c psi;
  Vec6c dt;
  std::array<Vec6c, 3> dx;
};

PointDerivs derivs_at(const modes::ModeSuperposition& field, const Vec3& x, double t) {
  return {field.eval(x, t), field.time_derivative(x, t), field.gradient(x, t)};
}

}  // namespace

DeltaLReport delta_L_check(const modes::ModeSuperposition& field, const BoxSpec& box,
                           double t) {
  if (field.has_lambda0() || field.has_uniform())
    throw NonTransverse("delta-L check requires lambda=+-1, nonuniform content");

  const auto& ms = algebra::matrix_set();
  // beta with lower index
  std::array<Mat6c, 4> beta_lo;
  beta_lo[0] = ms.beta0;
  for (int i = 0; i < 3; ++i) beta_lo[std::size_t(i + 1)] = -ms.beta[i];

  DeltaLReport rep{0, 0, 0};
  for (int ix = 0; ix < box.grid_points[0]; ix += 2)
    for (int iy = 0; iy < box.grid_points[1]; iy += 2)
      for (int iz = 0; iz < box.grid_points[2]; iz += 2) {
        const Vec3 x = box.coord(ix, iy, iz);
        const PointDerivs d = derivs_at(field, x, t);
        rep.field_scale = std::max(rep.field_scale, d.psi.cwiseAbs().maxCoeff());
        const Vec6c psibar_conj = (ms.beta0 * d.psi);  // psibar = psi^dag beta0

        auto dmu = [&](int mu) -> const Vec6c& {
          return mu == 0 ? d.dt : d.dx[std::size_t(mu - 1)];
        };

        for (int rho = 0; rho < 4; ++rho)
          for (int sigma = 0; sigma < 4; ++sigma) {
            const cd lhs = psibar_conj.dot(beta_lo[std::size_t(rho)] * dmu(sigma)) -
                           psibar_conj.dot(beta_lo[std::size_t(sigma)] * dmu(rho));
            cd rhs{};
            // beta^mu d_mu contraction: beta0 d_t + beta_i dx_i
            const Mat6c& sg = ms.sigma[std::size_t(rho)][std::size_t(sigma)];
            rhs += psibar_conj.dot(kI * (ms.beta0 * sg - sg * ms.beta0) * d.dt);
            for (int i = 0; i < 3; ++i)
              rhs += psibar_conj.dot(kI * (ms.beta[i] * sg - sg * ms.beta[i]) *
                                     d.dx[std::size_t(i)]);
            rep.max_pair_mismatch = std::max(rep.max_pair_mismatch, std::abs(lhs - rhs));
          }

        // reduced boost bilinear: psibar[-(beta.grad)chi_l + beta0 d_l]psi
        for (int l = 0; l < 3; ++l) {
          cd b{};
          for (int mm = 0; mm < 3; ++mm)
            b -= psibar_conj.dot(ms.beta[mm] * (ms.chi[l] * d.dx[std::size_t(mm)]));
          b += psibar_conj.dot(ms.beta0 * d.dx[std::size_t(l)]);
          rep.max_boost_bilinear = std::max(rep.max_boost_bilinear, std::abs(b));
        }
      }
  return rep;
}

double delta_L_magnitude(const modes::ModeSuperposition& field, const BoxSpec& box,
                         double t, const InfinitesimalLorentz& eps) {
  eps.validate();
  if (field.has_lambda0() || field.has_uniform())
    throw NonTransverse("delta-L check requires lambda=+-1, nonuniform content");

  const auto& ms = algebra::matrix_set();
  const Mat6c lam = transform_matrix(eps);
  const double g[4] = {1, -1, -1, -1};

  // eps with both indices lowered: eps_{mu nu} = g_mu g_nu eps^{mu nu}
  double eps_lo[4][4];
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      eps_lo[mu][nu] = g[mu] * g[nu] * eps.eps[std::size_t(mu)][std::size_t(nu)];

  double worst = 0;
  for (int ix = 0; ix < box.grid_points[0]; ix += 2)
    for (int iy = 0; iy < box.grid_points[1]; iy += 2)
      for (int iz = 0; iz < box.grid_points[2]; iz += 2) {
        const Vec3 x = box.coord(ix, iy, iz);
        const PointDerivs d = derivs_at(field, x, t);

        // d^nu psi (upper index): (d_t, -grad)
        auto dup = [&](int nu) -> Vec6c {
          return nu == 0 ? d.dt : Vec6c(-d.dx[std::size_t(nu - 1)]);
        };
        // transformed derivative slot: a_{mu nu} d^nu = d_mu + eps_{mu nu} d^nu
        auto dtrans = [&](int mu) -> Vec6c {
          Vec6c v = mu == 0 ? d.dt : d.dx[std::size_t(mu - 1)];
          for (int nu = 0; nu < 4; ++nu)
            if (eps_lo[mu][nu] != 0.0) v += eps_lo[mu][nu] * dup(nu);
          return v;
        };

        // L_T = (Lambda psi)^dag beta0 i beta^mu Lambda (a_{mu nu} d^nu psi)
        const Vec6c lpsi = lam * d.psi;
        cd lt{};
        lt += (ms.beta0 * lpsi).dot(kI * (ms.beta0 * (lam * dtrans(0))));
        for (int i = 0; i < 3; ++i)
          lt += (ms.beta0 * lpsi).dot(kI * (ms.beta[i] * (lam * dtrans(i + 1))));

        // L itself (zero on shell up to rounding)
        cd l0{};
        l0 += (ms.beta0 * d.psi).dot(kI * (ms.beta0 * d.dt));
        for (int i = 0; i < 3; ++i)
          l0 += (ms.beta0 * d.psi).dot(kI * (ms.beta[i] * d.dx[std::size_t(i)]));

        worst = std::max(worst, std::abs(lt - l0));
      }
  return worst;
}

ScalarInvariantReport scalar_invariants(const BoxSpec& box, const RealField3& e,
                                        const RealField3& b) {
  box.validate();
  if (e.size() != box.num_points() || b.size() != box.num_points())
    throw ShapeMismatch("E/B field size does not match the grid");
  ScalarInvariantReport rep;
  rep.s1.resize(std::size_t(box.num_points()));
  rep.identity_residual = 0;
  const auto& ms = algebra::matrix_set();
  const double sqrt2 = std::sqrt(2.0);
  for (std::int64_t i = 0; i < box.num_points(); ++i) {
    const Vec3 ev = e.at(i), bv = b.at(i);
    const double s1 = ev.squaredNorm() - bv.squaredNorm();
    rep.s1[std::size_t(i)] = s1;
    Vec6c psi;
    psi.head<3>() = ev.cast<cd>() / sqrt2;
    psi.tail<3>() = kI * bv.cast<cd>() / sqrt2;
    const cd pbp = (ms.beta0 * psi).dot(psi);  // psi^dag beta0 psi
    rep.identity_residual =
        std::max(rep.identity_residual, std::abs(s1 - 2 * pbp.real()));
  }
  return rep;
}

namespace {

double bilinear_change(const Field6& psi, const InfinitesimalLorentz& eps, bool weighted) {
  const auto& ms = algebra::matrix_set();
  const Mat6c lam = transform_matrix(eps);
  double worst = 0;
  for (std::int64_t i = 0; i < psi.size(); ++i) {
    const Vec6c p = psi.at(i);
    const Vec6c q = lam * p;
    const cd before = weighted ? cd((ms.beta0 * p).dot(p)) : cd(p.squaredNorm());
    const cd after = weighted ? cd((ms.beta0 * q).dot(q)) : cd(q.squaredNorm());
    worst = std::max(worst, std::abs(after - before));
  }
  return worst;
}

}  // namespace

double psibar_psi_change(const Field6& psi, const InfinitesimalLorentz& eps) {
  return bilinear_change(psi, eps, true);
}

double psidag_psi_change(const Field6& psi, const InfinitesimalLorentz& eps) {
  return bilinear_change(psi, eps, false);
}

}  // namespace photonwave::lorentz
