#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "photonwave/box.hpp"
#include "photonwave/field.hpp"
#include "photonwave/spectral.hpp"
#include "photonwave/types.hpp"

namespace photonwave::dynamics {

// Simulation state: psi = (E; iB)/sqrt(2) sampled on the box grid.
struct FieldState {
  BoxSpec box;
  Field6 psi;
  double time = 0.0;

  double grid_norm() const { return std::sqrt(psi.squared_norm()); }
};

FieldState from_EB(const BoxSpec& box, const RealField3& e, const RealField3& b,
                   double time = 0.0);
// Inverse of from_EB; exact round trip. Imaginary residue above tol reported
// through max_imag (the fields returned are the real parts).
struct EBFields {
  RealField3 e;
  RealField3 b;
  double max_imag = 0.0;
};
EBFields to_EB(const FieldState& s);

// Exact spectral evolution by the first-order equation: per Fourier mode
// applies exp(-i (chi.k) t) through the closed form for the {+|k|,0,-|k|}
// spectrum. Unitary and reversible to round-off for any duration.
FieldState evolve_spectral(const SpectralGrid& grid, const FieldState& s, double duration);

// Independent classical oracle: staggered-in-time leapfrog for
// dE/dt = curl B, dB/dt = -curl E with spectral (collocated) curls.
// Stability bound: dt <= 2/omega_max with omega_max = box.max_frequency();
// UnstableStep beyond it. Second-order accurate in dt.
void evolve_curl(const SpectralGrid& grid, RealField3& e, RealField3& b, double dt,
                 int steps);

// Applies Omega = I2 (x) grad(div .) via the Fourier multiplier I2 (x) (-k k^T).
Field6 omega_apply(const SpectralGrid& grid, const Field6& f);

// ||Omega psi|| / ||psi|| (grid L2); 0 for transverse states.
double transversality_residual(const SpectralGrid& grid, const FieldState& s);

struct ConservedRow {
  double time = 0.0;
  double energy = 0.0;                  // int psi^dag psi = (1/2) int (E^2+B^2)
  Vec3 momentum = Vec3::Zero();         // int E x B
  Vec3 angular_momentum = Vec3::Zero(); // <psi| x <cross> (-i grad) + S |psi>, box center origin
  double transversality = 0.0;          // ||Omega psi||/||psi||
  double boundary_mass = 0.0;           // fraction of psi^dag psi in the outermost cell shell
  bool angular_momentum_reliable = true;  // false when boundary_mass > 1e-6
};

ConservedRow conserved_quantities(const SpectralGrid& grid, const FieldState& s);

struct EvolutionReport {
  std::vector<ConservedRow> rows;
};

// Binary snapshot: header = 3 x uint32 grid dims, 3 x f64 box lengths,
// f64 time; body = row-major (z fastest) grid of 12 little-endian f64 per
// point (Re,Im of the 6 components).
void write_snapshot(std::ostream& os, const FieldState& s);
FieldState read_snapshot(std::istream& is);
void write_snapshot_file(const std::string& path, const FieldState& s);
FieldState read_snapshot_file(const std::string& path);

}  // namespace photonwave::dynamics
