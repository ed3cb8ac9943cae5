#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "photonwave/errors.hpp"
#include "photonwave/types.hpp"

namespace photonwave {

// Periodic rectangular box with a uniform collocation grid.
// Allowed wave vectors are k_i = 2*pi*n_i/L_i with integer n_i; the grid
// resolves |n_i| <= N_i/2 (N_i even), and products of two resolved modes are
// alias-free for |n_i| <= N_i/2 - 1.
struct BoxSpec {
  std::array<double, 3> lengths{2 * kPi, 2 * kPi, 2 * kPi};
  std::array<int, 3> grid_points{16, 16, 16};

  void validate() const {
    for (int d = 0; d < 3; ++d) {
      if (!(lengths[d] > 0.0)) throw ConfigError("box length must be positive");
      if (grid_points[d] <= 0 || grid_points[d] % 2 != 0)
        throw ConfigError("grid points must be positive even integers");
    }
  }

  double volume() const { return lengths[0] * lengths[1] * lengths[2]; }
  std::int64_t num_points() const {
    return std::int64_t(grid_points[0]) * grid_points[1] * grid_points[2];
  }
  double cell_volume() const { return volume() / double(num_points()); }

  // z-fastest linear index
  std::int64_t index(int ix, int iy, int iz) const {
    return (std::int64_t(ix) * grid_points[1] + iy) * grid_points[2] + iz;
  }

  Vec3 coord(int ix, int iy, int iz) const {
    return {ix * lengths[0] / grid_points[0], iy * lengths[1] / grid_points[1],
            iz * lengths[2] / grid_points[2]};
  }

  Vec3 center() const { return {lengths[0] / 2, lengths[1] / 2, lengths[2] / 2}; }

  // integer mode index -> wave vector
  Vec3 wave_vector(const std::array<int, 3>& n) const {
    return {2 * kPi * n[0] / lengths[0], 2 * kPi * n[1] / lengths[1],
            2 * kPi * n[2] / lengths[2]};
  }

  // FFT bin -> signed mode integer (bin N/2 maps to -N/2)
  int mode_int(int d, int bin) const {
    const int n = grid_points[d];
    return bin < n / 2 ? bin : bin - n;
  }

  // Largest |k| the grid represents (Nyquist corner); leapfrog stability uses it.
  double max_frequency() const {
    double s = 0;
    for (int d = 0; d < 3; ++d) {
      const double km = kPi * grid_points[d] / lengths[d];
      s += km * km;
    }
    return std::sqrt(s);
  }

  bool alias_free(const std::array<int, 3>& n) const {
    for (int d = 0; d < 3; ++d)
      if (2 * std::abs(n[d]) >= grid_points[d]) return false;
    return true;
  }

  friend bool operator==(const BoxSpec& a, const BoxSpec& b) {
    return a.lengths == b.lengths && a.grid_points == b.grid_points;
  }
};

}  // namespace photonwave
