#pragma once

#include <complex>

#include <Eigen/Dense>

namespace photonwave {

using cd = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Vec6c = Eigen::Matrix<cd, 6, 1>;
using Mat3c = Eigen::Matrix3cd;
using Mat6c = Eigen::Matrix<cd, 6, 6>;
using Mat4c = Eigen::Matrix4cd;
using Vec4c = Eigen::Vector4cd;

inline constexpr cd kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Levi-Civita symbol, 0-based indices.
inline int levi_civita(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;
}

// Componentwise cross product of a real and a complex 3-vector. Eigen's
// cross() conjugates complex operands, which is not the bilinear product the
// spectral multipliers need.
inline Vec3c cross_rc(const Vec3& a, const Vec3c& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace photonwave
