#pragma once

#include <array>
#include <vector>

#include "photonwave/box.hpp"
#include "photonwave/errors.hpp"
#include "photonwave/types.hpp"

namespace photonwave {

// Six complex components on a grid, stored component-major so each component
// is contiguous for the FFT.
struct Field6 {
  std::array<std::vector<cd>, 6> comp;

  Field6() = default;
  explicit Field6(std::int64_t n) {
    for (auto& c : comp) c.assign(std::size_t(n), cd{});
  }

  std::int64_t size() const { return std::int64_t(comp[0].size()); }

  Vec6c at(std::int64_t i) const {
    Vec6c v;
    for (int c = 0; c < 6; ++c) v[c] = comp[c][std::size_t(i)];
    return v;
  }
  void set(std::int64_t i, const Vec6c& v) {
    for (int c = 0; c < 6; ++c) comp[c][std::size_t(i)] = v[c];
  }

  double squared_norm() const {
    double s = 0;
    for (const auto& c : comp)
      for (const cd& z : c) s += std::norm(z);
    return s;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& c : comp)
      for (const cd& z : c) m = std::max(m, std::abs(z));
    return m;
  }
};

inline Field6 operator-(const Field6& a, const Field6& b) {
  if (a.size() != b.size()) throw ShapeMismatch("field sizes differ");
  Field6 r(a.size());
  for (int c = 0; c < 6; ++c)
    for (std::size_t i = 0; i < a.comp[c].size(); ++i)
      r.comp[c][i] = a.comp[c][i] - b.comp[c][i];
  return r;
}

inline Field6 operator+(const Field6& a, const Field6& b) {
  if (a.size() != b.size()) throw ShapeMismatch("field sizes differ");
  Field6 r(a.size());
  for (int c = 0; c < 6; ++c)
    for (std::size_t i = 0; i < a.comp[c].size(); ++i)
      r.comp[c][i] = a.comp[c][i] + b.comp[c][i];
  return r;
}

// Real 3-vector field (E or B).
struct RealField3 {
  std::array<std::vector<double>, 3> comp;

  RealField3() = default;
  explicit RealField3(std::int64_t n) {
    for (auto& c : comp) c.assign(std::size_t(n), 0.0);
  }

  std::int64_t size() const { return std::int64_t(comp[0].size()); }

  Vec3 at(std::int64_t i) const {
    return {comp[0][std::size_t(i)], comp[1][std::size_t(i)], comp[2][std::size_t(i)]};
  }
  void set(std::int64_t i, const Vec3& v) {
    for (int c = 0; c < 3; ++c) comp[c][std::size_t(i)] = v[c];
  }

  double squared_norm() const {
    double s = 0;
    for (const auto& c : comp)
      for (double x : c) s += x * x;
    return s;
  }
};

}  // namespace photonwave
