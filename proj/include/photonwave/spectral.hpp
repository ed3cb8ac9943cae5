#pragma once

#include <memory>
#include <vector>

#include "photonwave/box.hpp"
#include "photonwave/field.hpp"

namespace photonwave {

// Forward/backward c2c FFTs on the box grid plus the wave-vector table.
// Forward computes F[u](k) = sum_x u(x) e^{-i k.x}; backward is its exact
// inverse (1/N^3 normalization applied). Plans are created once per grid.
class SpectralGrid {
 public:
  explicit SpectralGrid(const BoxSpec& box);
  ~SpectralGrid();

  SpectralGrid(const SpectralGrid&) = delete;
  SpectralGrid& operator=(const SpectralGrid&) = delete;

  const BoxSpec& box() const { return box_; }

  // In-place transforms of one contiguous component array.
  void forward(std::vector<cd>& data) const;
  void backward(std::vector<cd>& data) const;

  void forward(Field6& f) const {
    for (auto& c : f.comp) forward(c);
  }
  void backward(Field6& f) const {
    for (auto& c : f.comp) backward(c);
  }

  // Wave vector of the FFT bin with linear index i (z-fastest layout).
  const Vec3& wave_vector(std::int64_t i) const { return kvec_[std::size_t(i)]; }
  const std::vector<Vec3>& wave_vectors() const { return kvec_; }

 private:
  BoxSpec box_;
  std::vector<Vec3> kvec_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace photonwave
