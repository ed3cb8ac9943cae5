#include "photonwave/spectral.hpp"

#include <fftw3.h>

namespace photonwave {

struct SpectralGrid::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<cd> scratch;
};

SpectralGrid::SpectralGrid(const BoxSpec& box) : box_(box), plans_(new Plans) {
  box_.validate();
  const auto n = box_.num_points();
  kvec_.resize(std::size_t(n));
  for (int ix = 0; ix < box_.grid_points[0]; ++ix)
    for (int iy = 0; iy < box_.grid_points[1]; ++iy)
      for (int iz = 0; iz < box_.grid_points[2]; ++iz) {
        const std::array<int, 3> m{box_.mode_int(0, ix), box_.mode_int(1, iy),
                                   box_.mode_int(2, iz)};
        kvec_[std::size_t(box_.index(ix, iy, iz))] = box_.wave_vector(m);
      }

  plans_->scratch.assign(std::size_t(n), cd{});
  auto* buf = reinterpret_cast<fftw_complex*>(plans_->scratch.data());
  // FFTW_ESTIMATE keeps planning deterministic; FFTW_UNALIGNED allows
  // new-array execution on std::vector storage.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->fwd = fftw_plan_dft_3d(box_.grid_points[0], box_.grid_points[1],
                                 box_.grid_points[2], buf, buf, FFTW_FORWARD, flags);
  plans_->bwd = fftw_plan_dft_3d(box_.grid_points[0], box_.grid_points[1],
                                 box_.grid_points[2], buf, buf, FFTW_BACKWARD, flags);
}

SpectralGrid::~SpectralGrid() {
  if (plans_) {
    fftw_destroy_plan(plans_->fwd);
    fftw_destroy_plan(plans_->bwd);
  }
}

void SpectralGrid::forward(std::vector<cd>& data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->fwd, p, p);
}

void SpectralGrid::backward(std::vector<cd>& data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->bwd, p, p);
  const double s = 1.0 / double(box_.num_points());
  for (cd& z : data) z *= s;
}

}  // namespace photonwave
