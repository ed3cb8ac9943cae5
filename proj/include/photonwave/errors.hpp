#pragma once

#include <stdexcept>
#include <string>

namespace photonwave {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |k| = 0 where a direction is required.
struct ZeroWaveVector : Error {
  ZeroWaveVector() : Error("wave vector has zero length") {}
};

// Operands live on different boxes/grids.
struct MixedBox : Error {
  MixedBox() : Error("operands belong to different boxes") {}
};

struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

// Time step beyond the leapfrog stability bound.
struct UnstableStep : Error {
  explicit UnstableStep(const std::string& what) : Error(what) {}
};

// E or B carries imaginary parts where a real field is required.
struct NonRealField : Error {
  explicit NonRealField(const std::string& what) : Error(what) {}
};

// Field has longitudinal/uniform content where transversality is required.
struct NonTransverse : Error {
  explicit NonTransverse(const std::string& what) : Error(what) {}
};

// Spatial part of a 4-momentum vanishes; no transverse projector exists.
struct ZeroSpatialK : Error {
  ZeroSpatialK() : Error("spatial wave vector is zero") {}
};

// Requested problem size beyond the documented desk-scale caps.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace photonwave
