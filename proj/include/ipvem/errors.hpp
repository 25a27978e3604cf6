#pragma once

#include <stdexcept>
#include <string>

namespace ipvem {

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TopologyError : MeshError {
  using MeshError::MeshError;
};

struct GeometryError : MeshError {
  using MeshError::MeshError;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ipvem
