#include "swave/mesh.hpp"

#include <stdexcept>

namespace swave {

Mesh1D build_uniform_mesh(int n_cells) {
  if (n_cells < 2)
    throw std::invalid_argument("build_uniform_mesh: need n_cells >= 2, got " +
                                std::to_string(n_cells));
  Mesh1D mesh;
  mesh.n_cells = n_cells;
  mesh.h = 1.0 / n_cells;
  mesh.interior_nodes.reserve(n_cells - 1);
  for (int i = 1; i < n_cells; ++i) mesh.interior_nodes.push_back(i * mesh.h);
  return mesh;
}

}  // namespace swave
