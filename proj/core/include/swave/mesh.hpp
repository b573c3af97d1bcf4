#pragma once

#include <vector>

namespace swave {

/// Uniform partition of (0,1) with homogeneous Dirichlet ends.
/// Only interior nodes carry degrees of freedom.
struct Mesh1D {
  int n_cells = 0;
  double h = 0.0;
  std::vector<double> interior_nodes;

  int dof() const { return n_cells - 1; }
};

/// Throws std::invalid_argument for n_cells < 2 (no interior node).
Mesh1D build_uniform_mesh(int n_cells);

}  // namespace swave
