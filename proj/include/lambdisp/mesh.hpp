#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <vector>

namespace lambdisp {

/// Structured lattice of 9-node biquadratic quadrilaterals covering the
/// unit cell [0, dx1] x [-thickness/2, +thickness/2]. Nodes are numbered
/// row by row (x1 fastest) so the midplane sits exactly on a node row.
struct UnitCellMesh {
    double dx1 = 0.0;        // m, cell length
    double thickness = 0.0;  // m, plate thickness (x2 extent)
    int nx = 0;              // elements along x1
    int ny = 0;              // elements along x2

    int nodes_x() const { return 2 * nx + 1; }
    int nodes_y() const { return 2 * ny + 1; }
    int n_nodes() const { return nodes_x() * nodes_y(); }
    int n_dof() const { return 2 * n_nodes(); }
    int n_elements() const { return nx * ny; }

    int node_index(int ix, int iy) const { return iy * nodes_x() + ix; }

    Eigen::MatrixX2d nodes;              // n_nodes x 2 coordinates
    std::vector<std::array<int, 9>> elements;  // per element: 9 node ids
    std::vector<int> left_nodes;         // ix = 0, ordered by iy
    std::vector<int> right_nodes;        // ix = 2nx, ordered by iy
    std::vector<int> interior_nodes;
};

UnitCellMesh build_mesh(double dx1, double thickness, int nx, int ny);

}  // namespace lambdisp
