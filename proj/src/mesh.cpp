#include "lambdisp/mesh.hpp"

namespace lambdisp {

UnitCellMesh build_mesh(double dx1, double thickness, int nx, int ny) {
    if (nx < 1 || ny < 2)
        throw std::domain_error("build_mesh: requires nx >= 1 and ny >= 2");
    if (dx1 <= 0.0 || thickness <= 0.0)
        throw std::domain_error("build_mesh: requires positive dimensions");

    UnitCellMesh mesh;
    mesh.dx1 = dx1;
    mesh.thickness = thickness;
    mesh.nx = nx;
    mesh.ny = ny;

    const int nxn = mesh.nodes_x();
    const int nyn = mesh.nodes_y();
    mesh.nodes.resize(mesh.n_nodes(), 2);
    for (int iy = 0; iy < nyn; ++iy) {
        const double y = -0.5 * thickness + thickness * iy / (nyn - 1);
        for (int ix = 0; ix < nxn; ++ix) {
            const double x = dx1 * ix / (nxn - 1);
            const int n = mesh.node_index(ix, iy);
            mesh.nodes(n, 0) = x;
            mesh.nodes(n, 1) = y;
        }
    }

    mesh.elements.reserve(mesh.n_elements());
    for (int ey = 0; ey < ny; ++ey)
        for (int ex = 0; ex < nx; ++ex) {
            std::array<int, 9> conn;
            // local lexicographic order: (a, b), a = xi index, b = eta index
            for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a)
                    conn[b * 3 + a] = mesh.node_index(2 * ex + a, 2 * ey + b);
            mesh.elements.push_back(conn);
        }

    for (int iy = 0; iy < nyn; ++iy) {
        mesh.left_nodes.push_back(mesh.node_index(0, iy));
        mesh.right_nodes.push_back(mesh.node_index(nxn - 1, iy));
        for (int ix = 1; ix < nxn - 1; ++ix)
            mesh.interior_nodes.push_back(mesh.node_index(ix, iy));
    }
    return mesh;
}

}  // namespace lambdisp
