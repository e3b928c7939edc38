#include "lambdisp/floquet.hpp"

namespace lambdisp {

FloquetReduced floquet_reduce(const AssembledSystem& sys,
                              const UnitCellMesh& mesh, double k) {
    if (k < 0.0) throw std::domain_error("floquet_reduce: k must be >= 0");
    const int ndof = sys.n_dof;
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, k * mesh.dx1));

    // master set: all dofs except the right-edge ones
    std::vector<int> red_of_full(ndof, -1);
    FloquetReduced red;
    red.k = k;
    std::vector<bool> is_right(ndof, false);
    for (int n : mesh.right_nodes) {
        is_right[2 * n] = true;
        is_right[2 * n + 1] = true;
    }
    for (int d = 0; d < ndof; ++d)
        if (!is_right[d]) {
            red_of_full[d] = static_cast<int>(red.reduced_dofs.size());
            red.reduced_dofs.push_back(d);
        }
    const int nred = static_cast<int>(red.reduced_dofs.size());

    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    for (int d = 0; d < ndof; ++d)
        if (!is_right[d]) trip.emplace_back(d, red_of_full[d], 1.0);
    for (std::size_t j = 0; j < mesh.right_nodes.size(); ++j) {
        const int rn = mesh.right_nodes[j];
        const int ln = mesh.left_nodes[j];
        for (int c = 0; c < 2; ++c)
            trip.emplace_back(2 * rn + c, red_of_full[2 * ln + c], phase);
    }
    red.T.resize(ndof, nred);
    red.T.setFromTriplets(trip.begin(), trip.end());

    const SpMatC K = (sys.Kd + sys.Ks).cast<std::complex<double>>();
    const SpMatC M = sys.M.cast<std::complex<double>>();
    red.Kbar = red.T.adjoint() * K * red.T;
    red.Mbar = red.T.adjoint() * M * red.T;
    return red;
}

VecC expand_to_full(const FloquetReduced& red, const VecC& v_reduced) {
    return red.T * v_reduced;
}

}  // namespace lambdisp
