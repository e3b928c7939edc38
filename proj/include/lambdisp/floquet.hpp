#pragma once

#include <complex>

#include "lambdisp/assembly.hpp"

namespace lambdisp {

using SpMatC = Eigen::SparseMatrix<std::complex<double>>;
using VecC = Eigen::VectorXcd;

/// Master-slave reduction u_right = exp(ik dx1) u_left applied to the
/// assembled unit-cell system.
struct FloquetReduced {
    SpMatC Kbar;  // T^H (Kd + Ks) T, Hermitian
    SpMatC Mbar;  // T^H M T, Hermitian positive definite
    SpMatC T;     // n_dof x n_reduced transformation
    std::vector<int> reduced_dofs;  // full-system dof ids of the master set
    double k = 0.0;
};

FloquetReduced floquet_reduce(const AssembledSystem& sys,
                              const UnitCellMesh& mesh, double k);

/// Expand a reduced eigenvector back to the full unit-cell dof set.
VecC expand_to_full(const FloquetReduced& red, const VecC& v_reduced);

}  // namespace lambdisp
