#pragma once

#include <Eigen/Sparse>

#include "lambdisp/constitutive.hpp"
#include "lambdisp/mesh.hpp"
#include "lambdisp/prestress.hpp"

namespace lambdisp {

using SpMat = Eigen::SparseMatrix<double>;

/// Plane-strain unit-cell matrices in the reference configuration.
/// Kd + Ks is the full tangent stiffness; Ks carries the initial-stress
/// (geometric) contribution proportional to S^s.
struct AssembledSystem {
    SpMat M;   // consistent mass, rho0-weighted
    SpMat Kd;  // linearized material stiffness
    SpMat Ks;  // initial-stress matrix
    int n_dof = 0;
};

struct AssemblyOptions {
    /// When false, the wave problem is linearized about the unloaded
    /// reference state: the tangent is evaluated at F = I and the
    /// initial-stress matrix is dropped. Used for the linear material
    /// model, where pre-stress must not influence the wave solution.
    bool geometric_stiffness = true;
};

AssembledSystem assemble(const UnitCellMesh& mesh, const Material& mat,
                         const PreStressState& state,
                         const AssemblyOptions& opts = {});

}  // namespace lambdisp
