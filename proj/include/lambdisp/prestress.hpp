#pragma once

#include "lambdisp/constitutive.hpp"

namespace lambdisp {

/// Homogeneous intermediate configuration of the uniaxially loaded strip:
/// plane strain in x3 (F33 = 1), traction-free thickness faces (P22 = 0),
/// nominal stress sigma applied along x1 (P11 = sigma).
struct PreStressState {
    double sigma_applied = 0.0;        // Pa, nominal (first PK) stress
    Tensor2 F_s = Tensor2::Identity(); // deformation gradient, diagonal
    Tensor2 S_s = Tensor2::Zero();     // second Piola-Kirchhoff stress, Pa
    Tensor2 cauchy = Tensor2::Zero();  // J^-1 F S F^T, Pa
    double residual_norm = 0.0;        // Pa
    Material material;                 // material the state was solved with
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double residual)
        : std::runtime_error(msg), last_residual(residual) {}
    double last_residual;
};

PreStressState solve_uniaxial(const Material& mat, double sigma,
                              double tol = 1.0, int max_iter = 50);

}  // namespace lambdisp
