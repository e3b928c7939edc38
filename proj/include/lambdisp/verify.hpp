#pragma once

#include <random>

#include "lambdisp/constitutive.hpp"

namespace lambdisp {

/// Finite-difference verification of the constitutive derivatives over
/// random states with eigenvalues of C in [0.9, 1.1].
struct FdCheckResult {
    std::string model;
    int n_states = 0;
    double max_stress_err = 0.0;   // max relative |S_analytic - S_fd|
    double max_tangent_err = 0.0;  // max relative |C_analytic - C_fd|
    bool pass = false;
};

FdCheckResult fd_check(const Material& mat, int n_states, unsigned seed,
                       double tol_stress = 1e-6, double tol_tangent = 1e-5);

/// Random symmetric positive definite C with eigenvalues in
/// [1 - spread, 1 + spread].
Tensor2 random_state(std::mt19937& rng, double spread = 0.1);

}  // namespace lambdisp
