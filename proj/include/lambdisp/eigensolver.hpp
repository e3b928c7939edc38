#pragma once

#include "lambdisp/floquet.hpp"

namespace lambdisp {

struct EigenPair {
    double omega;  // rad/s
    VecC vec;      // reduced-set eigenvector, Mbar-orthonormal
};

class InstabilityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenSolveOptions {
    /// problems at or below this size are solved densely
    int dense_threshold = 1200;
    double residual_tol = 1e-10;
    int max_iterations = 400;
};

/// Smallest n_modes eigenpairs of Kbar v = omega^2 Mbar v. Eigenvalues in
/// [-eps_clamp, 0) are clamped to zero (numerically rigid modes);
/// eigenvalues below -eps_clamp raise InstabilityError.
std::vector<EigenPair> solve_eigen(const SpMatC& Kbar, const SpMatC& Mbar,
                                   int n_modes,
                                   const EigenSolveOptions& opts = {});

}  // namespace lambdisp
