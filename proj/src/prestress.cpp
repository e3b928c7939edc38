#include "lambdisp/prestress.hpp"

#include <cmath>
#include <string>

namespace lambdisp {

PreStressState solve_uniaxial(const Material& mat, double sigma, double tol,
                              int max_iter) {
    const double E = mat.youngs_modulus();
    if (std::abs(sigma) >= 0.01 * E)
        throw std::domain_error(
            "solve_uniaxial: |sigma| outside the small-load envelope "
            "(|sigma| < 0.01 E)");

    PreStressState st;
    st.sigma_applied = sigma;
    st.material = mat;
    if (sigma == 0.0) return st;

    const double nu = mat.lambda / (2.0 * (mat.lambda + mat.mu));
    // plane-strain Hooke starting guess
    double f11 = 1.0 + sigma * (1.0 - nu * nu) / E;
    double f22 = 1.0 - sigma * nu * (1.0 + nu) / E;

    double rnorm = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Tensor2 F = Tensor2::Identity();
        F(0, 0) = f11;
        F(1, 1) = f22;
        const Tensor2 S = pk2_stress(mat, F.transpose() * F);
        const Tensor2 P = F * S;
        const Eigen::Vector2d r(P(0, 0) - sigma, P(1, 1));
        rnorm = r.norm();
        if (rnorm < tol) {
            st.F_s = F;
            st.S_s = S;
            st.cauchy = F * S * F.transpose() / F.determinant();
            st.residual_norm = rnorm;
            return st;
        }
        const Tensor4 A = first_elasticity(mat, F);
        Eigen::Matrix2d J;
        J << A(0, 0, 0, 0), A(0, 0, 1, 1), A(1, 1, 0, 0), A(1, 1, 1, 1);
        const Eigen::Vector2d dx = J.fullPivLu().solve(r);
        f11 -= dx(0);
        f22 -= dx(1);
    }
    throw ConvergenceError(
        "solve_uniaxial: no convergence after " + std::to_string(max_iter) +
            " iterations, last residual " + std::to_string(rnorm) + " Pa",
        rnorm);
}

}  // namespace lambdisp
