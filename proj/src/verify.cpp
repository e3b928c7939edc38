#include "lambdisp/verify.hpp"

#include <Eigen/QR>
#include <cmath>

#include "lambdisp/dispersion_io.hpp"

namespace lambdisp {

Tensor2 random_state(std::mt19937& rng, double spread) {
    std::uniform_real_distribution<double> eig(1.0 - spread, 1.0 + spread);
    std::normal_distribution<double> gauss;
    Tensor2 A;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = gauss(rng);
    const Eigen::HouseholderQR<Tensor2> qr(A);
    Tensor2 Q = qr.householderQ();
    Tensor2 D = Tensor2::Zero();
    for (int i = 0; i < 3; ++i) D(i, i) = eig(rng);
    Tensor2 C = Q * D * Q.transpose();
    return 0.5 * (C + C.transpose());  // exact symmetry
}

FdCheckResult fd_check(const Material& mat, int n_states, unsigned seed,
                       double tol_stress, double tol_tangent) {
    if (n_states < 1)
        throw std::invalid_argument("fd_check: n_states >= 1");
    const double h = 1e-6;
    std::mt19937 rng(seed);
    FdCheckResult res;
    res.model = model_name(mat.kind);
    res.n_states = n_states;

    for (int s = 0; s < n_states; ++s) {
        const Tensor2 C = random_state(rng);
        const Tensor2 S = pk2_stress(mat, C);
        const Tensor4 CC = material_tangent(mat, C);

        Tensor2 S_fd = Tensor2::Zero();
        Tensor4 CC_fd;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                Tensor2 P = Tensor2::Zero();
                P(i, j) = P(j, i) = h;
                const double scale = (i == j) ? h : 2.0 * h;
                // S = 2 dW/dC: central difference on the energy
                const double wp = strain_energy(mat, C + P);
                const double wm = strain_energy(mat, C - P);
                S_fd(i, j) = S_fd(j, i) = (wp - wm) / scale;
                // material tangent = 2 dS/dC: central difference on S
                const Tensor2 Sp = pk2_stress(mat, C + P);
                const Tensor2 Sm = pk2_stress(mat, C - P);
                const Tensor2 dS = (Sp - Sm) / scale;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) {
                        CC_fd(a, b, i, j) = dS(a, b);
                        CC_fd(a, b, j, i) = dS(a, b);
                    }
            }

        const double s_scale =
            std::max(S_fd.cwiseAbs().maxCoeff(), 1e-6 * mat.mu);
        res.max_stress_err = std::max(
            res.max_stress_err, (S - S_fd).cwiseAbs().maxCoeff() / s_scale);
        const double c_scale = std::max(CC_fd.max_abs(), 1e-6 * mat.mu);
        res.max_tangent_err = std::max(res.max_tangent_err,
                                       (CC - CC_fd).max_abs() / c_scale);
    }
    res.pass = res.max_stress_err < tol_stress &&
               res.max_tangent_err < tol_tangent;
    return res;
}

}  // namespace lambdisp
