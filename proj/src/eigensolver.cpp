#include "lambdisp/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <random>

namespace lambdisp {

namespace {

using MatC = Eigen::MatrixXcd;

std::vector<EigenPair> finalize(const Eigen::VectorXd& evals, const MatC& evecs,
                                int n_modes, double eps_clamp) {
    std::vector<EigenPair> out;
    for (int i = 0; i < n_modes; ++i) {
        double lam = evals(i);
        if (lam < -eps_clamp)
            throw InstabilityError(
                "solve_eigen: negative eigenvalue " + std::to_string(lam) +
                " beyond clamp " + std::to_string(eps_clamp));
        if (lam < 0.0) lam = 0.0;
        out.push_back({std::sqrt(lam), evecs.col(i)});
    }
    return out;
}

std::vector<EigenPair> solve_dense(const SpMatC& Kbar, const SpMatC& Mbar,
                                   int n_modes) {
    const MatC Kd(Kbar), Md(Mbar);
    Eigen::GeneralizedSelfAdjointEigenSolver<MatC> ges(Kd, Md);
    if (ges.info() != Eigen::Success)
        throw std::runtime_error("solve_eigen: dense solver failed");
    const double eps_clamp =
        1e-6 * std::max(std::abs(ges.eigenvalues()(0)),
                        std::abs(ges.eigenvalues()(Kbar.rows() - 1)));
    return finalize(ges.eigenvalues(), ges.eigenvectors(), n_modes, eps_clamp);
}

// Shift-inverted block subspace iteration with Rayleigh-Ritz projection.
std::vector<EigenPair> solve_subspace(const SpMatC& Kbar, const SpMatC& Mbar,
                                      int n_modes,
                                      const EigenSolveOptions& opts) {
    const int n = static_cast<int>(Kbar.rows());
    const int m = std::min(n, 2 * n_modes + 4);

    double kdiag = 0.0, mdiag = 0.0, ratio_max = 0.0;
    double knorm = 0.0, mnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double kd = std::abs(Kbar.coeff(i, i));
        const double md = std::abs(Mbar.coeff(i, i));
        kdiag += kd;
        mdiag += md;
        knorm = std::max(knorm, kd);
        mnorm = std::max(mnorm, md);
        if (md > 0.0) ratio_max = std::max(ratio_max, kd / md);
    }
    const double shift = 1e-12 * kdiag / mdiag;
    const double eps_clamp = 1e-6 * ratio_max;

    SpMatC Kshift = Kbar + std::complex<double>(shift) * Mbar;
    Eigen::SparseLU<SpMatC> lu;
    lu.compute(Kshift);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("solve_eigen: factorization failed");

    std::mt19937 rng(12345);
    std::normal_distribution<double> dist;
    MatC X(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i)
            X(i, j) = std::complex<double>(dist(rng), dist(rng));

    Eigen::VectorXd lam(m);
    for (int it = 0; it < opts.max_iterations; ++it) {
        MatC Y = lu.solve(MatC(Mbar * X));
        // re-orthonormalize: the block collapses onto the dominant
        // eigenvector otherwise
        Eigen::HouseholderQR<MatC> qr(Y);
        Y = qr.householderQ() * MatC::Identity(n, m);
        MatC Hk = Y.adjoint() * (Kbar * Y);
        MatC Hm = Y.adjoint() * (Mbar * Y);
        Hk = 0.5 * (Hk + Hk.adjoint()).eval();
        Hm = 0.5 * (Hm + Hm.adjoint()).eval();
        Eigen::GeneralizedSelfAdjointEigenSolver<MatC> ges(Hk, Hm);
        if (ges.info() != Eigen::Success)
            throw std::runtime_error("solve_eigen: Ritz projection failed");
        X = Y * ges.eigenvectors();
        lam = ges.eigenvalues();

        bool converged = true;
        for (int j = 0; j < n_modes; ++j) {
            const VecC kx = Kbar * X.col(j);
            const VecC mx = Mbar * X.col(j);
            // scale by the pencil norms: the per-mode residual floor is
            // eps * ||K|| regardless of the eigenvalue magnitude
            const double denom =
                (knorm + (std::abs(lam(j)) + shift) * mnorm) *
                X.col(j).norm();
            if ((kx - lam(j) * mx).norm() > opts.residual_tol * denom) {
                converged = false;
                break;
            }
        }
        if (converged)
            return finalize(lam, X.leftCols(n_modes), n_modes, eps_clamp);
    }
    throw std::runtime_error("solve_eigen: subspace iteration did not converge");
}

}  // namespace

std::vector<EigenPair> solve_eigen(const SpMatC& Kbar, const SpMatC& Mbar,
                                   int n_modes, const EigenSolveOptions& opts) {
    const int n = static_cast<int>(Kbar.rows());
    if (n_modes < 1) throw std::domain_error("solve_eigen: n_modes >= 1");
    n_modes = std::min(n_modes, n);
    if (n <= opts.dense_threshold) return solve_dense(Kbar, Mbar, n_modes);
    return solve_subspace(Kbar, Mbar, n_modes, opts);
}

}  // namespace lambdisp
