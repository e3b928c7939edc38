#include "lambdisp/assembly.hpp"

#include <vector>

namespace lambdisp {

namespace {

// 1D quadratic Lagrange basis on [-1, 1], nodes at -1, 0, +1.
void shape1d(double x, double* val, double* der) {
    val[0] = 0.5 * x * (x - 1.0);
    val[1] = 1.0 - x * x;
    val[2] = 0.5 * x * (x + 1.0);
    der[0] = x - 0.5;
    der[1] = -2.0 * x;
    der[2] = x + 0.5;
}

struct GaussPoint {
    double xi, eta, w;
};

std::vector<GaussPoint> gauss3x3() {
    const double g = std::sqrt(3.0 / 5.0);
    const double pts[3] = {-g, 0.0, g};
    const double wts[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    std::vector<GaussPoint> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.push_back({pts[i], pts[j], wts[i] * wts[j]});
    return out;
}

}  // namespace

AssembledSystem assemble(const UnitCellMesh& mesh, const Material& mat,
                         const PreStressState& state,
                         const AssemblyOptions& opts) {
    if (!(state.material == mat))
        throw std::invalid_argument(
            "assemble: pre-stress state was solved with a different material");

    Tensor2 S = state.S_s;
    Tensor4 A;
    if (opts.geometric_stiffness) {
        A = first_elasticity(mat, state.F_s);
    } else {
        A = first_elasticity(mat, Tensor2::Identity());
        S = Tensor2::Zero();
    }
    // Material part of the tangent; the delta_ik S_JL remainder goes to Ks.
    Tensor4 Amat = A;
    for (int i = 0; i < 3; ++i)
        for (int J = 0; J < 3; ++J)
            for (int L = 0; L < 3; ++L) Amat(i, J, i, L) -= S(J, L);

    const int ndof = mesh.n_dof();
    std::vector<Eigen::Triplet<double>> tm, tkd, tks;
    const auto gps = gauss3x3();

    Eigen::Matrix<double, 9, 2> coords;
    double lv[3], ld[3], mv[3], md[3];
    for (const auto& conn : mesh.elements) {
        for (int a = 0; a < 9; ++a) coords.row(a) = mesh.nodes.row(conn[a]);
        for (const auto& gp : gps) {
            shape1d(gp.xi, lv, ld);
            shape1d(gp.eta, mv, md);
            Eigen::Matrix<double, 9, 1> N;
            Eigen::Matrix<double, 9, 2> dNdXi;
            for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a) {
                    const int n = b * 3 + a;
                    N(n) = lv[a] * mv[b];
                    dNdXi(n, 0) = ld[a] * mv[b];
                    dNdXi(n, 1) = lv[a] * md[b];
                }
            const Eigen::Matrix2d Jac = dNdXi.transpose() * coords;
            const double detJ = Jac.determinant();
            if (detJ <= 0.0)
                throw std::runtime_error("assemble: non-positive Jacobian");
            const Eigen::Matrix<double, 9, 2> dNdX =
                dNdXi * Jac.inverse().transpose().eval();
            const double w = gp.w * detJ;

            for (int a = 0; a < 9; ++a)
                for (int b = 0; b < 9; ++b) {
                    const double mab = mat.rho0 * N(a) * N(b) * w;
                    double gs = 0.0;  // dN_a/dX_J S_JL dN_b/dX_L
                    for (int J = 0; J < 2; ++J)
                        for (int L = 0; L < 2; ++L)
                            gs += dNdX(a, J) * S(J, L) * dNdX(b, L);
                    gs *= w;
                    for (int i = 0; i < 2; ++i) {
                        const int ra = 2 * conn[a] + i;
                        tm.emplace_back(ra, 2 * conn[b] + i, mab);
                        tks.emplace_back(ra, 2 * conn[b] + i, gs);
                        for (int k = 0; k < 2; ++k) {
                            double kd = 0.0;
                            for (int J = 0; J < 2; ++J)
                                for (int L = 0; L < 2; ++L)
                                    kd += dNdX(a, J) * Amat(i, J, k, L) *
                                          dNdX(b, L);
                            tkd.emplace_back(ra, 2 * conn[b] + k, kd * w);
                        }
                    }
                }
        }
    }

    AssembledSystem sys;
    sys.n_dof = ndof;
    sys.M.resize(ndof, ndof);
    sys.Kd.resize(ndof, ndof);
    sys.Ks.resize(ndof, ndof);
    sys.M.setFromTriplets(tm.begin(), tm.end());
    sys.Kd.setFromTriplets(tkd.begin(), tkd.end());
    sys.Ks.setFromTriplets(tks.begin(), tks.end());
    return sys;
}

}  // namespace lambdisp
