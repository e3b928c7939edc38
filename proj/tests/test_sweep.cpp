#include <gtest/gtest.h>

#include <cmath>

#include "lambdisp/lamb_reference.hpp"
#include "lambdisp/prestress.hpp"
#include "lambdisp/sweep.hpp"

namespace lambdisp {
namespace {

Material aluminium(MaterialKind kind = MaterialKind::Linear) {
    const auto [lambda, mu] = from_engineering(68e9, 0.33);
    return Material::make(kind, lambda, mu, 2700.0);
}

std::vector<double> log_grid(double k0, double k1, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = k0 * std::pow(k1 / k0, static_cast<double>(i) / (n - 1));
    return g;
}

TEST(ClassifyModeTest, SyntheticSymmetryFamilies) {
    const UnitCellMesh mesh = build_mesh(0.25e-3, 1e-3, 1, 6);
    VecC sym = VecC::Zero(mesh.n_dof());
    VecC anti = VecC::Zero(mesh.n_dof());
    VecC mixed = VecC::Zero(mesh.n_dof());
    for (int iy = 0; iy < mesh.nodes_y(); ++iy)
        for (int ix = 0; ix < mesh.nodes_x(); ++ix) {
            const int p = mesh.node_index(ix, iy);
            const double x2 = mesh.nodes(p, 1);
            // S family: u1 even, u2 odd
            sym(2 * p) = std::cos(3000.0 * x2) + 0.3;
            sym(2 * p + 1) = std::sin(4000.0 * x2);
            anti(2 * p) = std::sin(4000.0 * x2);
            anti(2 * p + 1) = std::cos(3000.0 * x2) + 0.3;
            mixed(2 * p) = 1.0 + 2.0 * x2 / 1e-3;
            mixed(2 * p + 1) = 1.0 - 3.0 * x2 / 1e-3;
        }
    EXPECT_EQ(classify_mode(sym, mesh), 'S');
    EXPECT_EQ(classify_mode(anti, mesh), 'A');
    EXPECT_EQ(classify_mode(mixed, mesh), 'U');
    EXPECT_EQ(classify_mode(VecC::Zero(mesh.n_dof()), mesh), 'U');
}

TEST(SweepTest, RejectsBadKGrid) {
    const Material mat = aluminium();
    const UnitCellMesh mesh = build_mesh(0.25e-3, 1e-3, 1, 4);
    const PreStressState st = solve_uniaxial(mat, 0.0);
    EXPECT_THROW(sweep(mat, st, mesh, {}, 2), std::domain_error);
    EXPECT_THROW(sweep(mat, st, mesh, {0.0, 100.0}, 2), std::domain_error);
    EXPECT_THROW(sweep(mat, st, mesh, {100.0, 50.0}, 2), std::domain_error);
}

TEST(SweepTest, FundamentalBranchesMatchAnalyticalReference) {
    const Material mat = aluminium();
    const UnitCellMesh mesh = build_mesh(0.25e-3, 1e-3, 1, 12);
    const auto grid = log_grid(50.0, 3000.0, 24);
    const DispersionSet set =
        sweep(mat, solve_uniaxial(mat, 0.0), mesh, grid, 2);

    const LambProblem prob = LambProblem::from_lame(mat.lambda, mat.mu,
                                                    mat.rho0, 1e-3);
    for (const char* label : {"S0", "A0"}) {
        const ModeBranch* br = set.find(label);
        ASSERT_NE(br, nullptr) << label;
        const LambMode mode =
            label[0] == 'S' ? LambMode::S0 : LambMode::A0;
        for (const auto& s : br->samples) {
            const double fd = s.f * 1e-3;  // Hz*m
            if (fd > 3000.0) continue;
            const double cp_ref = lamb_cp(prob, fd, mode);
            EXPECT_NEAR(s.cp, cp_ref, 5e-3 * cp_ref)
                << label << " k=" << s.k;
        }
    }
}

TEST(SweepTest, ParallelMatchesSerial) {
    const Material mat = aluminium(MaterialKind::NeoHooke);
    const UnitCellMesh mesh = build_mesh(0.25e-3, 1e-3, 1, 6);
    const PreStressState st = solve_uniaxial(mat, 50e6);
    const auto grid = log_grid(100.0, 2500.0, 8);
    SweepOptions serial, parallel;
    parallel.jobs = 2;
    const DispersionSet a = sweep(mat, st, mesh, grid, 2, serial);
    const DispersionSet b = sweep(mat, st, mesh, grid, 2, parallel);
    ASSERT_EQ(a.branches.size(), b.branches.size());
    for (size_t i = 0; i < a.branches.size(); ++i) {
        EXPECT_EQ(a.branches[i].label, b.branches[i].label);
        ASSERT_EQ(a.branches[i].samples.size(), b.branches[i].samples.size());
        for (size_t j = 0; j < a.branches[i].samples.size(); ++j) {
            EXPECT_DOUBLE_EQ(a.branches[i].samples[j].f,
                             b.branches[i].samples[j].f);
            EXPECT_DOUBLE_EQ(a.branches[i].samples[j].cp,
                             b.branches[i].samples[j].cp);
        }
    }
}

TEST(SweepTest, CellLengthInvarianceAtFixedElementSize) {
    // A homogeneous plate has no intrinsic periodicity: a cell twice as
    // long meshed with twice the elements must give the same dispersion.
    const Material mat = aluminium();
    const PreStressState st = solve_uniaxial(mat, 0.0);
    const auto grid = log_grid(200.0, 3000.0, 6);
    const DispersionSet one =
        sweep(mat, st, build_mesh(0.25e-3, 1e-3, 1, 8), grid, 2);
    const DispersionSet two =
        sweep(mat, st, build_mesh(0.5e-3, 1e-3, 2, 8), grid, 2);
    for (const char* label : {"S0", "A0"}) {
        const ModeBranch* ba = one.find(label);
        const ModeBranch* bb = two.find(label);
        ASSERT_NE(ba, nullptr);
        ASSERT_NE(bb, nullptr);
        ASSERT_EQ(ba->samples.size(), bb->samples.size());
        for (size_t j = 0; j < ba->samples.size(); ++j)
            EXPECT_NEAR(ba->samples[j].cp, bb->samples[j].cp,
                        1e-6 * ba->samples[j].cp);
    }
}

TEST(SweepTest, LinearizedAssemblyIsLoadIndependent) {
    const Material mat = aluminium();
    const UnitCellMesh mesh = build_mesh(0.25e-3, 1e-3, 1, 6);
    const auto grid = log_grid(100.0, 2500.0, 6);
    SweepOptions opts;
    opts.assembly.geometric_stiffness = false;
    const DispersionSet a =
        sweep(mat, solve_uniaxial(mat, 0.0), mesh, grid, 2, opts);
    const DispersionSet b =
        sweep(mat, solve_uniaxial(mat, 100e6), mesh, grid, 2, opts);
    for (const char* label : {"S0", "A0"}) {
        const ModeBranch* ba = a.find(label);
        const ModeBranch* bb = b.find(label);
        ASSERT_NE(ba, nullptr);
        ASSERT_NE(bb, nullptr);
        ASSERT_EQ(ba->samples.size(), bb->samples.size());
        for (size_t j = 0; j < ba->samples.size(); ++j)
            EXPECT_DOUBLE_EQ(ba->samples[j].cp, bb->samples[j].cp);
    }
}

TEST(SweepTest, PreStressShiftsHyperelasticVelocities) {
    const Material mat = aluminium(MaterialKind::NeoHooke);
    const UnitCellMesh mesh = build_mesh(0.25e-3, 1e-3, 1, 6);
    const std::vector<double> grid = {2000.0};
    const DispersionSet a =
        sweep(mat, solve_uniaxial(mat, 0.0), mesh, grid, 2);
    const DispersionSet b =
        sweep(mat, solve_uniaxial(mat, 100e6), mesh, grid, 2);
    const double d0 = std::abs(a.find("A0")->samples[0].cp -
                               b.find("A0")->samples[0].cp);
    EXPECT_GT(d0, 1e-3);  // measurable acoustoelastic shift
    EXPECT_LT(d0, 50.0);  // but a small perturbation
}

}  // namespace
}  // namespace lambdisp
