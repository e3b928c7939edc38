#include <gtest/gtest.h>

#include <cmath>

#include "lambdisp/constitutive.hpp"
#include "lambdisp/lamb_reference.hpp"

namespace lambdisp {
namespace {

LambProblem table_problem(double thickness = 1e-3) {
    const auto [lambda, mu] = from_engineering(68e9, 0.33);
    return LambProblem::from_lame(lambda, mu, 2700.0, thickness);
}

TEST(LambProblemTest, BulkVelocities) {
    const LambProblem p = table_problem();
    const auto [lambda, mu] = from_engineering(68e9, 0.33);
    EXPECT_NEAR(p.cl, std::sqrt((lambda + 2.0 * mu) / 2700.0), 1e-9 * p.cl);
    EXPECT_NEAR(p.ct, std::sqrt(mu / 2700.0), 1e-9 * p.ct);
    EXPECT_THROW(LambProblem::from_lame(1e9, -1.0, 2700.0, 1e-3),
                 std::domain_error);
}

TEST(LambCpTest, S0ThinPlateLimit) {
    const LambProblem p = table_problem();
    // plate velocity sqrt(E / (rho (1 - nu^2)))
    const double plate = std::sqrt(68e9 / (2700.0 * (1.0 - 0.33 * 0.33)));
    EXPECT_NEAR(plate, 5316.3, 0.5);
    const double cp = lamb_cp(p, 1.0, LambMode::S0);  // fd = 1 Hz*m (tiny)
    EXPECT_NEAR(cp, plate, 1e-3 * plate);
}

TEST(LambCpTest, A0FlexuralScaling) {
    const LambProblem p = table_problem();
    // cp ~ sqrt(fd) as fd -> 0: cp(fd/4)/cp(fd) -> 0.5
    const double fd = 4.0;  // Hz*m, deep in the flexural regime
    const double ratio =
        lamb_cp(p, fd / 4.0, LambMode::A0) / lamb_cp(p, fd, LambMode::A0);
    EXPECT_NEAR(ratio, 0.5, 0.01);
}

TEST(LambCpTest, RayleighHighFrequencyLimit) {
    const LambProblem p = table_problem();
    // independent oracle: root of the Rayleigh equation
    // (2 - x)^2 = 4 sqrt(1 - x ct^2/cl^2) sqrt(1 - x), x = (cR/ct)^2
    double lo = 0.0, hi = 1.0;
    auto fn = [&](double x) {
        return (2.0 - x) * (2.0 - x) -
               4.0 * std::sqrt(1.0 - x * p.ct * p.ct / (p.cl * p.cl)) *
                   std::sqrt(1.0 - x);
    };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fn(mid) < 0.0 ? lo : hi) = mid;
    }
    const double cR = p.ct * std::sqrt(0.5 * (lo + hi));
    for (LambMode mode : {LambMode::S0, LambMode::A0}) {
        const double cp = lamb_cp(p, 40e3, mode);  // fd = 40 MHz mm
        EXPECT_NEAR(cp, cR, 2e-3 * cR);
    }
}

TEST(LambCpTest, ResidualAtRoots) {
    const LambProblem p = table_problem();
    for (LambMode mode : {LambMode::S0, LambMode::A0})
        for (double fd : {10.0, 100.0, 500.0, 1000.0, 2000.0, 3000.0}) {
            const double cp = lamb_cp(p, fd, mode);
            EXPECT_LT(std::abs(lamb_characteristic(p, fd, cp, mode)), 1e-10)
                << "fd=" << fd;
        }
}

TEST(LambCpTest, FundamentalBranchMonotonicity) {
    const LambProblem p = table_problem();
    double prev_s = 1e12, prev_a = 0.0;
    for (int i = 1; i <= 60; ++i) {
        const double fd = 3000.0 * i / 60.0;
        const double cps = lamb_cp(p, fd, LambMode::S0);
        const double cpa = lamb_cp(p, fd, LambMode::A0);
        EXPECT_LE(cps, prev_s * (1.0 + 1e-12));
        EXPECT_GE(cpa, prev_a * (1.0 - 1e-12));
        prev_s = cps;
        prev_a = cpa;
    }
}

TEST(LambCpTest, InvalidInput) {
    const LambProblem p = table_problem();
    EXPECT_THROW(lamb_cp(p, 0.0, LambMode::S0), std::domain_error);
    EXPECT_THROW(lamb_cp(p, -5.0, LambMode::A0), std::domain_error);
}

TEST(LambFdForKTest, InvertsTheBranch) {
    const LambProblem p = table_problem();
    for (LambMode mode : {LambMode::S0, LambMode::A0})
        for (double k : {50.0, 500.0, 3000.0}) {
            const double fd = lamb_fd_for_k(p, k, mode);
            const double cp = lamb_cp(p, fd, mode);
            EXPECT_NEAR(2.0 * M_PI * (fd / p.thickness) / cp, k, 1e-6 * k);
        }
    EXPECT_THROW(lamb_fd_for_k(p, 0.0, LambMode::S0), std::domain_error);
}

}  // namespace
}  // namespace lambdisp
