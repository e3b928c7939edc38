#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lambdisp/analysis.hpp"
#include "lambdisp/dispersion_io.hpp"

namespace lambdisp {
namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    return g;
}

/// cp(fd, sigma) = base(fd) + slope(fd) * sigma, sampled densely
std::vector<std::pair<double, double>> model_curve(double sigma) {
    std::vector<std::pair<double, double>> s;
    for (double fd : linspace(40.0, 3200.0, 200)) {
        const double base = 5000.0 - 0.4 * fd;
        const double slope = (2.0e-7) * (fd - 1000.0);  // zero at fd = 1000
        s.emplace_back(fd, base + slope * sigma);
    }
    return s;
}

LoadSeries model_series(const std::vector<double>& sigmas_mpa) {
    LoadSeries series(SeriesSource::FEM, linspace(50.0, 3000.0, 100));
    for (double s : sigmas_mpa)
        series.add(s * 1e6, "S0", model_curve(s * 1e6));
    return series;
}

TEST(LoadSeriesTest, Validation) {
    EXPECT_THROW(LoadSeries(SeriesSource::FEM, {1.0}),
                 std::invalid_argument);
    EXPECT_THROW(LoadSeries(SeriesSource::FEM, {2.0, 1.0}),
                 std::invalid_argument);
    EXPECT_THROW(LoadSeries(SeriesSource::FEM, {1.0, 1.0, 2.0}),
                 std::invalid_argument);
    LoadSeries series(SeriesSource::Extracted, {100.0, 200.0});
    EXPECT_EQ(series.source(), SeriesSource::Extracted);
    EXPECT_THROW(series.add(0.0, "S0", {{100.0, 1.0}}),
                 std::invalid_argument);
    // grid outside the sample coverage
    EXPECT_THROW(series.add(0.0, "S0", {{120.0, 1.0}, {300.0, 2.0}}),
                 std::domain_error);
    EXPECT_THROW(series.cp(0.0, "S0"), std::out_of_range);
    series.add(0.0, "S0", {{50.0, 1.0}, {250.0, 2.0}});
    EXPECT_THROW(series.cp(0.0, "A0"), std::out_of_range);
    EXPECT_THROW(series.cp(5e6, "S0"), std::out_of_range);
    EXPECT_EQ(series.modes(), std::vector<std::string>{"S0"});
    EXPECT_EQ(series.sigmas(), std::vector<double>{0.0});
}

TEST(LoadSeriesTest, ResamplingAccuracy) {
    // resampling a smooth curve onto a grid of twice the density stays
    // within 0.1%
    const auto grid = linspace(50.0, 3000.0, 400);
    LoadSeries series(SeriesSource::FEM, grid);
    series.add(0.0, "S0", model_curve(0.0));
    const auto& cp = series.cp(0.0, "S0");
    for (size_t i = 0; i < grid.size(); ++i) {
        const double exact = 5000.0 - 0.4 * grid[i];
        EXPECT_NEAR(cp[i], exact, 1e-3 * exact);
    }
}

TEST(DeltaCpTest, SelfDifferenceIsZeroAndAntisymmetry) {
    const LoadSeries series = model_series({0.0, 50.0, 100.0});
    const DeltaCurve self = delta_cp(series, 0.0, 0.0, "S0");
    for (const auto& [fd, dcp] : self.samples) EXPECT_DOUBLE_EQ(dcp, 0.0);
    const DeltaCurve ab = delta_cp(series, 100e6, 0.0, "S0");
    const DeltaCurve ba = delta_cp(series, 0.0, 100e6, "S0");
    ASSERT_EQ(ab.samples.size(), ba.samples.size());
    EXPECT_DOUBLE_EQ(ab.delta_sigma, 100e6);
    for (size_t i = 0; i < ab.samples.size(); ++i)
        EXPECT_DOUBLE_EQ(ab.samples[i].second, -ba.samples[i].second);
}

TEST(DeltaCpTest, MatchesTheLinearModel) {
    const LoadSeries series = model_series({0.0, 50.0, 100.0});
    const DeltaCurve c = delta_cp(series, 100e6, 0.0, "S0");
    for (const auto& [fd, dcp] : c.samples) {
        const double expect = 2.0e-7 * (fd - 1000.0) * 100e6;
        EXPECT_NEAR(dcp, expect, 0.05 + 1e-3 * std::abs(expect));
    }
}

TEST(RegressTest, RecoversSlopeExactly) {
    const LoadSeries series = model_series({0.0, 25.0, 50.0, 75.0, 100.0});
    for (double fd : {100.0, 800.0, 2500.0}) {  // away from the zero-slope point
        const RegressionResult r = regress(series, fd, "S0");
        const double slope_true = 2.0e-7 * (fd - 1000.0);
        EXPECT_NEAR(r.slope, slope_true,
                    1e-10 + 5e-3 * std::abs(slope_true) + 2e-9);
        EXPECT_NEAR(r.intercept, 5000.0 - 0.4 * fd, 0.5);
        EXPECT_NEAR(r.r2, 1.0, 1e-6);
    }
}

TEST(RegressTest, DegenerateInputs) {
    LoadSeries two(SeriesSource::FEM, linspace(50.0, 3000.0, 50));
    two.add(0.0, "S0", model_curve(0.0));
    two.add(100e6, "S0", model_curve(100e6));
    EXPECT_THROW(regress(two, 1000.0, "S0"), std::domain_error);
    const LoadSeries series = model_series({0.0, 50.0, 100.0});
    EXPECT_THROW(regress(series, 10.0, "S0"), std::domain_error);
    EXPECT_THROW(regress(series, 5000.0, "S0"), std::domain_error);
}

TEST(UnityLoadStepTest, StepScaling) {
    const LoadSeries series = model_series({0.0, 50.0, 100.0});
    const std::vector<double> probes = {500.0, 2000.0};
    const auto per10 = unity_load_step(series, probes, "S0");  // 10 MPa step
    ASSERT_EQ(per10.size(), 2u);
    for (const auto& [fd, dcp] : per10) {
        const double expect = 2.0e-7 * (fd - 1000.0) * 10e6;
        EXPECT_NEAR(dcp, expect, 1e-3 * std::abs(expect) + 1e-6);
    }
    const auto zero = unity_load_step(series, probes, "S0", 0.0);
    for (const auto& [fd, dcp] : zero) EXPECT_DOUBLE_EQ(dcp, 0.0);
    // slope 2e-7 (m/s)/Pa at fd = 1001 Hz*m -> 0.2 m/s per 1 MPa step
    EXPECT_NEAR(unity_load_step(series, {1001.0}, "S0", 1e6)[0].second, 0.2,
                1e-3);
}

TEST(FindSignChangeTest, Examples) {
    DeltaCurve c;
    c.mode = "S0";
    c.samples = {{1.0, -0.5}, {2.0, 0.5}};
    const auto x = find_sign_change(c);
    ASSERT_TRUE(x.has_value());
    EXPECT_DOUBLE_EQ(*x, 1.5);
    c.samples = {{1.0, 0.5}, {2.0, 0.8}};
    EXPECT_FALSE(find_sign_change(c).has_value());
    c.samples = {{1.0, 0.0}, {2.0, 0.8}};
    EXPECT_DOUBLE_EQ(*find_sign_change(c), 1.0);
    c.samples = {{1.0, -0.5}, {2.0, 0.0}};
    EXPECT_DOUBLE_EQ(*find_sign_change(c), 2.0);
    c.samples.clear();
    EXPECT_THROW(find_sign_change(c), std::invalid_argument);
    // the model curve crosses zero at fd = 1000 Hz*m
    const LoadSeries series = model_series({0.0, 50.0, 100.0});
    const auto fd0 = find_sign_change(delta_cp(series, 100e6, 0.0, "S0"));
    ASSERT_TRUE(fd0.has_value());
    EXPECT_NEAR(*fd0, 1000.0, 5.0);
}

TEST(CsvTest, DispersionRoundtrip) {
    DispersionSet set;
    const auto [lambda, mu] = from_engineering(68e9, 0.33);
    set.material = Material::make(MaterialKind::NeoHooke, lambda, mu, 2700.0);
    set.sigma = 50e6;
    set.thickness = 1e-3;
    ModeBranch s0{"S0", {{100.0, 8.5e5, 5340.0}, {200.0, 1.7e6, 5330.0}}};
    ModeBranch a0{"A0", {{100.0, 4.0e4, 2500.0}, {200.0, 9.0e4, 2800.0}}};
    set.branches = {s0, a0};

    std::stringstream ss;
    write_dispersion_csv(ss, set);
    const DispersionTable table = read_dispersion_csv(ss, "<test>");
    EXPECT_EQ(table.model, model_name(MaterialKind::NeoHooke));
    EXPECT_NEAR(table.sigma_mpa, 50.0, 1e-9);
    EXPECT_NEAR(table.thickness, 1e-3, 1e-12);
    ASSERT_EQ(table.modes.size(), 2u);
    const auto& s0r = table.modes.at("S0");
    ASSERT_EQ(s0r.size(), 2u);
    EXPECT_NEAR(s0r[0].first, 8.5e5 * 1e-3, 1e-6);
    EXPECT_NEAR(s0r[0].second, 5340.0, 1e-6);
}

TEST(CsvTest, SchemaErrors) {
    {
        std::stringstream ss("not,a,dispersion,header\n1,2,3,4\n");
        EXPECT_THROW(read_dispersion_csv(ss, "<bad>"), SchemaError);
    }
    {
        std::stringstream ss;
        EXPECT_THROW(read_dispersion_csv(ss, "<empty>"), SchemaError);
    }
    {
        // mixed model or load level within one file is rejected
        std::stringstream ss(
            "model,sigma_MPa,mode,k_rad_per_m,f_Hz,cp_m_per_s,fd_MHzmm\n"
            "linear,0,S0,100,8.5e5,5340,0.85\n"
            "linear,50,S0,200,1.7e6,5330,1.7\n");
        EXPECT_THROW(read_dispersion_csv(ss, "<mixed>"), SchemaError);
    }
    EXPECT_THROW(model_from_name("quadratic"), SchemaError);
    EXPECT_EQ(model_from_name(model_name(MaterialKind::Murnaghan)),
              MaterialKind::Murnaghan);
}

TEST(CsvTest, AnalysisWriters) {
    const LoadSeries series = model_series({0.0, 50.0, 100.0});
    const std::string dir = ::testing::TempDir();
    const std::string delta_path = dir + "/delta.csv";
    write_delta_csv(delta_path, {delta_cp(series, 100e6, 0.0, "S0")});
    std::ifstream in(delta_path);
    std::string header;
    ASSERT_TRUE(std::getline(in, header));
    EXPECT_EQ(header, "mode,fd_MHzmm,sigma_ls_MPa,sigma_hs_MPa,delta_cp_m_per_s");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    EXPECT_EQ(rows, 100);

    const std::string reg_path = dir + "/reg.csv";
    write_regression_csv(reg_path, {regress(series, 1000.0, "S0")});
    std::ifstream rin(reg_path);
    ASSERT_TRUE(std::getline(rin, header));
    EXPECT_EQ(header, "mode,fd_MHzmm,slope_m_per_s_per_MPa,intercept_m_per_s,r2");

    const std::string step_path = dir + "/step.csv";
    write_unity_step_csv(step_path, "S0",
                         unity_load_step(series, {500.0, 2000.0}, "S0"));
    std::ifstream sin(step_path);
    ASSERT_TRUE(std::getline(sin, header));
    EXPECT_EQ(header, "mode,fd_MHzmm,delta_cp_per_step_m_per_s");
}

}  // namespace
}  // namespace lambdisp
