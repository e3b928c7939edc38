#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lambdisp {

enum class SeriesSource { FEM, Extracted };

/// Phase-velocity curves for several static load levels, resampled onto a
/// shared fd grid on ingest so that load states can be compared pointwise.
class LoadSeries {
  public:
    LoadSeries(SeriesSource source, std::vector<double> fd_grid);

    /// Resamples (fd [Hz*m], cp [m/s]) samples onto the series grid with
    /// monotone cubic interpolation. The grid must lie inside the sample
    /// coverage.
    void add(double sigma, const std::string& mode,
             const std::vector<std::pair<double, double>>& samples);

    SeriesSource source() const { return source_; }
    const std::vector<double>& fd_grid() const { return fd_grid_; }
    std::vector<double> sigmas() const;
    std::vector<std::string> modes() const;
    /// cp on the fd grid; throws std::out_of_range if absent.
    const std::vector<double>& cp(double sigma, const std::string& mode) const;

  private:
    SeriesSource source_;
    std::vector<double> fd_grid_;
    // sigma [Pa] -> mode label -> cp [m/s] on fd_grid_
    std::map<double, std::map<std::string, std::vector<double>>> entries_;
};

struct DeltaCurve {
    std::string mode;
    double sigma_ls = 0.0;   // Pa
    double sigma_hs = 0.0;   // Pa
    double delta_sigma = 0.0;  // Pa
    std::vector<std::pair<double, double>> samples;  // (fd [Hz*m], dcp [m/s])
};

struct RegressionResult {
    std::string mode;
    double fd = 0.0;         // Hz*m
    double slope = 0.0;      // (m/s)/Pa
    double intercept = 0.0;  // m/s
    double r2 = 0.0;
};

/// cp(HS) - cp(LS) pointwise on the common fd grid.
DeltaCurve delta_cp(const LoadSeries& series, double sigma_hs, double sigma_ls,
                    const std::string& mode);

/// Ordinary least squares of cp against sigma at fixed fd.
RegressionResult regress(const LoadSeries& series, double fd,
                         const std::string& mode);

/// slope(fd) * step at each probe point: mean phase-velocity change per
/// load step, from the regression over all load levels.
std::vector<std::pair<double, double>> unity_load_step(
    const LoadSeries& series, const std::vector<double>& fd_grid,
    const std::string& mode, double step = 10e6);

/// fd of the first zero crossing (linear interpolation); nullopt if none.
std::optional<double> find_sign_change(const DeltaCurve& curve);

void write_delta_csv(const std::string& path,
                     const std::vector<DeltaCurve>& curves);
void write_regression_csv(const std::string& path,
                          const std::vector<RegressionResult>& results);
void write_unity_step_csv(
    const std::string& path, const std::string& mode,
    const std::vector<std::pair<double, double>>& curve);

}  // namespace lambdisp
