#include "lambdisp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "lambdisp/interpolate.hpp"

namespace lambdisp {

namespace {

bool sigma_close(double a, double b) {
    return std::abs(a - b) <= std::max(1.0, 1e-9 * std::abs(b));
}

}  // namespace

LoadSeries::LoadSeries(SeriesSource source, std::vector<double> fd_grid)
    : source_(source), fd_grid_(std::move(fd_grid)) {
    if (fd_grid_.size() < 2 ||
        !std::is_sorted(fd_grid_.begin(), fd_grid_.end()))
        throw std::invalid_argument(
            "LoadSeries: fd grid must be sorted with >= 2 points");
    if (std::adjacent_find(fd_grid_.begin(), fd_grid_.end()) !=
        fd_grid_.end())
        throw std::invalid_argument("LoadSeries: fd grid has duplicates");
}

void LoadSeries::add(double sigma, const std::string& mode,
                     const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("LoadSeries::add: need >= 2 samples");
    std::vector<std::pair<double, double>> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> fd, cp;
    for (const auto& [x, y] : sorted) {
        if (!fd.empty() && x <= fd.back())
            throw std::invalid_argument(
                "LoadSeries::add: duplicate fd sample");
        fd.push_back(x);
        cp.push_back(y);
    }
    Pchip interp(std::move(fd), std::move(cp));
    if (fd_grid_.front() < interp.x_min() || fd_grid_.back() > interp.x_max())
        throw std::domain_error(
            "LoadSeries::add: fd grid extends outside sample coverage [" +
            std::to_string(interp.x_min()) + ", " +
            std::to_string(interp.x_max()) + "] Hz*m");
    std::vector<double> resampled(fd_grid_.size());
    for (size_t i = 0; i < fd_grid_.size(); ++i)
        resampled[i] = interp(fd_grid_[i]);

    for (auto& [s, by_mode] : entries_)
        if (sigma_close(s, sigma)) {
            by_mode[mode] = std::move(resampled);
            return;
        }
    entries_[sigma][mode] = std::move(resampled);
}

std::vector<double> LoadSeries::sigmas() const {
    std::vector<double> out;
    for (const auto& [s, by_mode] : entries_) out.push_back(s);
    return out;
}

std::vector<std::string> LoadSeries::modes() const {
    std::vector<std::string> out;
    for (const auto& [s, by_mode] : entries_)
        for (const auto& [m, cp] : by_mode)
            if (std::find(out.begin(), out.end(), m) == out.end())
                out.push_back(m);
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<double>& LoadSeries::cp(double sigma,
                                          const std::string& mode) const {
    for (const auto& [s, by_mode] : entries_)
        if (sigma_close(s, sigma)) {
            auto it = by_mode.find(mode);
            if (it == by_mode.end())
                throw std::out_of_range("LoadSeries: mode " + mode +
                                        " absent at sigma " +
                                        std::to_string(sigma));
            return it->second;
        }
    throw std::out_of_range("LoadSeries: no entry at sigma " +
                            std::to_string(sigma) + " Pa");
}

DeltaCurve delta_cp(const LoadSeries& series, double sigma_hs, double sigma_ls,
                    const std::string& mode) {
    const auto& hs = series.cp(sigma_hs, mode);
    const auto& ls = series.cp(sigma_ls, mode);
    DeltaCurve curve;
    curve.mode = mode;
    curve.sigma_ls = sigma_ls;
    curve.sigma_hs = sigma_hs;
    curve.delta_sigma = sigma_hs - sigma_ls;
    const auto& grid = series.fd_grid();
    for (size_t i = 0; i < grid.size(); ++i)
        curve.samples.emplace_back(grid[i], hs[i] - ls[i]);
    return curve;
}

RegressionResult regress(const LoadSeries& series, double fd,
                         const std::string& mode) {
    const auto sigmas = series.sigmas();
    if (sigmas.size() < 3)
        throw std::domain_error("regress: need >= 3 load levels");
    if (std::abs(sigmas.back() - sigmas.front()) <=
        std::max(1.0, 1e-9 * std::abs(sigmas.back())))
        throw std::domain_error("regress: degenerate (all sigma equal)");
    const auto& grid = series.fd_grid();
    if (fd < grid.front() || fd > grid.back())
        throw std::domain_error("regress: fd outside series grid");
    // locate fd on the common grid
    const auto hi_it = std::lower_bound(grid.begin(), grid.end(), fd);
    const size_t hi = std::min<size_t>(
        std::max<std::ptrdiff_t>(1, hi_it - grid.begin()), grid.size() - 1);
    const size_t lo = hi - 1;
    const double t = (fd - grid[lo]) / (grid[hi] - grid[lo]);

    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(sigmas.size());
    std::vector<double> xs, ys;
    for (double s : sigmas) {
        const auto& cp = series.cp(s, mode);
        const double y = (1.0 - t) * cp[lo] + t * cp[hi];
        xs.push_back(s);
        ys.push_back(y);
        sx += s;
        sy += y;
        sxx += s * s;
        sxy += s * y;
        syy += y * y;
    }
    RegressionResult r;
    r.mode = mode;
    r.fd = fd;
    const double den = n * sxx - sx * sx;
    r.slope = (n * sxy - sx * sy) / den;
    r.intercept = (sy - r.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ymean = sy / n;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (r.intercept + r.slope * xs[i]);
        ss_res += e * e;
        ss_tot += (ys[i] - ymean) * (ys[i] - ymean);
    }
    r.r2 = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    return r;
}

std::vector<std::pair<double, double>> unity_load_step(
    const LoadSeries& series, const std::vector<double>& fd_grid,
    const std::string& mode, double step) {
    std::vector<std::pair<double, double>> out;
    for (double fd : fd_grid)
        out.emplace_back(fd, regress(series, fd, mode).slope * step);
    return out;
}

std::optional<double> find_sign_change(const DeltaCurve& curve) {
    if (curve.samples.empty())
        throw std::invalid_argument("find_sign_change: empty curve");
    for (size_t i = 0; i + 1 < curve.samples.size(); ++i) {
        const auto& [x0, y0] = curve.samples[i];
        const auto& [x1, y1] = curve.samples[i + 1];
        if (y0 == 0.0) return x0;
        if (y0 * y1 < 0.0) return x0 + (x1 - x0) * (-y0) / (y1 - y0);
    }
    if (curve.samples.back().second == 0.0) return curve.samples.back().first;
    return std::nullopt;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << std::setprecision(12);
    return out;
}

}  // namespace

void write_delta_csv(const std::string& path,
                     const std::vector<DeltaCurve>& curves) {
    auto out = open_out(path);
    out << "mode,fd_MHzmm,sigma_ls_MPa,sigma_hs_MPa,delta_cp_m_per_s\n";
    for (const auto& c : curves)
        for (const auto& [fd, dcp] : c.samples)
            out << c.mode << ',' << fd * 1e-3 << ',' << c.sigma_ls * 1e-6
                << ',' << c.sigma_hs * 1e-6 << ',' << dcp << '\n';
}

void write_regression_csv(const std::string& path,
                          const std::vector<RegressionResult>& results) {
    auto out = open_out(path);
    out << "mode,fd_MHzmm,slope_m_per_s_per_MPa,intercept_m_per_s,r2\n";
    for (const auto& r : results)
        out << r.mode << ',' << r.fd * 1e-3 << ',' << r.slope * 1e6 << ','
            << r.intercept << ',' << r.r2 << '\n';
}

void write_unity_step_csv(
    const std::string& path, const std::string& mode,
    const std::vector<std::pair<double, double>>& curve) {
    auto out = open_out(path);
    out << "mode,fd_MHzmm,delta_cp_per_step_m_per_s\n";
    for (const auto& [fd, dcp] : curve)
        out << mode << ',' << fd * 1e-3 << ',' << dcp << '\n';
}

}  // namespace lambdisp
