#pragma once

#include <stdexcept>
#include <vector>

namespace lambdisp {

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolant. Preserves
/// monotone data without overshoot.
class Pchip {
public:
    Pchip(std::vector<double> x, std::vector<double> y);

    double operator()(double xq) const;
    bool covers(double xq) const { return xq >= x_.front() && xq <= x_.back(); }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::vector<double> x_, y_, d_;
};

}  // namespace lambdisp
