#pragma once

#include <Eigen/Dense>
#include <limits>

#include "lambdisp/excitation.hpp"
#include "lambdisp/sweep.hpp"

namespace lambdisp {

/// Sampled out-of-plane velocity field v(x1, t) along the measurement path.
struct WavefieldRecord {
    Eigen::MatrixXd v;  // [measurement point][time sample], m/s
    std::vector<double> x_positions;  // m, uniform spacing dl
    double sample_rate = 0.0;         // Hz
    double duration = 0.0;            // s

    int n_points() const { return static_cast<int>(v.rows()); }
    int n_samples() const { return static_cast<int>(v.cols()); }
};

struct PathSpec {
    double l_mes;  // m, measurement path length
    double dl;     // m, spacing of measurement points
};

struct EvaluationWindow {
    double nu_min = 0.0;  // 1/m, 20 cycles over the path
    double nu_max = 0.0;  // 1/m, spatial Nyquist
    double f_min = 0.0;   // Hz
    double f_max = std::numeric_limits<double>::infinity();  // Hz
    double thickness = 0.0;  // m

    double nu_min_d() const { return nu_min * thickness; }  // dimensionless
    double nu_max_d() const { return nu_max * thickness; }

    bool contains(double f, double nu) const {
        return nu >= nu_min && nu <= nu_max && f >= f_min && f <= f_max;
    }
};

EvaluationWindow evaluation_window(double l_mes, double dl, double d);

class CoverageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SynthesisOptions {
    unsigned seed = 1;       // fixes the per-component phases
    double noise_std = 0.0;  // m/s, optional additive Gaussian noise
};

/// In-silico wavefield: every labeled mode branch contributes a traveling
/// cosine at every excited frequency, with the wavenumber interpolated
/// from the dispersion set. No reflections, no attenuation.
WavefieldRecord synthesize_wavefield(const DispersionSet& disp,
                                     const ExcitationSpec& spec,
                                     const PathSpec& path, double sample_rate,
                                     const SynthesisOptions& opts = {});

}  // namespace lambdisp
