#pragma once

#include <string>

#include "lambdisp/constitutive.hpp"
#include "lambdisp/excitation.hpp"
#include "lambdisp/wavefield.hpp"

namespace lambdisp {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed run configuration. Sections are optional; each command checks
/// that the sections it needs are present.
struct RunConfig {
    // [material]
    bool has_material = false;
    MaterialKind kind = MaterialKind::Linear;
    Material material;

    // [geometry]
    bool has_geometry = false;
    double d = 0.0;    // m
    double dx1 = 0.0;  // m
    int nx = 0;
    int ny = 0;

    // [sweep]
    bool has_sweep = false;
    double k_min = 0.0;  // rad/m
    double k_max = 0.0;  // rad/m
    int n_k = 0;
    int n_modes = 2;
    bool log_spacing = true;

    // [loads]
    bool has_loads = false;
    std::vector<double> sigmas;  // Pa, ascending

    // [wavefield]
    bool has_wavefield = false;
    ExcitationSpec excitation;
    PathSpec path{0.0, 0.0};
    double sample_rate = 2.5e6;  // Hz
    unsigned seed = 1;
    double noise_std = 0.0;

    // [output]
    std::string out_dir = ".";

    std::vector<double> k_grid() const;
};

RunConfig load_config(const std::string& path);

}  // namespace lambdisp
