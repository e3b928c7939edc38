#pragma once

#include "lambdisp/wavefield.hpp"

namespace lambdisp {

struct ExtractedPair {
    double f;          // Hz
    double nu;         // 1/m
    double amplitude;  // |V(nu, f)|, arbitrary units
    int track = -1;    // continuity track id (mode hint)
    bool in_window = false;
    bool outlier = false;
};

struct ExtractedPairs {
    std::vector<ExtractedPair> pairs;
    EvaluationWindow window;

    /// pairs inside the window that survived continuity filtering
    std::vector<ExtractedPair> retained() const;
};

class ExtractionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExtractionOptions {
    double peak_floor = 0.10;   // relative to the per-frequency maximum
    int median_window = 21;     // moving-median span over frequency
    double mad_factor = 3.0;    // outlier cut in median absolute deviations
    int min_track_len = 10;     // shorter tracks are discarded as incoherent
};

std::vector<double> make_nu_grid(const EvaluationWindow& window,
                                 int n_points = 2001);

/// Non-uniform 2D-DFT dispersion extraction: temporal DFT at the excited
/// frequencies, Hann-tapered spatial DFT on nu_grid, per-frequency peak
/// search and continuity-based outlier rejection.
ExtractedPairs extract_dispersion(const WavefieldRecord& rec,
                                  const ExcitationSpec& spec,
                                  const EvaluationWindow& window,
                                  const std::vector<double>& nu_grid,
                                  const ExtractionOptions& opts = {});

struct ModeTrack {
    std::string label;
    std::vector<std::pair<double, double>> samples;  // (fd [Hz*m], cp [m/s])
};

/// cp = f/nu, fd = f*d; retained pairs grouped into per-track curves.
std::vector<ModeTrack> to_phase_velocity(const ExtractedPairs& pairs, double d);

}  // namespace lambdisp
