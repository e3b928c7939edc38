#include "lambdisp/extraction.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

namespace lambdisp {

std::vector<ExtractedPair> ExtractedPairs::retained() const {
    std::vector<ExtractedPair> out;
    for (const auto& p : pairs)
        if (p.in_window && !p.outlier && p.track >= 0) out.push_back(p);
    return out;
}

std::vector<double> make_nu_grid(const EvaluationWindow& window, int n_points) {
    if (n_points < 8)
        throw std::invalid_argument("make_nu_grid: need at least 8 points");
    if (!(window.nu_max > window.nu_min) || window.nu_min <= 0.0)
        throw std::invalid_argument("make_nu_grid: empty evaluation window");
    // Extend below nu_min so low-frequency peaks still anchor the tracks.
    const double lo = 0.5 * window.nu_min;
    const double hi = window.nu_max;
    std::vector<double> grid(n_points);
    for (int i = 0; i < n_points; ++i)
        grid[i] = lo + (hi - lo) * i / (n_points - 1);
    return grid;
}

namespace {

using Complex = std::complex<double>;

/// Temporal DFT of every channel at the excited frequencies, analytic-signal
/// convention: vhat(x, f) carries the factor e^{+2 pi i nu x} of a wave
/// traveling in +x. Result is [point][frequency].
Eigen::MatrixXcd temporal_dft(const WavefieldRecord& rec,
                              const std::vector<double>& freqs) {
    const int npts = rec.n_points();
    const int nsamp = rec.n_samples();
    Eigen::MatrixXcd vhat(npts, static_cast<int>(freqs.size()));

    bool aligned = true;
    std::vector<int> bins(freqs.size());
    for (size_t j = 0; j < freqs.size(); ++j) {
        const double b = freqs[j] * nsamp / rec.sample_rate;
        bins[j] = static_cast<int>(std::llround(b));
        if (std::abs(b - bins[j]) > 1e-6 || bins[j] <= 0 ||
            bins[j] >= nsamp / 2)
            aligned = false;
    }

    if (aligned) {
        std::vector<double> time_buf(nsamp);
        std::vector<fftw_complex> spec_buf(nsamp / 2 + 1);
        fftw_plan plan = fftw_plan_dft_r2c_1d(
            nsamp, time_buf.data(), spec_buf.data(), FFTW_ESTIMATE);
        for (int ix = 0; ix < npts; ++ix) {
            for (int n = 0; n < nsamp; ++n) time_buf[n] = rec.v(ix, n);
            fftw_execute_dft_r2c(plan, time_buf.data(), spec_buf.data());
            for (size_t j = 0; j < freqs.size(); ++j) {
                // conjugate selects the e^{-i omega t} (forward-traveling)
                // component
                vhat(ix, static_cast<int>(j)) =
                    Complex(spec_buf[bins[j]][0], -spec_buf[bins[j]][1]);
            }
        }
        fftw_destroy_plan(plan);
    } else {
        // Off-bin frequencies: direct projection (small records only).
        for (int ix = 0; ix < npts; ++ix)
            for (size_t j = 0; j < freqs.size(); ++j) {
                Complex acc(0.0, 0.0);
                for (int n = 0; n < nsamp; ++n) {
                    const double ph =
                        2.0 * M_PI * freqs[j] * n / rec.sample_rate;
                    acc += rec.v(ix, n) * Complex(std::cos(ph), std::sin(ph));
                }
                vhat(ix, static_cast<int>(j)) = acc;
            }
    }
    return vhat;
}

struct Peak {
    double f, nu, amp;
};

struct Track {
    std::vector<int> pair_indices;
    double last_nu = 0.0;
    double last_f = 0.0;
};

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
        m = 0.5 * (m + v[mid - 1]);
    }
    return m;
}

}  // namespace

ExtractedPairs extract_dispersion(const WavefieldRecord& rec,
                                  const ExcitationSpec& spec,
                                  const EvaluationWindow& window,
                                  const std::vector<double>& nu_grid,
                                  const ExtractionOptions& opts) {
    spec.validate();
    if (rec.n_points() < 4 || rec.n_samples() < 4)
        throw std::invalid_argument("extract_dispersion: record too small");
    if (nu_grid.size() < 8 ||
        !std::is_sorted(nu_grid.begin(), nu_grid.end()))
        throw std::invalid_argument(
            "extract_dispersion: nu_grid must be sorted with >= 8 points");

    const auto freqs = excited_frequencies(spec);
    const int nfreq = static_cast<int>(freqs.size());
    const int npts = rec.n_points();
    const int nnu = static_cast<int>(nu_grid.size());

    Eigen::MatrixXcd vhat = temporal_dft(rec, freqs);

    // Hann spatial taper suppresses the leakage skirts of strong modes.
    for (int ix = 0; ix < npts; ++ix) {
        const double w =
            0.5 * (1.0 - std::cos(2.0 * M_PI * ix / (npts - 1)));
        vhat.row(ix) *= w;
    }

    // Spatial non-uniform DFT matrix: E(g, ix) = e^{-2 pi i nu_g x_ix}.
    Eigen::MatrixXcd E(nnu, npts);
    for (int g = 0; g < nnu; ++g)
        for (int ix = 0; ix < npts; ++ix) {
            const double ph = -2.0 * M_PI * nu_grid[g] * rec.x_positions[ix];
            E(g, ix) = Complex(std::cos(ph), std::sin(ph));
        }

    // Per-frequency peak search over blocked V = E * vhat.
    std::vector<std::vector<Peak>> peaks_by_freq(nfreq);
    const int block = 512;
    Eigen::VectorXd mag(nnu);
    for (int j0 = 0; j0 < nfreq; j0 += block) {
        const int nb = std::min(block, nfreq - j0);
        Eigen::MatrixXcd V = E * vhat.middleCols(j0, nb);
        for (int jb = 0; jb < nb; ++jb) {
            for (int g = 0; g < nnu; ++g) mag(g) = std::abs(V(g, jb));
            const double vmax = mag.maxCoeff();
            if (vmax <= 0.0) continue;
            const double floor = opts.peak_floor * vmax;
            for (int g = 1; g + 1 < nnu; ++g) {
                if (mag(g) < floor) continue;
                if (!(mag(g) > mag(g - 1) && mag(g) > mag(g + 1))) continue;
                // sub-bin refinement: parabola through log amplitudes
                const double yl = std::log(std::max(mag(g - 1), 1e-300));
                const double yc = std::log(mag(g));
                const double yr = std::log(std::max(mag(g + 1), 1e-300));
                const double denom = yl - 2.0 * yc + yr;
                double delta = 0.0;
                if (denom < -1e-12) delta = 0.5 * (yl - yr) / denom;
                delta = std::clamp(delta, -0.5, 0.5);
                const double dnu = nu_grid[g + 1] - nu_grid[g];
                peaks_by_freq[j0 + jb].push_back(
                    {freqs[j0 + jb], nu_grid[g] + delta * dnu, mag(g)});
            }
        }
    }

    ExtractedPairs result;
    result.window = window;

    // Continuity tracking: sweep frequencies ascending, attach each peak to
    // the nearest live track within a tolerance, open new tracks otherwise.
    const double nu_span = nu_grid.back() - nu_grid.front();
    const double match_tol = std::max(0.05 * nu_span,
                                      5.0 * nu_span / (nnu - 1));
    // effective frequency resolution after merging the shifted combs
    const double f_res = spec.f_step / spec.n_shifts;
    const double f_gap = 25.0 * f_res;
    std::vector<Track> tracks;
    for (int j = 0; j < nfreq; ++j) {
        std::vector<int> live;
        for (size_t t = 0; t < tracks.size(); ++t)
            if (freqs[j] - tracks[t].last_f <= f_gap)
                live.push_back(static_cast<int>(t));
        std::vector<bool> taken(live.size(), false);
        for (const auto& pk : peaks_by_freq[j]) {
            int best = -1;
            double best_d = match_tol;
            for (size_t li = 0; li < live.size(); ++li) {
                if (taken[li]) continue;
                const double d = std::abs(pk.nu - tracks[live[li]].last_nu);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(li);
                }
            }
            int tid;
            if (best >= 0) {
                taken[best] = true;
                tid = live[best];
            } else {
                tid = static_cast<int>(tracks.size());
                tracks.push_back({});
            }
            ExtractedPair pr;
            pr.f = pk.f;
            pr.nu = pk.nu;
            pr.amplitude = pk.amp;
            pr.track = tid;
            pr.in_window = window.contains(pk.f, pk.nu);
            tracks[tid].pair_indices.push_back(
                static_cast<int>(result.pairs.size()));
            tracks[tid].last_nu = pk.nu;
            tracks[tid].last_f = pk.f;
            result.pairs.push_back(pr);
        }
    }

    // Moving-median outlier rejection within each track, then drop tracks
    // too short to be coherent mode branches.
    const double mad_floor = 0.5 * nu_span / (nnu - 1);
    for (const auto& tr : tracks) {
        const int n = static_cast<int>(tr.pair_indices.size());
        const int half = opts.median_window / 2;
        for (int i = 0; i < n; ++i) {
            const int lo = std::max(0, i - half);
            const int hi = std::min(n - 1, i + half);
            std::vector<double> win, dev;
            for (int q = lo; q <= hi; ++q)
                win.push_back(result.pairs[tr.pair_indices[q]].nu);
            const double med = median_of(win);
            for (double w : win) dev.push_back(std::abs(w - med));
            const double mad =
                1.4826 * median_of(dev) + mad_floor;
            auto& p = result.pairs[tr.pair_indices[i]];
            if (std::abs(p.nu - med) > opts.mad_factor * mad)
                p.outlier = true;
        }
        int kept = 0;
        for (int idx : tr.pair_indices) {
            const auto& p = result.pairs[idx];
            if (p.in_window && !p.outlier) ++kept;
        }
        if (kept < opts.min_track_len)
            for (int idx : tr.pair_indices) result.pairs[idx].outlier = true;
    }

    if (result.retained().empty())
        throw ExtractionError(
            "extract_dispersion: no coherent dispersion pairs inside the "
            "evaluation window");
    return result;
}

std::vector<ModeTrack> to_phase_velocity(const ExtractedPairs& pairs,
                                         double d) {
    if (d <= 0.0)
        throw std::invalid_argument("to_phase_velocity: thickness > 0");
    std::map<int, std::vector<std::pair<double, double>>> by_track;
    for (const auto& p : pairs.retained())
        by_track[p.track].emplace_back(p.f * d, p.f / p.nu);
    std::vector<ModeTrack> out;
    for (auto& [tid, samples] : by_track) {
        std::sort(samples.begin(), samples.end());
        ModeTrack mt;
        mt.samples = std::move(samples);
        out.push_back(std::move(mt));
    }
    // label in order of ascending mean phase velocity: T0 slowest, ...
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        double ma = 0.0, mb = 0.0;
        for (const auto& s : a.samples) ma += s.second;
        for (const auto& s : b.samples) mb += s.second;
        return ma / a.samples.size() < mb / b.samples.size();
    });
    for (size_t i = 0; i < out.size(); ++i)
        out[i].label = "T" + std::to_string(i);
    return out;
}

}  // namespace lambdisp
