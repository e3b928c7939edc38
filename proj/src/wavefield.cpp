#include "lambdisp/wavefield.hpp"

#include <fftw3.h>

#include <cmath>
#include <random>

#include "lambdisp/interpolate.hpp"

namespace lambdisp {

EvaluationWindow evaluation_window(double l_mes, double dl, double d) {
    if (l_mes <= 20.0 * dl)
        throw std::domain_error(
            "evaluation_window: requires l_mes > 20 dl (twenty wave cycles "
            "along the path)");
    EvaluationWindow w;
    w.nu_min = 20.0 / l_mes;
    w.nu_max = 1.0 / (2.0 * dl);
    w.thickness = d;
    return w;
}

namespace {

struct ModeCurve {
    std::string label;
    Pchip nu_of_f;  // 1/m vs Hz
};

std::vector<ModeCurve> mode_curves(const DispersionSet& disp) {
    std::vector<ModeCurve> curves;
    for (const auto& br : disp.branches) {
        if (br.label.empty() || br.label[0] == 'U') continue;
        std::vector<double> f, nu;
        for (const auto& s : br.samples) {
            if (!f.empty() && s.f <= f.back()) continue;  // enforce monotone f
            f.push_back(s.f);
            nu.push_back(s.k / (2.0 * M_PI));
        }
        if (f.size() < 2) continue;
        curves.push_back({br.label, Pchip(std::move(f), std::move(nu))});
    }
    if (curves.empty())
        throw CoverageError("synthesize_wavefield: no labeled mode branches");
    return curves;
}

}  // namespace

WavefieldRecord synthesize_wavefield(const DispersionSet& disp,
                                     const ExcitationSpec& spec,
                                     const PathSpec& path, double sample_rate,
                                     const SynthesisOptions& opts) {
    spec.validate();
    if (path.dl <= 0.0 || path.l_mes <= path.dl)
        throw std::domain_error("synthesize_wavefield: bad path geometry");
    if (sample_rate <= 2.0 * spec.f_max)
        throw std::domain_error(
            "synthesize_wavefield: sample_rate below temporal Nyquist");

    const auto curves = mode_curves(disp);
    const auto freqs = excited_frequencies(spec);
    for (const auto& c : curves) {
        double lo = 0.0, hi = 0.0;
        bool bad = false;
        for (double f : freqs)
            if (!c.nu_of_f.covers(f)) {
                if (!bad) lo = hi = f;
                lo = std::min(lo, f);
                hi = std::max(hi, f);
                bad = true;
            }
        if (bad)
            throw CoverageError(
                "synthesize_wavefield: dispersion of mode " + c.label +
                " does not cover excited band [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "] Hz (coverage [" +
                std::to_string(c.nu_of_f.x_min()) + ", " +
                std::to_string(c.nu_of_f.x_max()) + "] Hz)");
    }

    WavefieldRecord rec;
    rec.sample_rate = sample_rate;
    rec.duration = spec.duration;
    const int npts = static_cast<int>(std::llround(path.l_mes / path.dl)) + 1;
    const int nsamp =
        static_cast<int>(std::llround(sample_rate * spec.duration));
    for (int i = 0; i < npts; ++i) rec.x_positions.push_back(i * path.dl);
    rec.v.resize(npts, nsamp);

    // spectral amplitude of a unit Hann-windowed tone (coherent gain)
    const double amp = 0.5;
    std::mt19937 rng(opts.seed);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * M_PI);
    struct Component {
        int bin;       // temporal DFT bin when aligned, else -1
        double f, nu, phase;
    };
    std::vector<Component> comps;
    bool aligned = true;
    for (const auto& c : curves)
        for (double f : freqs) {
            Component cm;
            cm.f = f;
            cm.nu = c.nu_of_f(f);
            cm.phase = phase_dist(rng);
            const double b = f * nsamp / sample_rate;
            cm.bin = static_cast<int>(std::llround(b));
            if (std::abs(b - cm.bin) > 1e-6 || cm.bin <= 0 ||
                cm.bin >= nsamp / 2) {
                cm.bin = -1;
                aligned = false;
            }
            comps.push_back(cm);
        }

    if (aligned) {
        // All components sit on exact DFT bins of the record: build each
        // channel in the frequency domain and inverse-transform.
        std::vector<fftw_complex> spec_buf(nsamp / 2 + 1);
        std::vector<double> time_buf(nsamp);
        fftw_plan plan = fftw_plan_dft_c2r_1d(
            nsamp, spec_buf.data(), time_buf.data(), FFTW_ESTIMATE);
        for (int ix = 0; ix < npts; ++ix) {
            const double x = rec.x_positions[ix];
            for (auto& z : spec_buf) z[0] = z[1] = 0.0;
            for (const auto& cm : comps) {
                // v += amp * cos(2 pi nu x - 2 pi f t + phase)
                const double th = 2.0 * M_PI * cm.nu * x + cm.phase;
                // c2r: x_n = sum_b 2 Re[Y_b e^{2 pi i b n / N}] (b interior)
                spec_buf[cm.bin][0] += 0.5 * amp * std::cos(th);
                spec_buf[cm.bin][1] += -0.5 * amp * std::sin(th);
            }
            fftw_execute_dft_c2r(plan, spec_buf.data(), time_buf.data());
            for (int n = 0; n < nsamp; ++n) rec.v(ix, n) = time_buf[n];
        }
        fftw_destroy_plan(plan);
    } else {
        for (int ix = 0; ix < npts; ++ix) {
            const double x = rec.x_positions[ix];
            for (int n = 0; n < nsamp; ++n) {
                const double t = n / sample_rate;
                double v = 0.0;
                for (const auto& cm : comps)
                    v += amp * std::cos(2.0 * M_PI * cm.nu * x -
                                        2.0 * M_PI * cm.f * t + cm.phase);
                rec.v(ix, n) = v;
            }
        }
    }

    if (opts.noise_std > 0.0) {
        std::normal_distribution<double> noise(0.0, opts.noise_std);
        for (int ix = 0; ix < npts; ++ix)
            for (int n = 0; n < nsamp; ++n) rec.v(ix, n) += noise(rng);
    }
    return rec;
}

}  // namespace lambdisp
