#include "lambdisp/excitation.hpp"

#include <algorithm>
#include <cmath>

namespace lambdisp {

void ExcitationSpec::validate() const {
    if (f_start <= 0.0 || f_step <= 0.0 || f_max < f_start)
        throw std::domain_error(
            "ExcitationSpec: requires 0 < f_start <= f_max and f_step > 0");
    if (n_shifts < 1) throw std::domain_error("ExcitationSpec: n_shifts >= 1");
    if (n_shifts > 1 && shift * n_shifts > f_step * (1.0 + 1e-12))
        throw std::domain_error(
            "ExcitationSpec: shift stacking must fill, not overlap, the comb");
    if (duration <= 0.0)
        throw std::domain_error("ExcitationSpec: duration must be positive");
}

ExcitationSpec ExcitationSpec::lab_reference() {
    ExcitationSpec s;
    s.f_start = 125.0;
    s.f_step = 5e3;
    s.f_max = 995.25e3;
    s.n_shifts = 40;
    s.shift = 125.0;
    s.duration = 80e-3;
    return s;
}

std::vector<double> shift_frequencies(const ExcitationSpec& spec,
                                      int shift_index) {
    spec.validate();
    std::vector<double> out;
    for (int j = 0;; ++j) {
        const double f = spec.f_start + j * spec.f_step + shift_index * spec.shift;
        if (f > spec.f_max * (1.0 + 1e-12)) break;
        out.push_back(f);
    }
    return out;
}

std::vector<double> excited_frequencies(const ExcitationSpec& spec) {
    std::vector<double> out;
    for (int s = 0; s < spec.n_shifts; ++s) {
        const auto fs = shift_frequencies(spec, s);
        out.insert(out.end(), fs.begin(), fs.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<double>> build_excitation(const ExcitationSpec& spec,
                                                  double sample_rate) {
    spec.validate();
    if (sample_rate <= 0.0)
        throw std::domain_error("build_excitation: sample_rate > 0 required");
    const int n = static_cast<int>(std::llround(sample_rate * spec.duration));
    std::vector<std::vector<double>> signals;
    for (int s = 0; s < spec.n_shifts; ++s) {
        const auto freqs = shift_frequencies(spec, s);
        std::vector<double> sig(n, 0.0);
        for (int i = 0; i < n; ++i) {
            const double t = i / sample_rate;
            double v = 0.0;
            for (double f : freqs) v += std::sin(2.0 * M_PI * f * t);
            const double hann =
                0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));
            sig[i] = v * hann;
        }
        signals.push_back(std::move(sig));
    }
    return signals;
}

}  // namespace lambdisp
