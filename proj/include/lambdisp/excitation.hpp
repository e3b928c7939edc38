#pragma once

#include <stdexcept>
#include <vector>

namespace lambdisp {

/// Multifrequent excitation: a comb of sinusoids with spacing f_step,
/// repeated n_shifts times with the whole comb offset by `shift` to fill
/// in the effective frequency resolution. Hann-windowed over `duration`.
struct ExcitationSpec {
    double f_start = 0.0;  // Hz
    double f_step = 0.0;   // Hz
    double f_max = 0.0;    // Hz
    int n_shifts = 1;
    double shift = 0.0;    // Hz
    double duration = 0.0; // s

    void validate() const;

    /// Laboratory reference setup: 5 kHz comb from 0.125 to 995.25 kHz,
    /// 40 shifts of 125 Hz, 80 ms Hann window.
    static ExcitationSpec lab_reference();
};

/// Comb frequencies of shot `shift_index`.
std::vector<double> shift_frequencies(const ExcitationSpec& spec,
                                      int shift_index);

/// All excited frequencies, shifts merged, ascending.
std::vector<double> excited_frequencies(const ExcitationSpec& spec);

/// Time-domain excitation signals, one per shift, sampled at sample_rate.
std::vector<std::vector<double>> build_excitation(const ExcitationSpec& spec,
                                                  double sample_rate);

}  // namespace lambdisp
