#pragma once

#include <stdexcept>
#include <string>

namespace lambdisp {

enum class LambMode { S0, A0 };

/// Unstressed isotropic plate described by its bulk wave velocities.
struct LambProblem {
    double cl;         // m/s, longitudinal bulk velocity
    double ct;         // m/s, shear bulk velocity
    double thickness;  // m

    static LambProblem from_lame(double lambda, double mu, double rho,
                                 double thickness);
};

class RootFindError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Normalized residual of the Rayleigh-Lamb characteristic function at
/// (fd, cp). Zero at a dispersion root; magnitude scaled to O(1).
double lamb_characteristic(const LambProblem& problem, double fd, double cp,
                           LambMode mode);

/// Phase velocity of the fundamental S0/A0 branch at frequency-thickness
/// fd (Hz*m). Bracketing pre-scan plus bisection.
double lamb_cp(const LambProblem& problem, double fd, LambMode mode);

/// Inverse parameterization: fd (Hz*m) of the fundamental branch at
/// wavenumber k (rad/m). Monotone bisection on k(fd).
double lamb_fd_for_k(const LambProblem& problem, double k, LambMode mode);

}  // namespace lambdisp
