#include "lambdisp/lamb_reference.hpp"

#include <cmath>
#include <complex>

namespace lambdisp {

LambProblem LambProblem::from_lame(double lambda, double mu, double rho,
                                   double thickness) {
    LambProblem p;
    p.cl = std::sqrt((lambda + 2.0 * mu) / rho);
    p.ct = std::sqrt(mu / rho);
    p.thickness = thickness;
    if (!(p.cl > p.ct && p.ct > 0.0))
        throw std::domain_error("LambProblem: requires cl > ct > 0");
    return p;
}

namespace {

// Two terms of the multiplied-out Rayleigh-Lamb determinant. Both are
// real for real and for evanescent (imaginary) p, q; the complex
// evaluation handles the hyperbolic switch implicitly.
struct CharTerms {
    double t1;
    double t2;
};

CharTerms char_terms(const LambProblem& pr, double fd, double cp,
                     LambMode mode) {
    using cplx = std::complex<double>;
    const double f = fd / pr.thickness;
    const double omega = 2.0 * M_PI * f;
    const double k = omega / cp;
    const double h = 0.5 * pr.thickness;
    const cplx p = std::sqrt(cplx(omega * omega / (pr.cl * pr.cl) - k * k));
    const cplx q = std::sqrt(cplx(omega * omega / (pr.ct * pr.ct) - k * k));
    const double qk2 = std::real(q * q) - k * k;
    CharTerms out;
    if (mode == LambMode::S0) {
        // (q^2-k^2)^2 cos(ph) sin(qh)/q + 4k^2 p sin(ph) cos(qh) = 0
        cplx sincq = (std::abs(q) * h < 1e-8) ? cplx(h) : std::sin(q * h) / q;
        out.t1 = std::real(qk2 * qk2 * std::cos(p * h) * sincq);
        out.t2 = std::real(4.0 * k * k * p * std::sin(p * h) * std::cos(q * h));
    } else {
        // (q^2-k^2)^2 cos(qh) sin(ph)/p + 4k^2 q sin(qh) cos(ph) = 0
        cplx sincp = (std::abs(p) * h < 1e-8) ? cplx(h) : std::sin(p * h) / p;
        out.t1 = std::real(qk2 * qk2 * std::cos(q * h) * sincp);
        out.t2 = std::real(4.0 * k * k * q * std::sin(q * h) * std::cos(p * h));
    }
    return out;
}

}  // namespace

double lamb_characteristic(const LambProblem& problem, double fd, double cp,
                           LambMode mode) {
    const CharTerms t = char_terms(problem, fd, cp, mode);
    const double scale = std::abs(t.t1) + std::abs(t.t2);
    if (scale == 0.0) return 0.0;
    return (t.t1 + t.t2) / scale;
}

double lamb_cp(const LambProblem& problem, double fd, LambMode mode) {
    if (fd <= 0.0) throw std::domain_error("lamb_cp: fd must be positive");
    const int n_scan = 400;
    const double cp_lo = 1e-3 * problem.ct;
    const double cp_hi =
        mode == LambMode::S0 ? 0.9999 * problem.cl : 0.9999 * problem.ct;

    auto fn = [&](double cp) { return lamb_characteristic(problem, fd, cp, mode); };

    double prev_cp = cp_lo;
    double prev_val = fn(prev_cp);
    for (int i = 1; i <= n_scan; ++i) {
        const double cp = cp_lo + (cp_hi - cp_lo) * i / n_scan;
        const double val = fn(cp);
        if (prev_val == 0.0) return prev_cp;
        if (std::signbit(val) != std::signbit(prev_val)) {
            double a = prev_cp, b = cp, fa = prev_val;
            for (int it = 0; it < 200 && (b - a) > 1e-14 * b; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = fn(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            const double root = 0.5 * (a + b);
            // Reject sign flips that are not actual roots.
            if (std::abs(fn(root)) < 1e-8) return root;
        }
        prev_cp = cp;
        prev_val = val;
    }
    throw RootFindError(
        "lamb_cp: no bracket found for fd=" + std::to_string(fd) +
        " Hz*m in cp range [" + std::to_string(cp_lo) + ", " +
        std::to_string(cp_hi) + "] m/s (" + std::to_string(n_scan) +
        "-point scan)");
}

double lamb_fd_for_k(const LambProblem& problem, double k, LambMode mode) {
    if (k <= 0.0) throw std::domain_error("lamb_fd_for_k: k must be positive");
    const double d = problem.thickness;
    // k(fd) = 2 pi (fd/d) / cp(fd) increases monotonically along the
    // fundamental branches.
    auto k_of = [&](double fd) {
        return 2.0 * M_PI * (fd / d) / lamb_cp(problem, fd, mode);
    };
    double hi = k * d * problem.ct / (2.0 * M_PI);
    int guard = 0;
    while (k_of(hi) < k) {
        hi *= 2.0;
        if (++guard > 60)
            throw RootFindError("lamb_fd_for_k: no upper bracket");
    }
    double lo = hi;
    guard = 0;
    while (k_of(lo) > k) {
        lo *= 0.5;
        if (++guard > 200)
            throw RootFindError("lamb_fd_for_k: no lower bracket");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (k_of(mid) < k ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace lambdisp
