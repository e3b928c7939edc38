#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>

namespace lambdisp {

using Tensor2 = Eigen::Matrix3d;

/// Fourth-order tensor in 3D, stored dense. Indices run over 0..2.
class Tensor4 {
public:
    Tensor4() { data_.fill(0.0); }

    double& operator()(int i, int j, int k, int l) {
        return data_[idx(i, j, k, l)];
    }
    double operator()(int i, int j, int k, int l) const {
        return data_[idx(i, j, k, l)];
    }

    double max_abs() const;

    Tensor4& operator+=(const Tensor4& rhs);
    Tensor4 operator-(const Tensor4& rhs) const;
    Tensor4 operator*(double s) const;

private:
    static int idx(int i, int j, int k, int l) {
        return ((i * 3 + j) * 3 + k) * 3 + l;
    }
    std::array<double, 81> data_;
};

enum class MaterialKind { Linear, NeoHooke, Murnaghan };

/// Isotropic material: second-order constants (lambda, mu, rho0) plus
/// Murnaghan third-order constants (ell, m3, n3). The third-order
/// constants are only meaningful for the Murnaghan kind and are kept
/// at zero otherwise.
struct Material {
    MaterialKind kind = MaterialKind::Linear;
    double lambda = 0.0;  // Pa
    double mu = 0.0;      // Pa
    double rho0 = 0.0;    // kg/m^3
    double ell = 0.0;     // Pa
    double m3 = 0.0;      // Pa
    double n3 = 0.0;      // Pa

    static Material make(MaterialKind kind, double lambda, double mu,
                         double rho0, double ell = 0.0, double m3 = 0.0,
                         double n3 = 0.0);

    double youngs_modulus() const {
        return mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu);
    }

    bool operator==(const Material&) const = default;
};

/// lambda = E nu / ((1+nu)(1-2nu)), mu = E / (2(1+nu))
std::pair<double, double> from_engineering(double E, double nu);

struct Invariants {
    double i1;
    double i2;
    double i3;
};

/// Principal invariants of the right Cauchy-Green tensor C.
Invariants invariants(const Tensor2& C);

/// Strain-energy density per unit reference volume.
double strain_energy(const Material& mat, const Tensor2& C);

/// Second Piola-Kirchhoff stress S = 2 dW/dC.
Tensor2 pk2_stress(const Material& mat, const Tensor2& C);

/// Material tangent C_IJKL = 4 d^2W/dC dC, full minor and major symmetries.
Tensor4 material_tangent(const Material& mat, const Tensor2& C);

/// First elasticity tensor A_iJkL = dP_iJ/dF_kL
///                               = delta_ik S_JL + F_iI F_kK C_IJKL.
Tensor4 first_elasticity(const Material& mat, const Tensor2& F);

}  // namespace lambdisp
