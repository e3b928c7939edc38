#include "lambdisp/constitutive.hpp"

#include <cmath>

namespace lambdisp {

double Tensor4::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Tensor4& Tensor4::operator+=(const Tensor4& rhs) {
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += rhs.data_[n];
    return *this;
}

Tensor4 Tensor4::operator-(const Tensor4& rhs) const {
    Tensor4 out;
    for (std::size_t n = 0; n < data_.size(); ++n)
        out.data_[n] = data_[n] - rhs.data_[n];
    return out;
}

Tensor4 Tensor4::operator*(double s) const {
    Tensor4 out;
    for (std::size_t n = 0; n < data_.size(); ++n) out.data_[n] = data_[n] * s;
    return out;
}

Material Material::make(MaterialKind kind, double lambda, double mu,
                        double rho0, double ell, double m3, double n3) {
    if (mu <= 0.0)
        throw std::domain_error("Material: mu must be positive");
    if (rho0 <= 0.0)
        throw std::domain_error("Material: rho0 must be positive");
    if (3.0 * lambda + 2.0 * mu <= 0.0)
        throw std::domain_error("Material: bulk modulus must be positive");
    Material mat;
    mat.kind = kind;
    mat.lambda = lambda;
    mat.mu = mu;
    mat.rho0 = rho0;
    if (kind == MaterialKind::Murnaghan) {
        mat.ell = ell;
        mat.m3 = m3;
        mat.n3 = n3;
    }
    return mat;
}

std::pair<double, double> from_engineering(double E, double nu) {
    if (E <= 0.0)
        throw std::domain_error("from_engineering: E must be positive");
    if (nu <= -1.0 || nu >= 0.5)
        throw std::domain_error("from_engineering: nu must be in (-1, 0.5)");
    double lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    double mu = E / (2.0 * (1.0 + nu));
    return {lambda, mu};
}

namespace {

void check_spd(const Tensor2& C) {
    double scale = C.norm();
    if ((C - C.transpose()).norm() > 1e-10 * scale)
        throw std::domain_error("right Cauchy-Green tensor must be symmetric");
    Eigen::LLT<Tensor2> llt(C);
    if (llt.info() != Eigen::Success)
        throw std::domain_error(
            "right Cauchy-Green tensor must be positive definite");
}

// First and second derivatives of W with respect to the invariants.
struct InvariantDerivs {
    double w1 = 0.0, w2 = 0.0, w3 = 0.0;
    double w11 = 0.0, w12 = 0.0, w33 = 0.0;
};

InvariantDerivs murnaghan_derivs(const Material& mat, const Invariants& iv) {
    const double l = mat.lambda, mu = mat.mu;
    const double el = mat.ell, m = mat.m3, n = mat.n3;
    const double j1 = iv.i1 - 3.0;
    InvariantDerivs d;
    d.w1 = l / 4.0 * j1 + mu / 4.0 * (2.0 * iv.i1 - 2.0) +
           el / 8.0 * j1 * j1 +
           m / 12.0 * ((iv.i1 * iv.i1 - 3.0 * iv.i2) + j1 * 2.0 * iv.i1) +
           n / 8.0;
    d.w2 = -mu / 2.0 - m / 4.0 * j1 - n / 8.0;
    d.w3 = n / 8.0;
    d.w11 = l / 4.0 + mu / 2.0 + el / 4.0 * j1 + m / 2.0 * (iv.i1 - 1.0);
    d.w12 = -m / 4.0;
    return d;
}

InvariantDerivs neo_hooke_derivs(const Material& mat, const Invariants& iv) {
    // W = lambda/2 (ln J)^2 - mu ln J + mu/2 (I1 - 3),  ln J = ln(I3)/2
    const double lnj = 0.5 * std::log(iv.i3);
    InvariantDerivs d;
    d.w1 = mat.mu / 2.0;
    d.w3 = (mat.lambda * lnj - mat.mu) / (2.0 * iv.i3);
    d.w33 = (mat.lambda * (1.0 - 2.0 * lnj) + 2.0 * mat.mu) /
            (4.0 * iv.i3 * iv.i3);
    return d;
}

}  // namespace

Invariants invariants(const Tensor2& C) {
    check_spd(C);
    Invariants iv;
    iv.i1 = C.trace();
    iv.i2 = 0.5 * (iv.i1 * iv.i1 - (C * C).trace());
    iv.i3 = C.determinant();
    return iv;
}

double strain_energy(const Material& mat, const Tensor2& C) {
    const Invariants iv = invariants(C);
    switch (mat.kind) {
        case MaterialKind::Linear: {
            // St. Venant-Kirchhoff, the linear reference model.
            Tensor2 E = 0.5 * (C - Tensor2::Identity());
            double tr = E.trace();
            return 0.5 * mat.lambda * tr * tr +
                   mat.mu * (E.array() * E.array()).sum();
        }
        case MaterialKind::NeoHooke: {
            if (iv.i3 <= 0.0)
                throw std::domain_error("strain_energy: I3 must be positive");
            double lnj = 0.5 * std::log(iv.i3);
            return 0.5 * mat.lambda * lnj * lnj - mat.mu * lnj +
                   0.5 * mat.mu * (iv.i1 - 3.0);
        }
        case MaterialKind::Murnaghan: {
            const double j1 = iv.i1 - 3.0;
            return mat.lambda / 8.0 * j1 * j1 +
                   mat.mu / 4.0 *
                       (iv.i1 * iv.i1 - 2.0 * iv.i1 - 2.0 * iv.i2 + 3.0) +
                   mat.ell / 24.0 * j1 * j1 * j1 +
                   mat.m3 / 12.0 * j1 * (iv.i1 * iv.i1 - 3.0 * iv.i2) +
                   mat.n3 / 8.0 * (iv.i1 - iv.i2 + iv.i3 - 1.0);
        }
    }
    throw std::logic_error("unknown material kind");
}

Tensor2 pk2_stress(const Material& mat, const Tensor2& C) {
    const Invariants iv = invariants(C);
    const Tensor2 I = Tensor2::Identity();
    if (mat.kind == MaterialKind::Linear) {
        Tensor2 E = 0.5 * (C - I);
        return mat.lambda * E.trace() * I + 2.0 * mat.mu * E;
    }
    if (iv.i3 <= 0.0)
        throw std::domain_error("pk2_stress: I3 must be positive");
    const InvariantDerivs d = mat.kind == MaterialKind::NeoHooke
                                  ? neo_hooke_derivs(mat, iv)
                                  : murnaghan_derivs(mat, iv);
    // dI1/dC = I, dI2/dC = I1 I - C, dI3/dC = I3 C^-1
    const Tensor2 Cinv = C.inverse();
    Tensor2 S = 2.0 * (d.w1 * I + d.w2 * (iv.i1 * I - C) +
                       d.w3 * iv.i3 * Cinv);
    return 0.5 * (S + S.transpose().eval());
}

Tensor4 material_tangent(const Material& mat, const Tensor2& C) {
    const Invariants iv = invariants(C);
    const Tensor2 I = Tensor2::Identity();
    Tensor4 cc;
    if (mat.kind == MaterialKind::Linear) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        cc(i, j, k, l) =
                            mat.lambda * I(i, j) * I(k, l) +
                            mat.mu * (I(i, k) * I(j, l) + I(i, l) * I(j, k));
        return cc;
    }
    if (iv.i3 <= 0.0)
        throw std::domain_error("material_tangent: I3 must be positive");
    const InvariantDerivs d = mat.kind == MaterialKind::NeoHooke
                                  ? neo_hooke_derivs(mat, iv)
                                  : murnaghan_derivs(mat, iv);
    const Tensor2 Cinv = C.inverse();
    const Tensor2 G = iv.i1 * I - C;  // dI2/dC
    const Tensor2 H = iv.i3 * Cinv;   // dI3/dC
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    double v = 0.0;
                    v += d.w11 * I(i, j) * I(k, l);
                    v += d.w12 * (I(i, j) * G(k, l) + G(i, j) * I(k, l));
                    v += d.w33 * H(i, j) * H(k, l);
                    // d^2 I2 / dC dC = I (x) I - Isym
                    v += d.w2 * (I(i, j) * I(k, l) -
                                 0.5 * (I(i, k) * I(j, l) + I(i, l) * I(j, k)));
                    // d^2 I3 / dC dC = I3 (Cinv (x) Cinv - Icinv)
                    v += d.w3 * iv.i3 *
                         (Cinv(i, j) * Cinv(k, l) -
                          0.5 * (Cinv(i, k) * Cinv(j, l) +
                                 Cinv(i, l) * Cinv(j, k)));
                    cc(i, j, k, l) = 4.0 * v;
                }
    return cc;
}

Tensor4 first_elasticity(const Material& mat, const Tensor2& F) {
    if (F.determinant() <= 0.0)
        throw std::domain_error("first_elasticity: det F must be positive");
    const Tensor2 C = F.transpose() * F;
    const Tensor2 S = pk2_stress(mat, C);
    const Tensor4 cc = material_tangent(mat, C);
    Tensor4 A;
    for (int i = 0; i < 3; ++i)
        for (int J = 0; J < 3; ++J)
            for (int k = 0; k < 3; ++k)
                for (int L = 0; L < 3; ++L) {
                    double v = (i == k) ? S(J, L) : 0.0;
                    for (int I = 0; I < 3; ++I)
                        for (int K = 0; K < 3; ++K)
                            v += F(i, I) * F(k, K) * cc(I, J, K, L);
                    A(i, J, k, L) = v;
                }
    return A;
}

}  // namespace lambdisp
