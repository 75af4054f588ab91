#include "hypercorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypercorr {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

const Mat2& sigma(int i) {
    static const Mat2 s[3] = {pauli_x(), pauli_y(), pauli_z()};
    return s[i];
}

}  // namespace

DensityMatrix4 DensityMatrix4::from_matrix(const Mat4& m) {
    if (!m.is_hermitian(1e-9)) throw std::invalid_argument("DensityMatrix4: matrix not Hermitian");
    const cplx tr = m.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > 1e-9)
        throw std::invalid_argument("DensityMatrix4: trace differs from 1");
    const auto ev = hermitian_eigenvalues(m);
    if (ev[3] < -1e-9) throw std::invalid_argument("DensityMatrix4: matrix not positive semidefinite");
    return DensityMatrix4(m);
}

double ProductionParams::gamma() const {
    return std::sqrt(std::max(0.0, 1.0 - alpha_psi * alpha_psi)) * std::sin(delta_phi);
}

void ProductionParams::validate() const {
    if (!(alpha_psi >= -1.0 && alpha_psi <= 1.0))
        throw std::invalid_argument("ProductionParams: alpha_psi outside [-1, 1]");
    if (!(delta_phi > -kPi - 1e-12 && delta_phi <= kPi + 1e-12))
        throw std::invalid_argument("ProductionParams: delta_phi outside (-pi, pi]");
    if (!(theta >= 0.0 && theta <= kPi))
        throw std::invalid_argument("ProductionParams: theta outside [0, pi]");
}

DensityMatrix4 singlet_state() {
    // |psi> = (|01> - |10>)/sqrt(2); rho = |psi><psi|.
    Mat4 m;
    m.at(1, 1) = 0.5;
    m.at(2, 2) = 0.5;
    m.at(1, 2) = -0.5;
    m.at(2, 1) = -0.5;
    return DensityMatrix4::from_matrix(m);
}

DensityMatrix4 maximally_mixed_state() { return DensityMatrix4::from_matrix(Mat4::identity() * 0.25); }

XStateParams xstate_coeffs(const ProductionParams& p) {
    p.validate();
    const double g = p.gamma();
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    const double c2 = std::cos(2.0 * p.theta), s2 = std::sin(2.0 * p.theta);
    const double den = 1.0 + p.alpha_psi * c * c;

    double disc = (1.0 + p.alpha_psi * c2) * (1.0 + p.alpha_psi * c2) - g * g * s2 * s2;
    if (disc < -1e-12) throw std::domain_error("xstate_coeffs: negative discriminant");
    disc = std::max(0.0, disc);
    const double root = std::sqrt(disc);

    XStateParams x;
    x.a = g * s * c / den;
    x.t1 = (1.0 + p.alpha_psi + root) / (2.0 * den);
    x.t2 = (1.0 + p.alpha_psi - root) / (2.0 * den);
    x.t3 = -p.alpha_psi * s * s / den;
    return x;
}

DensityMatrix4 build_xstate(const XStateParams& x) {
    TwoQubitDecomposition d;
    d.p_y = {0.0, 0.0, x.a};
    d.p_ybar = {0.0, 0.0, x.a};
    d.c = Mat3::diag(x.t1, x.t2, x.t3);
    return DensityMatrix4::from_matrix(compose(d));
}

TwoQubitDecomposition decompose(const DensityMatrix4& rho) { return decompose(rho.matrix()); }

TwoQubitDecomposition decompose(const Mat4& rho) {
    TwoQubitDecomposition d;
    double p[3], pbar[3];
    for (int i = 0; i < 3; ++i) {
        p[i] = (rho * kron(sigma(i), Mat2::identity())).trace().real();
        pbar[i] = (rho * kron(Mat2::identity(), sigma(i))).trace().real();
        for (int j = 0; j < 3; ++j) d.c.at(i, j) = (rho * kron(sigma(i), sigma(j))).trace().real();
    }
    d.p_y = {p[0], p[1], p[2]};
    d.p_ybar = {pbar[0], pbar[1], pbar[2]};
    return d;
}

Mat4 compose(const TwoQubitDecomposition& d) {
    Mat4 m = Mat4::identity();
    const double p[3] = {d.p_y.x, d.p_y.y, d.p_y.z};
    const double pbar[3] = {d.p_ybar.x, d.p_ybar.y, d.p_ybar.z};
    for (int i = 0; i < 3; ++i) {
        m = m + kron(sigma(i), Mat2::identity()) * p[i];
        m = m + kron(Mat2::identity(), sigma(i)) * pbar[i];
        for (int j = 0; j < 3; ++j) m = m + kron(sigma(i), sigma(j)) * d.c.at(i, j);
    }
    return m * 0.25;
}

double horodecki_max(const XStateParams& x) {
    std::array<double, 3> sq = {x.t1 * x.t1, x.t2 * x.t2, x.t3 * x.t3};
    std::sort(sq.begin(), sq.end(), std::greater<double>());
    return 2.0 * std::sqrt(sq[0] + sq[1]);
}

double alpha_from_form_factors(const FormFactors& ff) {
    if (!(ff.s > 4.0 * ff.mass * ff.mass))
        throw std::invalid_argument("alpha_from_form_factors: s must exceed 4 M^2");
    const double gm2 = std::norm(ff.g_m);
    const double ge2 = std::norm(ff.g_e);
    const double num = ff.s * gm2 - 4.0 * ff.mass * ff.mass * ge2;
    const double den = ff.s * gm2 + 4.0 * ff.mass * ff.mass * ge2;
    if (den == 0.0) throw std::invalid_argument("alpha_from_form_factors: both form factors vanish");
    return num / den;
}

}  // namespace hypercorr
