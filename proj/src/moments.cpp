#include "hypercorr/moments.hpp"

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

MomentVector operator_moments(const DensityMatrix4& rho, const Mat4& op, int max_order) {
    return operator_moments(rho.matrix(), op, max_order);
}

MomentVector operator_moments(const Mat4& rho, const Mat4& op, int max_order) {
    if (max_order < 1 || max_order > 4)
        throw std::invalid_argument("operator_moments: max_order outside {1..4}");
    if (!op.is_hermitian(1e-9)) throw std::invalid_argument("operator_moments: operator not Hermitian");
    MomentVector m;
    double* out[4] = {&m.m1, &m.m2, &m.m3, &m.m4};
    Mat4 p = Mat4::identity();
    for (int n = 1; n <= max_order; ++n) {
        p = p * op;
        *out[n - 1] = (rho * p).trace().real();
    }
    return m;
}

CumulantVector cumulants(const MomentVector& m) {
    CumulantVector k;
    k.k1 = m.m1;
    k.k2 = m.m2 - m.m1 * m.m1;
    k.k3 = m.m3 - 3.0 * m.m1 * m.m2 + 2.0 * m.m1 * m.m1 * m.m1;
    k.k4 = m.m4 - 4.0 * m.m1 * m.m3 - 3.0 * m.m2 * m.m2 + 12.0 * m.m1 * m.m1 * m.m2 -
           6.0 * m.m1 * m.m1 * m.m1 * m.m1;
    return k;
}

CentralMoments central_moments(const MomentVector& m) {
    CentralMoments c;
    const double m1 = m.m1;
    c.mu2 = m.m2 - m1 * m1;
    c.mu3 = m.m3 - 3.0 * m1 * m.m2 + 2.0 * m1 * m1 * m1;
    c.mu4 = m.m4 - 4.0 * m1 * m.m3 + 6.0 * m1 * m1 * m.m2 - 3.0 * m1 * m1 * m1 * m1;
    return c;
}

double singlet_skewness_closed(double phi, double alpha) {
    const double a6 = std::pow(alpha, 6);
    return -std::sqrt(2.0) / 8.0 * a6 * (std::sin(phi + kPi / 4.0) - std::sin(3.0 * phi - kPi / 4.0));
}

double xstate_skewness_closed(const XStateParams& x, double alpha) {
    const double a6 = std::pow(alpha, 6);
    const double tau = x.t2 - x.t3;
    return std::sqrt(2.0) * a6 / 16.0 * std::abs(tau * (tau * tau - 3.0 * x.t1 - 1.0));
}

double singlet_mu4_closed(double phi, double alpha) {
    const double a8 = std::pow(alpha, 8);
    const double c2 = std::cos(2.0 * phi);
    return a8 / 16.0 * (2.0 - 2.0 * std::sin(2.0 * phi) + 3.0 * c2 * c2);
}

double xstate_mu4_closed(const XStateParams& x, double alpha) {
    const double a8 = std::pow(alpha, 8);
    const double tau = x.t2 - x.t3;
    const double tau2 = tau * tau;
    return a8 / 64.0 * (-3.0 * tau2 * tau2 + 4.0 * (3.0 * x.t1 - 1.0) * tau2 + 8.0 * (1.0 + x.t1));
}

PauliKernel PauliKernel::from_operator(const Mat4& m) {
    PauliKernel k;
    k.c_id = m.trace().real();
    double p[3], pbar[3];
    for (int i = 0; i < 3; ++i) {
        p[i] = (kron(sigma(i), Mat2::identity()) * m).trace().real();
        pbar[i] = (kron(Mat2::identity(), sigma(i)) * m).trace().real();
        for (int j = 0; j < 3; ++j) k.c_corr.at(i, j) = (kron(sigma(i), sigma(j)) * m).trace().real();
    }
    k.c_p = {p[0], p[1], p[2]};
    k.c_pbar = {pbar[0], pbar[1], pbar[2]};
    return k;
}

double PauliKernel::expectation(const TwoQubitDecomposition& d) const {
    double corr = 0.0;
    const double p[3] = {d.p_y.x, d.p_y.y, d.p_y.z};
    const double pb[3] = {d.p_ybar.x, d.p_ybar.y, d.p_ybar.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) corr += d.c.at(i, j) * c_corr.at(i, j);
    return 0.25 * (c_id + c_p.x * p[0] + c_p.y * p[1] + c_p.z * p[2] + c_pbar.x * pb[0] +
                   c_pbar.y * pb[1] + c_pbar.z * pb[2] + corr);
}

std::array<PauliKernel, 4> moment_kernels(const Mat4& op) {
    std::array<PauliKernel, 4> k;
    Mat4 p = Mat4::identity();
    for (int n = 0; n < 4; ++n) {
        p = p * op;
        k[static_cast<std::size_t>(n)] = PauliKernel::from_operator(p);
    }
    return k;
}

MomentVector moments_from_kernels(const std::array<PauliKernel, 4>& k,
                                  const TwoQubitDecomposition& d) {
    return {k[0].expectation(d), k[1].expectation(d), k[2].expectation(d), k[3].expectation(d)};
}

}  // namespace hypercorr
