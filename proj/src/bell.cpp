#include "hypercorr/bell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypercorr {

namespace {

constexpr double kOrthTol = 1e-12;

Mat4 commutator_kron(const Vec3& a, const Vec3& a_prime, const Vec3& b, const Vec3& b_prime) {
    const Mat2 ca = pauli_dot(a) * pauli_dot(a_prime) - pauli_dot(a_prime) * pauli_dot(a);
    const Mat2 cb = pauli_dot(b) * pauli_dot(b_prime) - pauli_dot(b_prime) * pauli_dot(b);
    return kron(ca, cb);
}

}  // namespace

MeasurementSettings MeasurementSettings::make(const Vec3& a, const Vec3& a_prime, const Vec3& b,
                                              const Vec3& b_prime) {
    for (const Vec3* v : {&a, &a_prime, &b, &b_prime})
        if (!is_unit(*v)) throw std::invalid_argument("MeasurementSettings: non-unit direction");
    MeasurementSettings s{a, a_prime, b, b_prime, false};
    s.orthogonal = std::abs(a.dot(a_prime)) <= kOrthTol && std::abs(b.dot(b_prime)) <= kOrthTol;
    return s;
}

MeasurementSettings settings_phi(double phi) {
    return MeasurementSettings::make({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},
                                     {std::cos(phi), std::sin(phi), 0.0},
                                     {-std::sin(phi), std::cos(phi), 0.0});
}

MeasurementSettings settings_jpsi() {
    const double r = 1.0 / std::sqrt(2.0);
    return MeasurementSettings::make({0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}, {0.0, r, -r}, {0.0, r, r});
}

MeasurementSettings ch_optimal_settings(double t1, double t2, double t3) {
    const Vec3 axes[3] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    const double t[3] = {t1, t2, t3};
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int i, int j) { return std::abs(t[i]) > std::abs(t[j]); });
    const int i = order[0], j = order[1];
    const double s1 = std::abs(t[i]), s2 = std::abs(t[j]);
    const double chi = (s1 == 0.0 && s2 == 0.0) ? 0.25 * 3.141592653589793 : std::atan2(s1, s2);

    const double sgn1 = t[i] >= 0.0 ? 1.0 : -1.0;
    const double sgn2 = t[j] >= 0.0 ? 1.0 : -1.0;
    const Vec3 a = sgn1 * axes[i];
    const Vec3 a_prime = sgn2 * axes[j];
    // Orientation chosen so the correlation part is negative; with
    // alpha_a alpha_b < 0 this maximizes the CH expectation.
    const Vec3 b = -(std::cos(chi) * axes[j] + std::sin(chi) * axes[i]);
    const Vec3 b_prime = -(std::cos(chi) * axes[j] - std::sin(chi) * axes[i]);
    return MeasurementSettings::make(a, a_prime, b, b_prime);
}

CHOperator ch_operator(const MeasurementSettings& s, double alpha_a, double alpha_b, double eta_a,
                       double eta_b) {
    const auto ea = [&](const Vec3& n) {
        return povm_effect(GeneralPOVM::make(n, alpha_a, eta_a), Outcome::plus);
    };
    const auto eb = [&](const Vec3& n) {
        return povm_effect(GeneralPOVM::make(n, alpha_b, eta_b), Outcome::plus);
    };
    const Mat2 i2 = Mat2::identity();

    Mat4 m = kron(ea(s.a), eb(s.b)) - kron(ea(s.a), eb(s.b_prime)) + kron(ea(s.a_prime), eb(s.b)) +
             kron(ea(s.a_prime), eb(s.b_prime)) - kron(ea(s.a_prime), i2) * (1.0 + eta_b) -
             kron(i2, eb(s.b)) * (1.0 + eta_a) +
             Mat4::identity() *
                 (0.5 * ((1.0 + eta_a) * (1.0 + eta_b) - std::abs(alpha_a * alpha_b)));
    return CHOperator{m, alpha_a, alpha_b, eta_a, eta_b, s};
}

double ch_functional(double p_ab, double p_ab_prime, double p_aprime_b, double p_aprime_bprime,
                     double p_aprime, double p_b, double alpha_a, double alpha_b, double eta_a,
                     double eta_b) {
    for (double p : {p_ab, p_ab_prime, p_aprime_b, p_aprime_bprime, p_aprime, p_b})
        if (!(p >= -1e-12 && p <= 1.0 + 1e-12))
            throw std::invalid_argument("ch_functional: probability outside [0, 1]");
    return p_ab - p_ab_prime + p_aprime_b + p_aprime_bprime - (1.0 + eta_b) * p_aprime -
           (1.0 + eta_a) * p_b + 0.5 * ((1.0 + eta_a) * (1.0 + eta_b) - std::abs(alpha_a * alpha_b));
}

double ch_expectation(const DensityMatrix4& rho, const CHOperator& op) {
    return ch_expectation(rho.matrix(), op);
}

double ch_expectation(const Mat4& rho, const CHOperator& op) {
    return (rho * op.matrix).trace().real();
}

Mat4 commutator_term(const MeasurementSettings& s) {
    return commutator_kron(s.a, s.a_prime, s.b, s.b_prime) * (1.0 / 16.0);
}

double square_identity_residual(const CHOperator& op) {
    if (!op.settings.orthogonal)
        throw std::invalid_argument("square_identity_residual: settings must be orthogonal");
    const double m = std::abs(op.alpha_a * op.alpha_b);
    const double m2 = op.alpha_a * op.alpha_a * op.alpha_b * op.alpha_b;
    const Mat4 residual =
        op.matrix * op.matrix + op.matrix * m - commutator_term(op.settings) * m2;
    return residual.max_abs();
}

Mat4 chsh_operator(const MeasurementSettings& s) {
    if (!s.orthogonal) throw std::invalid_argument("chsh_operator: settings must be orthogonal");
    const Mat2 sum = pauli_dot(s.b) + pauli_dot(s.b_prime);
    const Mat2 diff = pauli_dot(s.b) - pauli_dot(s.b_prime);
    return kron(pauli_dot(s.a), sum) + kron(pauli_dot(s.a_prime), diff);
}

ChshFourthPower chsh_fourth_power(const MeasurementSettings& s) {
    if (!s.orthogonal)
        throw std::invalid_argument("chsh_fourth_power: settings must be orthogonal");
    const Mat4 d = commutator_kron(s.a, s.a_prime, s.b, s.b_prime);
    ChshFourthPower f;
    f.comm_sq_term = d * d;
    f.comm_term = d * (-8.0);
    return f;
}

}  // namespace hypercorr
