#include "hypercorr/povm.hpp"

#include <cmath>
#include <stdexcept>

namespace hypercorr {

GeneralPOVM GeneralPOVM::make(const Vec3& direction, double alpha, double eta) {
    GeneralPOVM p{direction, alpha, eta};
    p.validate();
    return p;
}

void GeneralPOVM::validate() const {
    if (!is_unit(direction)) throw std::invalid_argument("GeneralPOVM: direction is not a unit vector");
    if (std::abs(eta + alpha) > 1.0 + 1e-12 || std::abs(eta - alpha) > 1.0 + 1e-12)
        throw std::invalid_argument("GeneralPOVM: |eta +/- alpha| exceeds 1");
}

Mat2 povm_effect(const GeneralPOVM& p, Outcome outcome) {
    p.validate();
    const double j = static_cast<double>(static_cast<int>(outcome));
    return (Mat2::identity() * (1.0 + j * p.eta) + pauli_dot(p.direction) * (j * p.alpha)) * 0.5;
}

GeneralPOVM decay_povm(const Vec3& n, double alpha_y) {
    if (std::abs(alpha_y) > 1.0 + 1e-12)
        throw std::invalid_argument("decay_povm: |alpha_y| exceeds 1");
    return GeneralPOVM::make(n, alpha_y, 0.0);
}

double alpha_from_amplitudes(const DecayAmplitudes& a) {
    const double n2 = std::norm(a.s_wave) + std::norm(a.p_wave);
    if (n2 == 0.0) throw std::invalid_argument("alpha_from_amplitudes: both amplitudes vanish");
    return 2.0 * (std::conj(a.s_wave) * a.p_wave).real() / n2;
}

KrausPair kraus_from_amplitudes(const DecayAmplitudes& a, const Vec3& n) {
    const double n2 = std::norm(a.s_wave) + std::norm(a.p_wave);
    if (n2 == 0.0) throw std::invalid_argument("kraus_from_amplitudes: both amplitudes vanish");
    const double scale = 1.0 / std::sqrt(2.0 * n2);
    const Mat2 sn = pauli_dot(n);
    KrausPair k;
    k.m_plus = (Mat2::identity() * a.s_wave + sn * a.p_wave) * scale;
    k.m_minus = (Mat2::identity() * a.s_wave - sn * a.p_wave) * scale;
    return k;
}

namespace {

void validate_qubit_state(const Mat2& rho) {
    if (!rho.is_hermitian(1e-9)) throw std::invalid_argument("single_prob: state not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-9)
        throw std::invalid_argument("single_prob: state trace differs from 1");
    if (hermitian_eigenvalues(rho)[1] < -1e-9)
        throw std::invalid_argument("single_prob: state not positive semidefinite");
}

}  // namespace

double single_prob(const Mat2& rho, const GeneralPOVM& p, Outcome outcome) {
    validate_qubit_state(rho);
    return (rho * povm_effect(p, outcome)).trace().real();
}

double joint_prob(const DensityMatrix4& rho, const GeneralPOVM& pa, const GeneralPOVM& pb,
                  Outcome ja, Outcome jb) {
    const Mat4 e = kron(povm_effect(pa, ja), povm_effect(pb, jb));
    return (rho.matrix() * e).trace().real();
}

double joint_prob(const TwoQubitDecomposition& d, const GeneralPOVM& pa, const GeneralPOVM& pb,
                  Outcome ja, Outcome jb) {
    pa.validate();
    pb.validate();
    const double j = static_cast<double>(static_cast<int>(ja));
    const double k = static_cast<double>(static_cast<int>(jb));
    const double xa = 1.0 + j * pa.eta;
    const double xb = 1.0 + k * pb.eta;
    return 0.25 * (xa * xb + xb * j * pa.alpha * d.p_y.dot(pa.direction) +
                   xa * k * pb.alpha * d.p_ybar.dot(pb.direction) +
                   j * k * pa.alpha * pb.alpha * pa.direction.dot(d.c.apply(pb.direction)));
}

double single_prob_first(const TwoQubitDecomposition& d, const GeneralPOVM& pa, Outcome ja) {
    pa.validate();
    const double j = static_cast<double>(static_cast<int>(ja));
    return 0.5 * (1.0 + j * pa.eta + j * pa.alpha * d.p_y.dot(pa.direction));
}

double single_prob_second(const TwoQubitDecomposition& d, const GeneralPOVM& pb, Outcome jb) {
    pb.validate();
    const double k = static_cast<double>(static_cast<int>(jb));
    return 0.5 * (1.0 + k * pb.eta + k * pb.alpha * d.p_ybar.dot(pb.direction));
}

}  // namespace hypercorr
