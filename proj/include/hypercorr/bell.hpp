#pragma once

// Generalized Clauser-Horne operator and functional, the CHSH operator, the
// square identity of the CH operator, the fourth-power expansion of CHSH,
// and the two canonical measurement-setting families.

#include "hypercorr/linalg.hpp"
#include "hypercorr/povm.hpp"
#include "hypercorr/states.hpp"

namespace hypercorr {

/// Four measurement directions, two per side. The orthogonal flag is set at
/// construction when a.a' = 0 and b.b' = 0 within 1e-12.
struct MeasurementSettings {
    Vec3 a, a_prime, b, b_prime;
    bool orthogonal = false;

    static MeasurementSettings make(const Vec3& a, const Vec3& a_prime, const Vec3& b,
                                    const Vec3& b_prime);
};

/// The planar setting family: a = x, a' = y, b = (cos phi, sin phi, 0),
/// b' = (-sin phi, cos phi, 0). Orthogonal for every phi.
MeasurementSettings settings_phi(double phi);

/// The fixed setting frame used for vector-charmonium pairs:
/// a = z, a' = y, b = (0, 1, -1)/sqrt(2), b' = (0, 1, 1)/sqrt(2).
MeasurementSettings settings_jpsi();

/// Setting frame maximizing the CH expectation on a state with diagonal
/// correlation matrix diag(t1, t2, t3), for analyzing powers of opposite
/// sign on the two sides (hyperon-pair convention alpha_b = -alpha_a).
/// The b-pair is generally non-orthogonal.
MeasurementSettings ch_optimal_settings(double t1, double t2, double t3);

/// Generalized CH operator with its construction parameters.
struct CHOperator {
    Mat4 matrix;
    double alpha_a = 0.0, alpha_b = 0.0;
    double eta_a = 0.0, eta_b = 0.0;
    MeasurementSettings settings;
};

/// Assemble the CH operator from its seven terms:
///   E+(a)E+(b) - E+(a)E+(b') + E+(a')E+(b) + E+(a')E+(b')
///   - (1+eta_b) E+(a') (x) I - (1+eta_a) I (x) E+(b)
///   + ((1+eta_a)(1+eta_b) - |alpha_a alpha_b|)/2 I (x) I.
CHOperator ch_operator(const MeasurementSettings& s, double alpha_a, double alpha_b,
                       double eta_a = 0.0, double eta_b = 0.0);

/// The CH combination of measured probabilities (outcome ++):
///   p_ab - p_ab' + p_a'b + p_a'b' - (1+eta_b) p_a' - (1+eta_a) p_b
///   + ((1+eta_a)(1+eta_b) - |alpha_a alpha_b|)/2.
/// Throws std::invalid_argument when any probability is outside [0, 1].
double ch_functional(double p_ab, double p_ab_prime, double p_aprime_b, double p_aprime_bprime,
                     double p_aprime, double p_b, double alpha_a, double alpha_b,
                     double eta_a = 0.0, double eta_b = 0.0);

double ch_expectation(const DensityMatrix4& rho, const CHOperator& op);
double ch_expectation(const Mat4& rho, const CHOperator& op);

/// C = [sigma.a, sigma.a'] (x) [sigma.b, sigma.b'] / 16.
/// Hermitian with eigenvalues +/- 1/4 for orthogonal settings.
Mat4 commutator_term(const MeasurementSettings& s);

/// Max-norm residual of the operator identity
///   B^2 = -|alpha_a alpha_b| B + alpha_a^2 alpha_b^2 C
/// for orthogonal settings (the identity does not hold otherwise; a
/// non-orthogonal frame throws std::invalid_argument).
double square_identity_residual(const CHOperator& op);

/// CHSH operator sigma.a (x) sigma.(b+b') + sigma.a' (x) sigma.(b-b') for an
/// orthogonal setting frame. Throws for non-orthogonal settings.
Mat4 chsh_operator(const MeasurementSettings& s);

/// Three-term decomposition of the fourth power of the CHSH operator:
///   B^4 = 16 I + [sigma.a, sigma.a']^2 (x) [sigma.b, sigma.b']^2
///         - 8 [sigma.a, sigma.a'] (x) [sigma.b, sigma.b'].
struct ChshFourthPower {
    double identity_coeff = 16.0;
    Mat4 comm_sq_term;
    Mat4 comm_term;
};

ChshFourthPower chsh_fourth_power(const MeasurementSettings& s);

}  // namespace hypercorr
