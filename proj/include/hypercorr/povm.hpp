#pragma once

// Two-outcome generalized POVMs for spin-1/2 measurements, the hyperon weak
// decay realization (Kraus operators built from s- and p-wave amplitudes),
// and single/joint outcome probabilities.

#include "hypercorr/linalg.hpp"
#include "hypercorr/states.hpp"

namespace hypercorr {

enum class Outcome : int { plus = +1, minus = -1 };

/// Biased, unsharp two-outcome measurement along a direction:
/// E_+/- = ((1 +/- eta) I +/- alpha sigma.n) / 2.
/// Valid when |eta + alpha| <= 1 and |eta - alpha| <= 1 (both effects PSD).
struct GeneralPOVM {
    Vec3 direction{0.0, 0.0, 1.0};
    double alpha = 1.0;  // unsharpness; sign encodes the analyzing orientation
    double eta = 0.0;    // bias

    static GeneralPOVM make(const Vec3& direction, double alpha, double eta = 0.0);
    void validate() const;
};

/// s- and p-wave decay amplitudes of a hyperon weak decay.
struct DecayAmplitudes {
    cplx s_wave{};
    cplx p_wave{};
};

/// Kraus pair of the decay channel; M+^dag M+ + M-^dag M- = I.
struct KrausPair {
    Mat2 m_plus;
    Mat2 m_minus;
};

/// POVM effect for one outcome. PSD Hermitian; the two effects sum to I.
Mat2 povm_effect(const GeneralPOVM& p, Outcome outcome);

/// The unbiased POVM realized by a hyperon weak decay observed along the
/// daughter direction n: effects (I +/- alpha_y sigma.n)/2.
GeneralPOVM decay_povm(const Vec3& n, double alpha_y);

/// Kraus operators (S +/- P sigma.n) / sqrt(2(|S|^2 + |P|^2)); normalized so
/// that completeness holds and M+/-^dag M+/- reproduce decay_povm effects.
KrausPair kraus_from_amplitudes(const DecayAmplitudes& a, const Vec3& n);

/// alpha_y = 2 Re(S* P) / (|S|^2 + |P|^2).
double alpha_from_amplitudes(const DecayAmplitudes& a);

/// Tr(rho E_outcome) for a single-qubit state.
/// Throws std::invalid_argument for an invalid state.
double single_prob(const Mat2& rho, const GeneralPOVM& p, Outcome outcome);

/// Tr(rho E_ja(a) (x) E_jb(b)) for a two-qubit state.
double joint_prob(const DensityMatrix4& rho, const GeneralPOVM& pa, const GeneralPOVM& pb,
                  Outcome ja, Outcome jb);

/// Same probability evaluated from a Bloch/correlation decomposition. Used by
/// plug-in estimators whose decompositions may be slightly unphysical.
double joint_prob(const TwoQubitDecomposition& d, const GeneralPOVM& pa, const GeneralPOVM& pb,
                  Outcome ja, Outcome jb);
double single_prob_first(const TwoQubitDecomposition& d, const GeneralPOVM& pa, Outcome ja);
double single_prob_second(const TwoQubitDecomposition& d, const GeneralPOVM& pb, Outcome jb);

}  // namespace hypercorr
