#pragma once

// Operator moments <B^n>, central moments and cumulants up to fourth order,
// and the closed-form skewness / fourth-central-moment expressions for the
// singlet and X-state configurations.

#include <array>

#include "hypercorr/bell.hpp"
#include "hypercorr/linalg.hpp"
#include "hypercorr/states.hpp"

namespace hypercorr {

/// Raw moments m_n = Tr(rho B^n), n = 1..4.
struct MomentVector {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

/// kappa_1..kappa_4 (mean, variance, skewness, kurtosis).
struct CumulantVector {
    double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0;
};

/// Central moments mu_n = <(X - <X>)^n>, n = 2..4.
struct CentralMoments {
    double mu2 = 0.0, mu3 = 0.0, mu4 = 0.0;
};

/// Moments by explicit matrix powers (max order 4).
/// Throws std::invalid_argument for a non-Hermitian operator.
MomentVector operator_moments(const DensityMatrix4& rho, const Mat4& op, int max_order = 4);
MomentVector operator_moments(const Mat4& rho, const Mat4& op, int max_order = 4);

/// kappa_1 = m1, kappa_2 = m2 - m1^2, kappa_3 = m3 - 3 m1 m2 + 2 m1^3,
/// kappa_4 = m4 - 4 m1 m3 - 3 m2^2 + 12 m1^2 m2 - 6 m1^4.
CumulantVector cumulants(const MomentVector& m);

/// Binomial expansion of <(X - m1)^n> around the mean.
CentralMoments central_moments(const MomentVector& m);

/// Skewness of the CH operator on the singlet with the planar phi settings:
/// -(sqrt(2)/8) alpha^6 [sin(phi + pi/4) - sin(3 phi - pi/4)].
double singlet_skewness_closed(double phi, double alpha);

/// |kappa_3| of the CH operator on an X-state with the fixed z/y frame:
/// (sqrt(2) alpha^6 / 16) |(t2-t3)((t2-t3)^2 - 3 t1 - 1)|.
double xstate_skewness_closed(const XStateParams& x, double alpha);

/// mu_4 of the CH operator on the singlet with the planar phi settings:
/// (alpha^8/16) [2 - 2 sin(2 phi) + 3 cos^2(2 phi)].
double singlet_mu4_closed(double phi, double alpha);

/// mu_4 of the CH operator on an X-state with the fixed z/y frame:
/// (alpha^8/64) [-3 (t2-t3)^4 + 4 (3 t1 - 1)(t2-t3)^2 + 8 (1 + t1)].
double xstate_mu4_closed(const XStateParams& x, double alpha);

/// Trace coefficients of a Hermitian two-qubit operator against the Pauli
/// basis. Lets Tr(rho M) be evaluated as a linear form in a state's
/// Bloch/correlation decomposition, which keeps resampled-moment loops cheap.
struct PauliKernel {
    double c_id = 0.0;
    Vec3 c_p, c_pbar;
    Mat3 c_corr;

    static PauliKernel from_operator(const Mat4& m);
    double expectation(const TwoQubitDecomposition& d) const;
};

/// Kernels of B^1..B^4 for one operator, for repeated moment evaluation.
std::array<PauliKernel, 4> moment_kernels(const Mat4& op);
MomentVector moments_from_kernels(const std::array<PauliKernel, 4>& k,
                                  const TwoQubitDecomposition& d);

}  // namespace hypercorr
