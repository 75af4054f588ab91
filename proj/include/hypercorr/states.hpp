#pragma once

// Two-qubit spin states of hyperon-antihyperon pairs: the spin singlet from
// scalar/pseudoscalar charmonium decay and the symmetric X-state from vector
// charmonium decay kinematics, plus the Bloch/correlation decomposition.

#include <array>

#include "hypercorr/linalg.hpp"

namespace hypercorr {

/// Validated 4x4 density matrix: Hermitian within 1e-9, unit trace within
/// 1e-9, smallest eigenvalue >= -1e-9.
class DensityMatrix4 {
  public:
    static DensityMatrix4 from_matrix(const Mat4& m);
    const Mat4& matrix() const { return m_; }

  private:
    explicit DensityMatrix4(const Mat4& m) : m_(m) {}
    Mat4 m_;
};

/// Bloch vectors and correlation matrix of a two-qubit state:
/// P_i = Tr(rho sigma_i (x) I), Pbar_j = Tr(rho I (x) sigma_j),
/// C_ij = Tr(rho sigma_i (x) sigma_j).
struct TwoQubitDecomposition {
    Vec3 p_y;
    Vec3 p_ybar;
    Mat3 c;
};

/// Symmetric X-state parameters: shared longitudinal polarization a and
/// diagonal correlation coefficients (t1, t2, t3).
struct XStateParams {
    double a = 0.0;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
};

/// Production parameters of a vector-charmonium decay: angular decay
/// parameter alpha_psi in [-1,1], relative form-factor phase delta_phi in
/// (-pi, pi], hyperon scattering angle theta in [0, pi].
struct ProductionParams {
    double alpha_psi = 0.0;
    double delta_phi = 0.0;
    double theta = 0.0;

    /// gamma = sqrt(1 - alpha_psi^2) sin(delta_phi); |gamma| <= 1.
    double gamma() const;
    void validate() const;
};

/// Electromagnetic form factors and kinematics entering the alpha_psi map.
struct FormFactors {
    cplx g_e{};
    cplx g_m{};
    double s = 0.0;     // CM energy squared, GeV^2
    double mass = 0.0;  // baryon mass, GeV
};

/// The spin-singlet projector (|+-> - |-+>)/sqrt(2).
DensityMatrix4 singlet_state();

/// Maximally mixed two-qubit state I/4.
DensityMatrix4 maximally_mixed_state();

/// X-state coefficients from production kinematics. The discriminant under
/// the square root in t_{1,2} is clamped to zero when within -1e-12 of zero;
/// a more negative value throws std::domain_error.
XStateParams xstate_coeffs(const ProductionParams& p);

/// Assemble the density matrix of a symmetric X-state.
/// Throws when the resulting matrix is not positive semidefinite.
DensityMatrix4 build_xstate(const XStateParams& x);

TwoQubitDecomposition decompose(const DensityMatrix4& rho);
TwoQubitDecomposition decompose(const Mat4& rho);

/// Inverse of decompose; the result is not validated (estimated
/// decompositions may be slightly unphysical).
Mat4 compose(const TwoQubitDecomposition& d);

/// Maximal CHSH expectation 2 sqrt(lambda1 + lambda2) where lambda_{1,2} are
/// the two largest eigenvalues of T^T T for T = diag(t1, t2, t3).
double horodecki_max(const XStateParams& x);

/// alpha_psi from the electric/magnetic form factors:
/// (s|G_M|^2 - 4M^2|G_E|^2) / (s|G_M|^2 + 4M^2|G_E|^2).
double alpha_from_form_factors(const FormFactors& ff);

}  // namespace hypercorr
