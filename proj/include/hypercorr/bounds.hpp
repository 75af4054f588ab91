#pragma once

// Local-hidden-variable bounds on the CH mean, skewness and fourth central
// moment, their timelike-modified versions, and independent brute-force
// oracles (deterministic response enumeration, two-point distribution scans,
// Monte Carlo spacelike fraction).

#include <cstdint>
#include <optional>

#include "hypercorr/bell.hpp"

namespace hypercorr {

enum class BoundKind { ch_mean, skewness, mu4 };

struct BoundSet {
    double lower = 0.0;
    double upper = 0.0;
    BoundKind kind = BoundKind::ch_mean;
    bool modified = false;
    std::optional<double> beta;
};

/// Kinematics of one decay channel: hyperon velocity beta = v/c and the
/// derived light-cone ratio k = (1+beta)/(1-beta).
struct ChannelKinematics {
    double beta = 0.0;

    static ChannelKinematics make(double beta);
    double k() const { return (1.0 + beta) / (1.0 - beta); }
};

/// LHV range of the CH mean: [-|alpha_a alpha_b|, 0].
BoundSet ch_bounds(double alpha_a, double alpha_b);

/// LHV bound |kappa_3| <= |alpha_a alpha_b|^3 / 8.
double skewness_bound(double alpha_a, double alpha_b);

/// LHV bound mu_4 <= alpha^8 / 12 (symmetric analyzing powers).
double mu4_bound(double alpha);

/// Fraction of hyperon pairs with spacelike separated decays, (k-1)/(k+1),
/// which equals beta for exponential decay-length statistics.
double spacelike_fraction(const ChannelKinematics& kin);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

/// Monte Carlo check of the spacelike fraction: sample unit-rate exponential
/// path lengths and count pairs with 1/k <= x1/x2 <= k.
McEstimate mc_spacelike_fraction(double beta, std::uint64_t n_samples, std::uint64_t seed);

/// Extremes the CH value can reach on timelike (signaling-capable) pairs.
struct TimelikeExtremes {
    double max = 0.0;  //  alpha^2 / 2
    double min = 0.0;  // -3 alpha^2 / 2
};
TimelikeExtremes timelike_extremes(double alpha);

/// Convex mixture of the LHV bound (weight beta) and the timelike extreme
/// (weight 1-beta): [-(3-beta) alpha^2/2, (1-beta) alpha^2/2].
BoundSet modified_ch_bounds(double alpha, double beta);

/// (2-beta)^3 alpha^6 / 8.
double modified_skewness_bound(double alpha, double beta);

/// (2-beta)^4 alpha^8 / 12.
double modified_mu4_bound(double alpha, double beta);

/// Velocity thresholds above which the singlet violates the modified bounds:
/// 2 - sqrt(2) for the CH mean, 2 - cbrt(8 sqrt(6)/9) for the skewness.
double ch_violation_threshold();
double skewness_violation_threshold();

/// beta_y + sqrt(1 + alpha_psi^2) - 2; positive values admit a CH violation
/// at theta = pi/2 for vector-charmonium pairs.
double jpsi_ch_condition(double alpha_psi, double beta);

/// Extrema of the CH functional over deterministic local response models.
/// Each of the four local response probabilities ranges over the interval
/// [(1 + eta - |alpha|)/2, (1 + eta + |alpha|)/2]; joints are products. The
/// functional is multilinear in the responses, so grid_n = 2 (the interval
/// endpoints, 16 combinations) already reaches the extrema; larger grid_n
/// scans interior points as well.
struct LhvExtremes {
    double min = 0.0;
    double max = 0.0;
};
LhvExtremes lhv_extremal_scan(const MeasurementSettings& s, double alpha, double eta, int grid_n);

/// Largest n-th central moment over two-point distributions supported on the
/// endpoints of [0, length], scanning the weight p on a grid.
struct TwoPointScan {
    double max_moment = 0.0;
    double argmax_p = 0.0;
};
TwoPointScan bounded_moment_oracle(double length, int moment_order, int grid_n);

}  // namespace hypercorr
