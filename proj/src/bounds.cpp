#include "hypercorr/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hypercorr/rng.hpp"

namespace hypercorr {

ChannelKinematics ChannelKinematics::make(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("ChannelKinematics: beta outside (0, 1)");
    return ChannelKinematics{beta};
}

BoundSet ch_bounds(double alpha_a, double alpha_b) {
    const double m = std::abs(alpha_a * alpha_b);
    return {-m, 0.0, BoundKind::ch_mean, false, std::nullopt};
}

double skewness_bound(double alpha_a, double alpha_b) {
    return std::pow(std::abs(alpha_a * alpha_b), 3) / 8.0;
}

double mu4_bound(double alpha) { return std::pow(alpha, 8) / 12.0; }

double spacelike_fraction(const ChannelKinematics& kin) {
    const double k = kin.k();
    return (k - 1.0) / (k + 1.0);
}

McEstimate mc_spacelike_fraction(double beta, std::uint64_t n_samples, std::uint64_t seed) {
    if (n_samples < 10000)
        throw std::invalid_argument("mc_spacelike_fraction: need at least 1e4 samples");
    if (!(beta >= 0.0 && beta < 1.0))
        throw std::invalid_argument("mc_spacelike_fraction: beta outside [0, 1)");
    const double k = (1.0 + beta) / (1.0 - beta);
    Rng rng = Rng::from_seed(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const double x1 = rng.exponential();
        const double x2 = rng.exponential();
        const double ratio = x1 / x2;
        if (ratio >= 1.0 / k && ratio <= k) ++hits;
    }
    const double f = static_cast<double>(hits) / static_cast<double>(n_samples);
    const double se = std::sqrt(std::max(0.0, f * (1.0 - f) / static_cast<double>(n_samples)));
    return {f, se, n_samples};
}

TimelikeExtremes timelike_extremes(double alpha) {
    const double a2 = alpha * alpha;
    return {0.5 * a2, -1.5 * a2};
}

BoundSet modified_ch_bounds(double alpha, double beta) {
    const double a2 = alpha * alpha;
    BoundSet b;
    b.kind = BoundKind::ch_mean;
    b.modified = true;
    b.beta = beta;
    // beta-weighted mixtures of the LHV bound and the timelike extreme.
    b.upper = beta * 0.0 + (1.0 - beta) * (0.5 * a2);
    b.lower = beta * (-a2) + (1.0 - beta) * (-1.5 * a2);
    return b;
}

double modified_skewness_bound(double alpha, double beta) {
    return std::pow(2.0 - beta, 3) * std::pow(alpha, 6) / 8.0;
}

double modified_mu4_bound(double alpha, double beta) {
    return std::pow(2.0 - beta, 4) * std::pow(alpha, 8) / 12.0;
}

double ch_violation_threshold() { return 2.0 - std::sqrt(2.0); }

double skewness_violation_threshold() {
    return 2.0 - std::cbrt(8.0 * std::sqrt(6.0) / 9.0);
}

double jpsi_ch_condition(double alpha_psi, double beta) {
    return beta + std::sqrt(1.0 + alpha_psi * alpha_psi) - 2.0;
}

LhvExtremes lhv_extremal_scan(const MeasurementSettings& s, double alpha, double eta, int grid_n) {
    (void)s;  // the deterministic-response value does not depend on directions
    if (grid_n < 2) throw std::invalid_argument("lhv_extremal_scan: grid_n must be >= 2");
    const double lo = 0.5 * (1.0 + eta - std::abs(alpha));
    const double hi = 0.5 * (1.0 + eta + std::abs(alpha));

    std::vector<double> grid(static_cast<std::size_t>(grid_n));
    for (int i = 0; i < grid_n; ++i)
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) /
                                                     static_cast<double>(grid_n - 1);

    LhvExtremes ext{1e300, -1e300};
    for (double pa : grid)
        for (double pap : grid)
            for (double pb : grid)
                for (double pbp : grid) {
                    const double v = ch_functional(pa * pb, pa * pbp, pap * pb, pap * pbp, pap, pb,
                                                   alpha, alpha, eta, eta);
                    ext.min = std::min(ext.min, v);
                    ext.max = std::max(ext.max, v);
                }
    return ext;
}

TwoPointScan bounded_moment_oracle(double length, int moment_order, int grid_n) {
    if (moment_order != 3 && moment_order != 4)
        throw std::invalid_argument("bounded_moment_oracle: moment_order must be 3 or 4");
    if (grid_n < 1000) throw std::invalid_argument("bounded_moment_oracle: grid_n must be >= 1000");
    if (length < 0.0) throw std::invalid_argument("bounded_moment_oracle: negative length");

    TwoPointScan best{-1e300, 0.0};
    // X = 0 with weight p, X = length with weight 1-p.
    for (int i = 0; i <= grid_n; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(grid_n);
        const double q = 1.0 - p;
        double moment;
        if (moment_order == 3)
            moment = p * q * (p - q) * std::pow(length, 3);
        else
            moment = p * q * (p * p * p + q * q * q) * std::pow(length, 4);
        if (moment > best.max_moment) best = {moment, p};
    }
    return best;
}

}  // namespace hypercorr
