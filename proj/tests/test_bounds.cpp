#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hypercorr/bounds.hpp"
#include "test_util.hpp"

using namespace hypercorr;

TEST_CASE("ch_bounds examples") {
    const BoundSet standard = ch_bounds(1.0, 1.0);
    CHECK(standard.lower == -1.0);
    CHECK(standard.upper == 0.0);

    const BoundSet lam = ch_bounds(0.755, -0.755);
    CHECK(lam.lower == doctest::Approx(-0.570025).epsilon(1e-12));
    CHECK(lam.upper == 0.0);

    const BoundSet degenerate = ch_bounds(0.0, 0.5);
    CHECK(degenerate.lower == 0.0);
    CHECK(degenerate.upper == 0.0);
}

TEST_CASE("skewness and mu4 bounds") {
    CHECK(skewness_bound(1.0, 1.0) == doctest::Approx(0.125));
    CHECK(skewness_bound(0.755, -0.755) == doctest::Approx(0.02315).epsilon(1e-3));
    CHECK(skewness_bound(0.0, 1.0) == 0.0);

    CHECK(mu4_bound(1.0) == doctest::Approx(1.0 / 12.0));
    CHECK(mu4_bound(0.755) == doctest::Approx(0.008798).epsilon(1e-3));
    CHECK(mu4_bound(0.0) == 0.0);
}

TEST_CASE("spacelike fraction equals beta") {
    CHECK(spacelike_fraction(ChannelKinematics::make(0.757)) ==
          doctest::Approx(0.757).epsilon(1e-14));
    CHECK(spacelike_fraction(ChannelKinematics::make(1e-9)) ==
          doctest::Approx(1e-9).epsilon(1e-9));

    Rng rng = Rng::from_seed(71);
    for (int i = 0; i < 100; ++i) {
        const double beta = 0.001 + 0.998 * rng.uniform();
        CHECK(std::abs(spacelike_fraction(ChannelKinematics::make(beta)) - beta) < 1e-14);
    }
    CHECK_THROWS_AS(ChannelKinematics::make(1.0), std::invalid_argument);
}

TEST_CASE("mc_spacelike_fraction is consistent with beta") {
    const McEstimate e = mc_spacelike_fraction(0.693, 1000000, 2024);
    CHECK(std::abs(e.value - 0.693) < 3.0 * e.std_error);
    CHECK(e.std_error == doctest::Approx(0.000461).epsilon(0.05));

    const McEstimate h = mc_spacelike_fraction(0.5, 200000, 7);
    CHECK(std::abs(h.value - 0.5) < 3.0 * h.std_error);

    // k = 1 edge: the spacelike window has measure zero
    const McEstimate z = mc_spacelike_fraction(0.0, 10000, 3);
    CHECK(z.value == 0.0);

    CHECK_THROWS_AS(mc_spacelike_fraction(0.5, 100, 1), std::invalid_argument);
}

TEST_CASE("timelike extremes") {
    const TimelikeExtremes t1 = timelike_extremes(1.0);
    CHECK(t1.max == 0.5);
    CHECK(t1.min == -1.5);

    const TimelikeExtremes tl = timelike_extremes(0.755);
    CHECK(tl.max == doctest::Approx(0.285).epsilon(1e-3));
    CHECK(tl.min == doctest::Approx(-0.855).epsilon(1e-3));

    const TimelikeExtremes t0 = timelike_extremes(0.0);
    CHECK(t0.max == 0.0);
    CHECK(t0.min == 0.0);
}

TEST_CASE("modified CH bounds") {
    const BoundSet chic0 = modified_ch_bounds(0.755, 0.757);
    CHECK(chic0.upper == doctest::Approx(0.06926).epsilon(1e-3));
    CHECK(chic0.lower == doctest::Approx(-0.63926).epsilon(1e-3));

    // beta -> 1 recovers the LHV range
    const BoundSet limit = modified_ch_bounds(0.8, 1.0);
    CHECK(limit.upper == doctest::Approx(0.0));
    CHECK(limit.lower == doctest::Approx(-0.64).epsilon(1e-12));

    // beta -> 0 gives the pure timelike extremes
    const BoundSet loose = modified_ch_bounds(0.8, 0.0);
    CHECK(loose.upper == doctest::Approx(0.32).epsilon(1e-12));
    CHECK(loose.lower == doctest::Approx(-0.96).epsilon(1e-12));
}

TEST_CASE("modified skewness and mu4 bounds, beta = 1 limits and monotonicity") {
    const double a = 0.755;
    CHECK(modified_skewness_bound(a, 1.0) == doctest::Approx(std::pow(a, 6) / 8.0));
    CHECK(modified_skewness_bound(a, 0.757) == doctest::Approx(0.04446).epsilon(1e-3));
    CHECK(modified_skewness_bound(a, 0.664) == doctest::Approx(0.05521).epsilon(1e-3));

    CHECK(modified_mu4_bound(a, 1.0) == doctest::Approx(std::pow(a, 8) / 12.0));
    CHECK(modified_mu4_bound(a, 0.757) == doctest::Approx(0.02100).epsilon(1e-3));
    CHECK(modified_mu4_bound(a, 0.664) == doctest::Approx(0.02803).epsilon(1e-3));

    // widening as beta decreases
    double prev_s = modified_skewness_bound(a, 1.0), prev_m = modified_mu4_bound(a, 1.0);
    double prev_u = modified_ch_bounds(a, 1.0).upper, prev_l = modified_ch_bounds(a, 1.0).lower;
    for (double beta = 0.95; beta > 0.0; beta -= 0.05) {
        CHECK(modified_skewness_bound(a, beta) > prev_s);
        CHECK(modified_mu4_bound(a, beta) > prev_m);
        CHECK(modified_ch_bounds(a, beta).upper > prev_u);
        CHECK(modified_ch_bounds(a, beta).lower < prev_l);
        prev_s = modified_skewness_bound(a, beta);
        prev_m = modified_mu4_bound(a, beta);
        prev_u = modified_ch_bounds(a, beta).upper;
        prev_l = modified_ch_bounds(a, beta).lower;
    }
}

TEST_CASE("violation thresholds") {
    CHECK(ch_violation_threshold() == doctest::Approx(0.5857864376).epsilon(1e-9));
    CHECK(skewness_violation_threshold() ==
          doctest::Approx(2.0 - std::cbrt(8.0 * std::sqrt(6.0) / 9.0)).epsilon(1e-15));
    // matches the printed two/three digit values
    CHECK(std::abs(ch_violation_threshold() - 0.586) < 5e-4);
    CHECK(std::abs(skewness_violation_threshold() - 0.704) < 5e-4);
    // both lie below the chi_c0 Lambda velocity
    CHECK(ch_violation_threshold() < 0.757);
    CHECK(skewness_violation_threshold() < 0.757);
}

TEST_CASE("jpsi_ch_condition for the built-in channels is negative") {
    CHECK(jpsi_ch_condition(0.475, 0.693) == doctest::Approx(-0.200).epsilon(1e-2));
    CHECK(jpsi_ch_condition(-0.508, 0.640) == doctest::Approx(-0.238).epsilon(1e-2));
    CHECK(jpsi_ch_condition(0.1, 1.0) > 0.0);  // relativistic limit violates
}

TEST_CASE("lhv_extremal_scan reproduces the LHV range exactly") {
    const MeasurementSettings s = settings_phi(0.4);
    for (double alpha : {1.0, 0.755, 0.2}) {
        const LhvExtremes e = lhv_extremal_scan(s, alpha, 0.0, 2);
        CHECK(std::abs(e.min + alpha * alpha) < 1e-15);
        CHECK(std::abs(e.max) < 1e-15);
    }
    // degenerate alpha = 0: the functional collapses to the constant -0 term
    const LhvExtremes z = lhv_extremal_scan(s, 0.0, 0.0, 2);
    CHECK(z.min == doctest::Approx(0.0));
    CHECK(z.max == doctest::Approx(0.0));

    CHECK_THROWS_AS(lhv_extremal_scan(s, 0.5, 0.0, 1), std::invalid_argument);
}

TEST_CASE("interior LHV responses never beat the vertices") {
    const MeasurementSettings s = settings_phi(1.1);
    for (double alpha : {1.0, 0.755}) {
        const LhvExtremes vertex = lhv_extremal_scan(s, alpha, 0.0, 2);
        const LhvExtremes fine = lhv_extremal_scan(s, alpha, 0.0, 9);
        CHECK(fine.min >= vertex.min - 1e-13);
        CHECK(fine.max <= vertex.max + 1e-13);

        Rng rng = Rng::from_seed(72);
        const double lo = 0.5 * (1.0 - alpha), hi = 0.5 * (1.0 + alpha);
        for (int i = 0; i < 10000; ++i) {
            const double pa = lo + (hi - lo) * rng.uniform();
            const double pap = lo + (hi - lo) * rng.uniform();
            const double pb = lo + (hi - lo) * rng.uniform();
            const double pbp = lo + (hi - lo) * rng.uniform();
            const double v = ch_functional(pa * pb, pa * pbp, pap * pb, pap * pbp, pap, pb, alpha,
                                           alpha, 0.0, 0.0);
            CHECK(v >= vertex.min - 1e-13);
            CHECK(v <= vertex.max + 1e-13);
        }
    }
}

TEST_CASE("biased LHV scan still satisfies the unbiased range") {
    const MeasurementSettings s = settings_phi(0.2);
    for (double eta : {-0.3, 0.0, 0.25}) {
        const double alpha = 0.6;
        const LhvExtremes e = lhv_extremal_scan(s, alpha, eta, 2);
        CHECK(e.max <= 1e-13);
        CHECK(e.min >= -alpha * alpha - 1e-13);
    }
}

TEST_CASE("two-point moment scan: mu4 maximum and kappa3 ceiling") {
    const TwoPointScan mu4 = bounded_moment_oracle(1.0, 4, 100000);
    CHECK(std::abs(mu4.max_moment - 1.0 / 12.0) < 1e-9);
    // pq = 1/6 at the optimum
    CHECK(mu4.argmax_p * (1.0 - mu4.argmax_p) == doctest::Approx(1.0 / 6.0).epsilon(1e-4));

    const TwoPointScan k3 = bounded_moment_oracle(1.0, 3, 100000);
    CHECK(k3.max_moment <= 0.125);
    CHECK(k3.max_moment == doctest::Approx(1.0 / (6.0 * std::sqrt(3.0))).epsilon(1e-6));

    const TwoPointScan zero = bounded_moment_oracle(0.0, 4, 1000);
    CHECK(zero.max_moment == 0.0);

    // scaling in L
    const TwoPointScan scaled = bounded_moment_oracle(0.5, 4, 10000);
    CHECK(scaled.max_moment == doctest::Approx(std::pow(0.5, 4) / 12.0).epsilon(1e-6));

    CHECK_THROWS_AS(bounded_moment_oracle(1.0, 2, 10000), std::invalid_argument);
    CHECK_THROWS_AS(bounded_moment_oracle(1.0, 4, 10), std::invalid_argument);
}
