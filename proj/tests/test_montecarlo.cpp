#include "doctest.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hypercorr/bounds.hpp"
#include "hypercorr/moments.hpp"
#include "hypercorr/montecarlo.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace hypercorr;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

TwoQubitDecomposition singlet_truth() {
    TwoQubitDecomposition d;
    d.c = Mat3::diag(-1.0, -1.0, -1.0);
    return d;
}

}  // namespace

TEST_CASE("moment-inversion constants via quadrature") {
    // single decay: integral of n against (1 + alpha P.n) is alpha P / 3
    const Vec3 p{0.2, -0.5, 0.7};
    const double alpha = 0.755;
    for (int axis = 0; axis < 3; ++axis) {
        const double got = oracles::sphere_average([&](const Vec3& n) {
            const double w = 1.0 + alpha * p.dot(n);
            const double comp = axis == 0 ? n.x : axis == 1 ? n.y : n.z;
            return w * comp;
        });
        const double want = alpha * (axis == 0 ? p.x : axis == 1 ? p.y : p.z) / 3.0;
        CHECK(std::abs(got - want) < 1e-6);
    }

    // joint decay: <n1_i n2_j> = alpha alphabar C_ij / 9
    TwoQubitDecomposition truth;
    truth.p_y = {0.1, 0.0, -0.3};
    truth.p_ybar = {0.0, 0.2, 0.1};
    truth.c = Mat3::diag(-0.8, 0.4, 0.6);
    truth.c.at(0, 1) = 0.3;
    truth.c.at(1, 0) = 0.3;
    const double ab = -0.755;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double got = oracles::joint_density_average(
                truth, alpha, ab, [&](const Vec3& n1, const Vec3& n2) {
                    const double c1 = i == 0 ? n1.x : i == 1 ? n1.y : n1.z;
                    const double c2 = j == 0 ? n2.x : j == 1 ? n2.y : n2.z;
                    return c1 * c2;
                });
            CHECK(std::abs(got - alpha * ab * truth.c.at(i, j) / 9.0) < 1e-6);
        }
}

TEST_CASE("sample_events determinism and validation") {
    const EventBatch a = sample_events(singlet_truth(), 0.755, -0.755, 2000, 99);
    const EventBatch b = sample_events(singlet_truth(), 0.755, -0.755, 2000, 99);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].n1.x == b.events[i].n1.x);
        CHECK(a.events[i].n2.z == b.events[i].n2.z);
    }
    const EventBatch c = sample_events(singlet_truth(), 0.755, -0.755, 2000, 100);
    bool any_different = false;
    for (std::size_t i = 0; i < c.events.size(); ++i)
        any_different = any_different || c.events[i].n1.x != a.events[i].n1.x;
    CHECK(any_different);

    for (const DecayEvent& e : a.events) {
        CHECK(std::abs(e.n1.norm() - 1.0) < 1e-12);
        CHECK(std::abs(e.n2.norm() - 1.0) < 1e-12);
    }

    CHECK_THROWS_AS(sample_events(singlet_truth(), 0.755, -0.755, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_events(singlet_truth(), 1.5, -0.755, 10, 1), std::invalid_argument);

    // an unphysical correlation matrix still samples (the guard against
    // sub-1% acceptance stays defensive: the density averages to 1, so the
    // rate cannot collapse for finite inputs)
    TwoQubitDecomposition wild;
    wild.c = Mat3::diag(400.0, 0.0, 0.0);
    CHECK(sample_events(wild, 1.0, 1.0, 100, 1).events.size() == 100);
}

TEST_CASE("events and resamples are functions of their index stream alone") {
    // The contract behind shard independence: event i depends only on the
    // stream derived from (seed, i), so any partition of the index range
    // produces the same batch. Recompute one event by hand and compare.
    const TwoQubitDecomposition truth = singlet_truth();
    const double a = 0.755, ab = -0.755;
    const EventBatch batch = sample_events(truth, a, ab, 5000, 77);

    const double bound = 1.0 + a * ab * (-1.0) * 0.0 +  // no polarization
                         std::abs(a * ab) * 1.0;        // sigma_max(-I) = 1
    for (std::uint64_t i : {std::uint64_t(0), std::uint64_t(2500), std::uint64_t(4999)}) {
        Rng rng = Rng::derive(77, i);
        Vec3 n1{}, n2{};
        for (;;) {
            n1 = rng.unit_vector();
            n2 = rng.unit_vector();
            const double u = rng.uniform();
            const double w = 1.0 + a * ab * n1.dot(Mat3::diag(-1, -1, -1).apply(n2));
            if (u * bound < w) break;
        }
        CHECK(batch.events[i].n1.x == n1.x);
        CHECK(batch.events[i].n1.z == n1.z);
        CHECK(batch.events[i].n2.y == n2.y);
    }

    // same for bootstrap resample r: one sequential pass with stream (seed, r)
    EventBatch big = batch;
    while (big.events.size() < 10000) big.events.push_back(big.events[big.events.size() % 5000]);
    const auto boots = bootstrap_decompositions(big, 100, 123);
    {
        Rng rng = Rng::derive(123, 42);
        Vec3 s1{};
        const std::uint64_t n = big.events.size();
        Mat3 m{};
        for (std::uint64_t i = 0; i < n; ++i) {
            const DecayEvent& e = big.events[rng.below(n)];
            s1 = s1 + e.n1;
            const double v1[3] = {e.n1.x, e.n1.y, e.n1.z};
            const double v2[3] = {e.n2.x, e.n2.y, e.n2.z};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) m.at(r, c) += v1[r] * v2[c];
        }
        const Vec3 p = s1 * (3.0 / (static_cast<double>(n) * big.alpha_y));
        const Mat3 cc = m * (9.0 / (static_cast<double>(n) * big.alpha_y * big.alpha_ybar));
        // identical sums; the final scaling may associate differently
        CHECK(boots[42].p_y.x == doctest::Approx(p.x).epsilon(1e-15));
        CHECK(boots[42].c.at(1, 1) == doctest::Approx(cc.at(1, 1)).epsilon(1e-15));
    }
}

TEST_CASE("unpolarized truth gives uniform directions") {
    const TwoQubitDecomposition zeros{};
    const EventBatch batch = sample_events(zeros, 0.755, -0.755, 100000, 5);
    Vec3 mean{};
    for (const DecayEvent& e : batch.events) mean = mean + e.n1;
    mean = mean * (1.0 / static_cast<double>(batch.events.size()));
    const double sigma = 1.0 / std::sqrt(3.0 * static_cast<double>(batch.events.size()));
    CHECK(std::abs(mean.x) < 3.0 * sigma * std::sqrt(3.0));
    CHECK(std::abs(mean.y) < 3.0 * sigma * std::sqrt(3.0));
    CHECK(std::abs(mean.z) < 3.0 * sigma * std::sqrt(3.0));
}

TEST_CASE("singlet event moments match the inversion constants") {
    const double a = 0.755, ab = 0.755;  // same-sign pair: diagonal -alpha^2/9
    const EventBatch batch = sample_events(singlet_truth(), a, ab, 1000000, 11);
    Mat3 m{};
    for (const DecayEvent& e : batch.events) {
        const double v1[3] = {e.n1.x, e.n1.y, e.n1.z};
        const double v2[3] = {e.n2.x, e.n2.y, e.n2.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) += v1[i] * v2[j];
    }
    m = m * (1.0 / static_cast<double>(batch.events.size()));
    const double want = a * ab * (-1.0) / 9.0;  // about -0.0633
    const double sigma = 1.0 / (3.0 * std::sqrt(static_cast<double>(batch.events.size())));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(m.at(i, i) - want) < 4.0 * sigma);
    CHECK(want == doctest::Approx(-0.0633).epsilon(2e-3));
}

TEST_CASE("estimate_decomposition recovers the truth within errors") {
    // singlet
    const EventBatch sb = sample_events(singlet_truth(), 0.755, -0.755, 1000000, 21);
    const TwoQubitDecomposition sd = estimate_decomposition(sb);
    const double sigma_c = 9.0 / (3.0 * 0.755 * 0.755 * std::sqrt(1e6));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(sd.c.at(i, j) - (i == j ? -1.0 : 0.0)) < 4.0 * sigma_c);
    CHECK(sd.p_y.norm() < 4.0 * 3.0 / (0.755 * std::sqrt(3.0 * 1e6)) * std::sqrt(3.0));

    // X-state at theta = pi/2 with the Lambda production parameters
    const XStateParams x = xstate_coeffs({0.475, 0.752, kPi / 2.0});
    const TwoQubitDecomposition truth = decompose(build_xstate(x));
    const EventBatch xb = sample_events(truth, 0.755, -0.755, 1000000, 22);
    const TwoQubitDecomposition xd = estimate_decomposition(xb);
    CHECK(std::abs(xd.c.at(0, 0) - 1.0) < 4.0 * sigma_c);
    CHECK(std::abs(xd.c.at(1, 1) - 0.475) < 4.0 * sigma_c);
    CHECK(std::abs(xd.c.at(2, 2) + 0.475) < 4.0 * sigma_c);

    // error paths
    EventBatch small = sb;
    small.events.resize(100);
    CHECK_THROWS_AS(estimate_decomposition(small), std::invalid_argument);
    EventBatch weak = sb;
    weak.alpha_y = 0.01;
    CHECK_THROWS_AS(estimate_decomposition(weak), std::invalid_argument);
}

TEST_CASE("rejection sampler marginals pass a KS test") {
    // unpolarized: n1z is uniform on [-1, 1]
    const EventBatch u = sample_events(singlet_truth(), 0.755, -0.755, 100000, 31);
    std::vector<double> z1;
    z1.reserve(u.events.size());
    for (const DecayEvent& e : u.events) z1.push_back(e.n1.z);
    const double d_uniform =
        oracles::ks_statistic(z1, [](double z) { return 0.5 * (z + 1.0); });
    CHECK(d_uniform < 1.63 / std::sqrt(1e5));  // 1% critical value

    // polarized marginal: density (1 + alpha a z)/2 on [-1, 1]
    const XStateParams x = xstate_coeffs({0.475, 0.752, kPi / 3.0});
    const TwoQubitDecomposition truth = decompose(build_xstate(x));
    const double az = 0.755 * truth.p_y.z;
    REQUIRE(std::abs(az) > 0.01);
    const EventBatch pb = sample_events(truth, 0.755, -0.755, 100000, 32);
    std::vector<double> z2;
    z2.reserve(pb.events.size());
    for (const DecayEvent& e : pb.events) z2.push_back(e.n1.z);
    const double d_pol = oracles::ks_statistic(z2, [&](double z) {
        return 0.5 * (z + 1.0) + 0.25 * az * (z * z - 1.0);
    });
    CHECK(d_pol < 1.63 / std::sqrt(1e5));
}

TEST_CASE("bootstrap standard errors behave like 1/sqrt(n)") {
    const EventBatch batch = sample_events(singlet_truth(), 0.755, -0.755, 40000, 41);

    // constant statistic
    const double se0 = bootstrap_stderr(
        batch, [](const EventBatch&, std::span<const std::uint32_t>) { return 42.0; }, 150, 1);
    CHECK(se0 == 0.0);

    // mean of a +/-1 coin from the sign of n1z
    const auto coin = [](const EventBatch& b, std::span<const std::uint32_t> idx) {
        double s = 0.0;
        for (std::uint32_t i : idx) s += b.events[i].n1.z >= 0.0 ? 1.0 : -1.0;
        return s / static_cast<double>(idx.size());
    };
    const double se_full = bootstrap_stderr(batch, coin, 200, 2);
    CHECK(se_full == doctest::Approx(1.0 / std::sqrt(40000.0)).epsilon(0.15));

    EventBatch quarter = batch;
    quarter.events.resize(10000);
    const double se_quarter = bootstrap_stderr(quarter, coin, 200, 3);
    CHECK(se_quarter == doctest::Approx(2.0 * se_full).epsilon(0.2));

    CHECK_THROWS_AS(bootstrap_stderr(batch, coin, 50, 1), std::invalid_argument);
}

TEST_CASE("estimate_ch agrees with the analytic curve") {
    const double alpha = 0.755;
    const EventBatch batch = sample_events(singlet_truth(), alpha, -alpha, 1000000, 51);
    for (double phi : {0.0, kPi / 4.0, 1.1}) {
        const EstimatorResult r =
            estimate_ch(batch, settings_phi(phi), alpha, -alpha, 0.0, 0.0, 120, 7);
        const double want = alpha * alpha / 2.0 * (std::cos(phi) + std::sin(phi) - 1.0);
        CHECK(std::abs(r.value - want) < 3.0 * r.std_error);
        CHECK(r.std_error < 0.002);
        CHECK(r.n_used == 1000000);
    }
}

TEST_CASE("estimate_cumulants agrees with the closed forms") {
    const double alpha = 0.755;
    const EventBatch batch = sample_events(singlet_truth(), alpha, -alpha, 1000000, 52);
    const double phi_star = std::asin(1.0 / std::sqrt(3.0)) - kPi / 4.0;
    const CumulantEstimates est =
        estimate_cumulants(batch, settings_phi(phi_star), alpha, -alpha, 4, 120, 8);
    REQUIRE(est.kappa.size() == 4);
    REQUIRE(est.central.size() == 3);

    const double k3_want = singlet_skewness_closed(phi_star, alpha);
    CHECK(std::abs(est.kappa[2].value - k3_want) < 3.0 * est.kappa[2].std_error);
    CHECK(std::abs(std::abs(est.kappa[2].value) - 0.0504) < 0.01);

    const double mu4_want = singlet_mu4_closed(phi_star, alpha);
    CHECK(std::abs(est.central[2].value - mu4_want) < 3.0 * est.central[2].std_error);

    CHECK_THROWS_AS(estimate_cumulants(batch, settings_phi(0.0), alpha, -alpha, 4, 50, 1),
                    std::invalid_argument);
    EventBatch small = batch;
    small.events.resize(50000);
    CHECK_THROWS_AS(estimate_cumulants(small, settings_phi(0.0), alpha, -alpha, 4, 120, 1),
                    std::invalid_argument);
}

TEST_CASE("estimate_cumulants on an unpolarized uncorrelated truth") {
    const double alpha = 0.755;
    const TwoQubitDecomposition zeros{};
    const EventBatch batch = sample_events(zeros, alpha, -alpha, 200000, 53);
    const MeasurementSettings s = settings_phi(0.6);
    const CumulantEstimates est = estimate_cumulants(batch, s, alpha, -alpha, 3, 120, 5);

    // analytic reference: the maximally mixed state
    const CHOperator op = ch_operator(s, alpha, -alpha);
    const double k3 = cumulants(operator_moments(maximally_mixed_state(), op.matrix)).k3;
    CHECK(std::abs(est.kappa[2].value - k3) < 3.0 * est.kappa[2].std_error);
}

TEST_CASE("estimator consistency as n grows") {
    const double alpha = 0.755;
    double prev_err = 1e9;
    for (std::uint64_t n : {std::uint64_t(10000), std::uint64_t(100000), std::uint64_t(1000000)}) {
        const EventBatch batch = sample_events(singlet_truth(), alpha, -alpha, n, 61);
        const TwoQubitDecomposition d = estimate_decomposition(batch);
        double err = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) err += std::pow(d.c.at(i, j) - (i == j ? -1.0 : 0.0), 2);
        err = std::sqrt(err);
        // 3 sigma envelope on the Frobenius error of the 9 estimated entries
        const double sigma_c = 9.0 / (3.0 * alpha * alpha * std::sqrt(static_cast<double>(n)));
        CHECK(err < 3.0 * sigma_c * 3.0);
        CHECK(err < prev_err + sigma_c);
        prev_err = err;
    }
}

TEST_CASE("event CSV round trip") {
    const EventBatch batch = sample_events(singlet_truth(), 0.8, -0.8, 500, 71);
    std::ostringstream os;
    write_events_csv(batch, os);
    const std::string text = os.str();
    CHECK(text.rfind("n1x,n1y,n1z,n2x,n2y,n2z\n", 0) == 0);

    std::istringstream is(text);
    const std::vector<DecayEvent> back = read_events_csv(is);
    REQUIRE(back.size() == batch.events.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].n1.x == batch.events[i].n1.x);
        CHECK(back[i].n2.y == batch.events[i].n2.y);
        CHECK(back[i].n2.z == batch.events[i].n2.z);
    }

    std::istringstream bad("wrong,header\n1,2,3,4,5,6\n");
    CHECK_THROWS_AS(read_events_csv(bad), std::invalid_argument);
}
