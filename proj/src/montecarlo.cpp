#include "hypercorr/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "hypercorr/rng.hpp"

namespace hypercorr {

namespace {

// Work is split by index range; every event and every resample draws from a
// stream derived from its own index, so results do not depend on the split.
void parallel_ranges(std::uint64_t total, std::uint64_t min_per_thread,
                     const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::uint64_t n_threads = std::min<std::uint64_t>(
        hw == 0 ? 1 : hw, std::max<std::uint64_t>(1, total / std::max<std::uint64_t>(1, min_per_thread)));
    if (n_threads <= 1) {
        body(0, total);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    const std::uint64_t chunk = (total + n_threads - 1) / n_threads;
    for (std::uint64_t t = 0; t < n_threads; ++t) {
        const std::uint64_t begin = t * chunk;
        const std::uint64_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back(body, begin, end);
    }
    for (auto& w : workers) w.join();
}

double joint_density_weight(const TwoQubitDecomposition& d, double a, double ab, const Vec3& n1,
                            const Vec3& n2) {
    return 1.0 + a * d.p_y.dot(n1) + ab * d.p_ybar.dot(n2) + a * ab * n1.dot(d.c.apply(n2));
}

struct MomentSums {
    Vec3 s1{}, s2{};
    Mat3 m{};
    std::uint64_t n = 0;

    void add(const DecayEvent& e) {
        s1 = s1 + e.n1;
        s2 = s2 + e.n2;
        const double a[3] = {e.n1.x, e.n1.y, e.n1.z};
        const double b[3] = {e.n2.x, e.n2.y, e.n2.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) += a[i] * b[j];
        ++n;
    }

    TwoQubitDecomposition invert(double alpha_y, double alpha_ybar) const {
        const double inv_n = 1.0 / static_cast<double>(n);
        TwoQubitDecomposition d;
        d.p_y = s1 * (3.0 * inv_n / alpha_y);
        d.p_ybar = s2 * (3.0 * inv_n / alpha_ybar);
        d.c = m * (9.0 * inv_n / (alpha_y * alpha_ybar));
        return d;
    }
};

void require_invertible(const EventBatch& batch, std::uint64_t n_events) {
    if (n_events < 10000)
        throw std::invalid_argument("estimate_decomposition: need at least 1e4 events");
    if (std::abs(batch.alpha_y) < 0.05 || std::abs(batch.alpha_ybar) < 0.05)
        throw std::invalid_argument("estimate_decomposition: |alpha| below 0.05, inversion unstable");
}

}  // namespace

EventBatch sample_events(const TwoQubitDecomposition& truth, double alpha_y, double alpha_ybar,
                         std::uint64_t count, std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("sample_events: count is zero");
    if (std::abs(alpha_y) > 1.0 + 1e-12 || std::abs(alpha_ybar) > 1.0 + 1e-12)
        throw std::invalid_argument("sample_events: |alpha| exceeds 1");

    const double bound = 1.0 + std::abs(alpha_y) * truth.p_y.norm() +
                         std::abs(alpha_ybar) * truth.p_ybar.norm() +
                         std::abs(alpha_y * alpha_ybar) * spectral_norm3(truth.c);

    EventBatch batch;
    batch.alpha_y = alpha_y;
    batch.alpha_ybar = alpha_ybar;
    batch.seed = seed;
    batch.truth = truth;

    // Acceptance >= 1% makes 10^5 consecutive rejections vanishingly unlikely.
    constexpr int kMaxAttempts = 100000;
    batch.events.resize(count);
    std::atomic<std::uint64_t> attempts{0};
    std::atomic<bool> starved{false};
    parallel_ranges(count, 4096, [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t local_attempts = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng = Rng::derive(seed, i);
            bool accepted = false;
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
                ++local_attempts;
                const Vec3 n1 = rng.unit_vector();
                const Vec3 n2 = rng.unit_vector();
                const double u = rng.uniform();
                if (u * bound < joint_density_weight(truth, alpha_y, alpha_ybar, n1, n2)) {
                    batch.events[i] = {n1, n2};
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                starved.store(true);
                break;
            }
        }
        attempts.fetch_add(local_attempts);
    });
    if (starved.load() ||
        static_cast<double>(count) < 0.01 * static_cast<double>(attempts.load()))
        throw std::runtime_error("sample_events: acceptance rate below 1%, inputs pathological");
    return batch;
}

TwoQubitDecomposition estimate_decomposition(const EventBatch& batch) {
    require_invertible(batch, batch.events.size());
    MomentSums sums;
    for (const DecayEvent& e : batch.events) sums.add(e);
    return sums.invert(batch.alpha_y, batch.alpha_ybar);
}

TwoQubitDecomposition estimate_decomposition(const EventBatch& batch,
                                             std::span<const std::uint32_t> indices) {
    require_invertible(batch, indices.size());
    MomentSums sums;
    for (std::uint32_t idx : indices) sums.add(batch.events[idx]);
    return sums.invert(batch.alpha_y, batch.alpha_ybar);
}

std::vector<TwoQubitDecomposition> bootstrap_decompositions(const EventBatch& batch, int resamples,
                                                            std::uint64_t seed) {
    if (resamples < 100) throw std::invalid_argument("bootstrap: need at least 100 resamples");
    const std::uint64_t n = batch.events.size();
    require_invertible(batch, n);
    std::vector<TwoQubitDecomposition> out(static_cast<std::size_t>(resamples));
    parallel_ranges(static_cast<std::uint64_t>(resamples), 1, [&](std::uint64_t begin,
                                                                  std::uint64_t end) {
        for (std::uint64_t r = begin; r < end; ++r) {
            Rng rng = Rng::derive(seed, r);
            MomentSums sums;
            for (std::uint64_t i = 0; i < n; ++i) sums.add(batch.events[rng.below(n)]);
            out[r] = sums.invert(batch.alpha_y, batch.alpha_ybar);
        }
    });
    return out;
}

namespace {

double stddev_of(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (n - 1.0));
}

}  // namespace

double bootstrap_stderr(const EventBatch& batch, const BatchStatistic& statistic, int resamples,
                        std::uint64_t seed) {
    if (resamples < 100) throw std::invalid_argument("bootstrap: need at least 100 resamples");
    if (batch.events.empty()) throw std::invalid_argument("bootstrap: empty batch");
    const std::uint64_t n = batch.events.size();
    std::vector<std::uint32_t> indices(n);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(resamples));
    for (int r = 0; r < resamples; ++r) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(r));
        for (std::uint64_t i = 0; i < n; ++i) indices[i] = static_cast<std::uint32_t>(rng.below(n));
        values.push_back(statistic(batch, indices));
    }
    return stddev_of(values);
}

namespace {

double plugin_ch_value(const TwoQubitDecomposition& d, const MeasurementSettings& s, double alpha_a,
                       double alpha_b, double eta_a, double eta_b) {
    const GeneralPOVM pa = GeneralPOVM::make(s.a, alpha_a, eta_a);
    const GeneralPOVM pap = GeneralPOVM::make(s.a_prime, alpha_a, eta_a);
    const GeneralPOVM pb = GeneralPOVM::make(s.b, alpha_b, eta_b);
    const GeneralPOVM pbp = GeneralPOVM::make(s.b_prime, alpha_b, eta_b);
    return ch_functional(joint_prob(d, pa, pb, Outcome::plus, Outcome::plus),
                         joint_prob(d, pa, pbp, Outcome::plus, Outcome::plus),
                         joint_prob(d, pap, pb, Outcome::plus, Outcome::plus),
                         joint_prob(d, pap, pbp, Outcome::plus, Outcome::plus),
                         single_prob_first(d, pap, Outcome::plus),
                         single_prob_second(d, pb, Outcome::plus), alpha_a, alpha_b, eta_a, eta_b);
}

}  // namespace

EstimatorResult estimate_ch(const EventBatch& batch, const MeasurementSettings& s, double alpha_a,
                            double alpha_b, double eta_a, double eta_b, int resamples,
                            std::uint64_t seed) {
    const auto boots = bootstrap_decompositions(batch, resamples, seed);
    return estimate_ch(batch, s, alpha_a, alpha_b, eta_a, eta_b, boots);
}

EstimatorResult estimate_ch(const EventBatch& batch, const MeasurementSettings& s, double alpha_a,
                            double alpha_b, double eta_a, double eta_b,
                            std::span<const TwoQubitDecomposition> resampled) {
    if (resampled.size() < 2) throw std::invalid_argument("estimate_ch: need resamples");
    const TwoQubitDecomposition d = estimate_decomposition(batch);
    const double value = plugin_ch_value(d, s, alpha_a, alpha_b, eta_a, eta_b);
    std::vector<double> values;
    values.reserve(resampled.size());
    for (const auto& bd : resampled)
        values.push_back(plugin_ch_value(bd, s, alpha_a, alpha_b, eta_a, eta_b));
    return {value, stddev_of(values), batch.events.size()};
}

CumulantEstimates estimate_cumulants(const EventBatch& batch, const MeasurementSettings& s,
                                     double alpha_a, double alpha_b, int order, int bootstrap_n,
                                     std::uint64_t seed) {
    if (order < 1 || order > 4) throw std::invalid_argument("estimate_cumulants: order outside {1..4}");
    if (order >= 3 && batch.events.size() < 100000)
        throw std::invalid_argument("estimate_cumulants: orders 3-4 need at least 1e5 events");
    const auto boots = bootstrap_decompositions(batch, bootstrap_n, seed);
    return estimate_cumulants(batch, s, alpha_a, alpha_b, order, boots);
}

CumulantEstimates estimate_cumulants(const EventBatch& batch, const MeasurementSettings& s,
                                     double alpha_a, double alpha_b, int order,
                                     std::span<const TwoQubitDecomposition> boots) {
    if (boots.size() < 2) throw std::invalid_argument("estimate_cumulants: need resamples");
    if (order < 1 || order > 4) throw std::invalid_argument("estimate_cumulants: order outside {1..4}");
    if (order >= 3 && batch.events.size() < 100000)
        throw std::invalid_argument("estimate_cumulants: orders 3-4 need at least 1e5 events");

    const CHOperator op = ch_operator(s, alpha_a, alpha_b);
    const auto kernels = moment_kernels(op.matrix);
    const TwoQubitDecomposition d = estimate_decomposition(batch);

    const CumulantVector k0 = cumulants(moments_from_kernels(kernels, d));
    const CentralMoments c0 = central_moments(moments_from_kernels(kernels, d));
    const double kappa0[4] = {k0.k1, k0.k2, k0.k3, k0.k4};
    const double central0[3] = {c0.mu2, c0.mu3, c0.mu4};

    std::vector<std::vector<double>> kappa_vals(4), central_vals(3);
    for (const auto& bd : boots) {
        const MomentVector m = moments_from_kernels(kernels, bd);
        const CumulantVector k = cumulants(m);
        const CentralMoments c = central_moments(m);
        const double kv[4] = {k.k1, k.k2, k.k3, k.k4};
        const double cv[3] = {c.mu2, c.mu3, c.mu4};
        for (int i = 0; i < 4; ++i) kappa_vals[static_cast<std::size_t>(i)].push_back(kv[i]);
        for (int i = 0; i < 3; ++i) central_vals[static_cast<std::size_t>(i)].push_back(cv[i]);
    }

    CumulantEstimates est;
    const std::uint64_t n = batch.events.size();
    for (int i = 0; i < order; ++i)
        est.kappa.push_back({kappa0[i], stddev_of(kappa_vals[static_cast<std::size_t>(i)]), n});
    for (int i = 0; i + 2 <= order; ++i)
        est.central.push_back({central0[i], stddev_of(central_vals[static_cast<std::size_t>(i)]), n});
    return est;
}

void write_events_csv(const EventBatch& batch, std::ostream& out) {
    out << "n1x,n1y,n1z,n2x,n2y,n2z\n";
    char line[160];
    for (const DecayEvent& e : batch.events) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", e.n1.x, e.n1.y,
                      e.n1.z, e.n2.x, e.n2.y, e.n2.z);
        out << line;
    }
}

std::vector<DecayEvent> read_events_csv(std::istream& in) {
    std::vector<DecayEvent> events;
    std::string line;
    if (!std::getline(in, line) || line != "n1x,n1y,n1z,n2x,n2y,n2z")
        throw std::invalid_argument("read_events_csv: missing or malformed header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double v[6];
        char comma;
        for (int i = 0; i < 6; ++i) {
            if (!(ss >> v[i])) throw std::invalid_argument("read_events_csv: malformed row");
            if (i < 5 && !(ss >> comma)) throw std::invalid_argument("read_events_csv: malformed row");
        }
        events.push_back({{v[0], v[1], v[2]}, {v[3], v[4], v[5]}});
    }
    return events;
}

}  // namespace hypercorr
