#pragma once

// Decay-event simulation for hyperon pairs: rejection sampling of daughter
// directions from the joint angular density, moment-inversion estimators for
// the state decomposition, plug-in CH and cumulant estimators, and
// nonparametric bootstrap standard errors.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "hypercorr/bell.hpp"
#include "hypercorr/moments.hpp"
#include "hypercorr/states.hpp"

namespace hypercorr {

/// One simulated pair decay: daughter directions in the respective helicity
/// frames, unit vectors within 1e-12.
struct DecayEvent {
    Vec3 n1;
    Vec3 n2;
};

struct EventBatch {
    std::vector<DecayEvent> events;
    double alpha_y = 0.0;
    double alpha_ybar = 0.0;
    std::uint64_t seed = 0;
    TwoQubitDecomposition truth;
};

struct EstimatorResult {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_used = 0;
};

/// Draw decay events from the joint density
///   (1/4pi)^2 [1 + a P.n1 + ab Pbar.n2 + a ab n1^T C n2]
/// by rejection against the uniform-sphere envelope with bound
/// 1 + |a||P| + |ab||Pbar| + |a ab| sigma_max(C). Each event uses a random
/// stream derived from (seed, event index), so batches are reproducible and
/// independent of any sharding of the index range.
/// Throws when count is zero or the acceptance rate falls below 1%.
EventBatch sample_events(const TwoQubitDecomposition& truth, double alpha_y, double alpha_ybar,
                         std::uint64_t count, std::uint64_t seed);

/// Moment inversion: Phat = 3<n1>/alpha_y, Pbarhat = 3<n2>/alpha_ybar,
/// Chat = 9<n1 n2^T>/(alpha_y alpha_ybar).
/// Requires at least 1e4 events and |alpha| >= 0.05 on both sides.
TwoQubitDecomposition estimate_decomposition(const EventBatch& batch);
TwoQubitDecomposition estimate_decomposition(const EventBatch& batch,
                                             std::span<const std::uint32_t> indices);

/// Decompositions of bootstrap resamples (events drawn with replacement);
/// resample r uses the stream derived from (seed, r).
std::vector<TwoQubitDecomposition> bootstrap_decompositions(const EventBatch& batch, int resamples,
                                                            std::uint64_t seed);

/// Statistic evaluated on a resampled batch (events selected by index).
using BatchStatistic = std::function<double(const EventBatch&, std::span<const std::uint32_t>)>;

/// Nonparametric bootstrap standard error of an arbitrary batch statistic.
/// Requires resamples >= 100. Deterministic given the seed.
double bootstrap_stderr(const EventBatch& batch, const BatchStatistic& statistic, int resamples,
                        std::uint64_t seed);

/// Plug-in CH estimate: probabilities from the estimated decomposition fed
/// through the CH combination; standard error by bootstrap. The second form
/// reuses precomputed resample decompositions, which amortizes the
/// resampling cost when many setting choices are evaluated on one batch.
EstimatorResult estimate_ch(const EventBatch& batch, const MeasurementSettings& s, double alpha_a,
                            double alpha_b, double eta_a = 0.0, double eta_b = 0.0,
                            int resamples = 200, std::uint64_t seed = 1);
EstimatorResult estimate_ch(const EventBatch& batch, const MeasurementSettings& s, double alpha_a,
                            double alpha_b, double eta_a, double eta_b,
                            std::span<const TwoQubitDecomposition> resampled);

/// Plug-in cumulant and central-moment estimates of the CH operator
/// spectrum in the estimated state. kappa[i] holds kappa_{i+1} for
/// i+1 <= order; central[i] holds mu_{i+2}. Orders 3 and 4 require at least
/// 1e5 events; bootstrap_n must be >= 100.
struct CumulantEstimates {
    std::vector<EstimatorResult> kappa;
    std::vector<EstimatorResult> central;
};
CumulantEstimates estimate_cumulants(const EventBatch& batch, const MeasurementSettings& s,
                                     double alpha_a, double alpha_b, int order, int bootstrap_n,
                                     std::uint64_t seed);
CumulantEstimates estimate_cumulants(const EventBatch& batch, const MeasurementSettings& s,
                                     double alpha_a, double alpha_b, int order,
                                     std::span<const TwoQubitDecomposition> resampled);

/// CSV export: header `n1x,n1y,n1z,n2x,n2y,n2z`, one row per event.
void write_events_csv(const EventBatch& batch, std::ostream& out);
std::vector<DecayEvent> read_events_csv(std::istream& in);

}  // namespace hypercorr
