#pragma once

// Parameter scans over the measurement angle (singlet channels) or the
// scattering angle (vector-charmonium channels), extremum refinement,
// violation verdict reports, Monte Carlo confirmation columns, and CSV/JSON
// emission.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypercorr/channels.hpp"

namespace hypercorr {

enum class Quantity { ch_mean, kappa3, mu4 };
enum class ScanVariable { phi, vartheta };

std::string quantity_name(Quantity q);
Quantity parse_quantity(const std::string& name);

struct ScanSpec {
    ScanVariable variable = ScanVariable::phi;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;

    void validate() const;
    double x_at(int i) const;
};

/// Default grids: 721 points over [0, pi/2] for phi and over the open
/// interval (0, pi) for vartheta (endpoints excluded).
ScanSpec default_scan_spec(ScanVariable v);

struct ScanRow {
    double x = 0.0;
    double quantum = 0.0;
    std::optional<double> classical_lo, classical_hi, modified_lo, modified_hi;
};

struct ScanTable {
    std::string channel_id;
    Parent parent = Parent::chi_c0;
    Quantity quantity = Quantity::ch_mean;
    std::vector<ScanRow> rows;
};

/// Quantum curve plus classical and timelike-modified bounds on a grid.
/// The quantum column is the CH mean, |kappa_3| or mu_4 from the operator
/// pipeline; for vector-charmonium channels the CH mean uses the optimal
/// setting frame at each angle while kappa_3 and mu_4 use the fixed frame.
/// Throws std::invalid_argument for a parent/variable mismatch.
ScanTable scan(const ChannelConfig& channel, Parent parent, Quantity quantity,
               const ScanSpec& spec);

struct Extremum {
    double argmax = 0.0;
    double value = 0.0;
};

/// Coarse-grid bracketing followed by golden-section refinement to
/// |Delta x| < tol. Deterministic; ties resolve to the smallest argmax.
/// Throws std::runtime_error when no interior maximum exists in the grid.
Extremum find_extremum(const ChannelConfig& channel, Parent parent, Quantity quantity,
                       const ScanSpec& spec, double tol = 1e-8);

struct RunReport {
    std::string channel_id;
    Parent parent = Parent::chi_c0;
    Quantity quantity = Quantity::ch_mean;
    double quantum_max = 0.0;
    double argmax = 0.0;
    double classical_bound = 0.0;  // upper bound the quantity is tested against
    double modified_bound = 0.0;
    bool violates_classical = false;
    bool violates_modified = false;
};

/// One report row per quantity. Extrema are searched over phi in
/// [-pi/2, pi/2] for singlet channels (the skewness and fourth-moment maxima
/// sit at negative phi) and over the default open vartheta grid otherwise.
std::vector<RunReport> report(const ChannelConfig& channel, Parent parent);

struct McRow {
    double x = 0.0;
    double analytic = 0.0;
    double mc = 0.0;
    double mc_stderr = 0.0;
    bool flagged = false;  // |mc - analytic| > 3 mc_stderr
};

struct McTable {
    std::string channel_id;
    Parent parent = Parent::chi_c0;
    Quantity quantity = Quantity::ch_mean;
    std::uint64_t n_events = 0;
    std::uint64_t seed = 0;
    std::vector<McRow> rows;
};

/// Monte Carlo confirmation of the analytic scan. Singlet channels share one
/// event batch across the grid (settings change, the state does not);
/// vector-charmonium channels generate one batch per scattering angle from a
/// seed derived from (seed, grid index).
McTable mc_scan(const ChannelConfig& channel, Parent parent, Quantity quantity,
                const ScanSpec& spec, std::uint64_t n_events, std::uint64_t seed,
                int resamples = 100);

void write_scan_csv(const ScanTable& table, std::ostream& out);
void write_mc_csv(const McTable& table, std::ostream& out);
std::string report_to_json(const std::vector<RunReport>& reports);

}  // namespace hypercorr
