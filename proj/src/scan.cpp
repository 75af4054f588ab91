#include "hypercorr/scan.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "hypercorr/bell.hpp"
#include "hypercorr/bounds.hpp"
#include "hypercorr/moments.hpp"
#include "hypercorr/montecarlo.hpp"
#include "hypercorr/rng.hpp"

#include "json.hpp"

namespace hypercorr {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double quantity_from_moments(Quantity q, const MomentVector& m) {
    switch (q) {
        case Quantity::ch_mean: return m.m1;
        case Quantity::kappa3: return std::abs(cumulants(m).k3);
        case Quantity::mu4: return central_moments(m).mu4;
    }
    return 0.0;
}

/// Signed version used by the MC columns; the magnitude of kappa_3 is taken
/// at the end so the folded estimate pairs with the folded analytic value.
double quantity_signed(Quantity q, const MomentVector& m) {
    switch (q) {
        case Quantity::ch_mean: return m.m1;
        case Quantity::kappa3: return cumulants(m).k3;
        case Quantity::mu4: return central_moments(m).mu4;
    }
    return 0.0;
}

struct QuantityContext {
    const ChannelConfig& channel;
    Parent parent;
    Quantity quantity;

    bool singlet() const { return parent != Parent::jpsi; }

    XStateParams xstate_at(double theta) const {
        return xstate_coeffs({channel.alpha_psi, channel.delta_phi, theta});
    }

    MeasurementSettings settings_at(double x) const {
        if (singlet()) return settings_phi(x);
        if (quantity == Quantity::ch_mean) {
            const XStateParams xp = xstate_at(x);
            return ch_optimal_settings(xp.t1, xp.t2, xp.t3);
        }
        return settings_jpsi();
    }

    double evaluate(double x) const {
        const CHOperator op =
            ch_operator(settings_at(x), channel.alpha_y, channel.alpha_ybar());
        const DensityMatrix4 rho = singlet() ? singlet_state() : build_xstate(xstate_at(x));
        return quantity_from_moments(quantity, operator_moments(rho, op.matrix));
    }
};

void check_combination(Parent parent, const ScanSpec& spec) {
    const bool wants_theta = parent == Parent::jpsi;
    const bool is_theta = spec.variable == ScanVariable::vartheta;
    if (wants_theta != is_theta)
        throw std::invalid_argument(
            "scan: singlet parents scan phi, vector-charmonium parents scan vartheta");
}

struct QuantityBounds {
    std::optional<double> classical_lo, classical_hi, modified_lo, modified_hi;
};

QuantityBounds bounds_for(const ChannelConfig& channel, Parent parent, Quantity quantity) {
    const double alpha = std::abs(channel.alpha_y);
    const double beta = channel.beta_for(parent);
    QuantityBounds b;
    switch (quantity) {
        case Quantity::ch_mean: {
            const BoundSet cl = ch_bounds(channel.alpha_y, channel.alpha_ybar());
            const BoundSet mo = modified_ch_bounds(alpha, beta);
            b.classical_lo = cl.lower;
            b.classical_hi = cl.upper;
            b.modified_lo = mo.lower;
            b.modified_hi = mo.upper;
            break;
        }
        case Quantity::kappa3:
            b.classical_hi = skewness_bound(channel.alpha_y, channel.alpha_ybar());
            b.modified_hi = modified_skewness_bound(alpha, beta);
            break;
        case Quantity::mu4:
            b.classical_hi = mu4_bound(alpha);
            b.modified_hi = modified_mu4_bound(alpha, beta);
            break;
    }
    return b;
}

}  // namespace

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::ch_mean: return "ch_mean";
        case Quantity::kappa3: return "kappa3";
        case Quantity::mu4: return "mu4";
    }
    return "?";
}

Quantity parse_quantity(const std::string& name) {
    if (name == "ch_mean" || name == "ch") return Quantity::ch_mean;
    if (name == "kappa3" || name == "k3") return Quantity::kappa3;
    if (name == "mu4") return Quantity::mu4;
    throw std::invalid_argument("unknown quantity '" + name +
                                "' (expected ch_mean, kappa3 or mu4)");
}

void ScanSpec::validate() const {
    if (!(start < stop)) throw std::invalid_argument("ScanSpec: start must be below stop");
    if (steps < 2) throw std::invalid_argument("ScanSpec: need at least 2 steps");
}

double ScanSpec::x_at(int i) const {
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

ScanSpec default_scan_spec(ScanVariable v) {
    if (v == ScanVariable::phi) return {ScanVariable::phi, 0.0, kPi / 2.0, 721};
    return {ScanVariable::vartheta, kPi / 722.0, 721.0 * kPi / 722.0, 721};
}

ScanTable scan(const ChannelConfig& channel, Parent parent, Quantity quantity,
               const ScanSpec& spec) {
    spec.validate();
    check_combination(parent, spec);
    const QuantityContext ctx{channel, parent, quantity};
    const QuantityBounds qb = bounds_for(channel, parent, quantity);

    ScanTable table{channel.channel_id, parent, quantity, {}};
    table.rows.reserve(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        const double x = spec.x_at(i);
        table.rows.push_back({x, ctx.evaluate(x), qb.classical_lo, qb.classical_hi, qb.modified_lo,
                              qb.modified_hi});
    }
    return table;
}

Extremum find_extremum(const ChannelConfig& channel, Parent parent, Quantity quantity,
                       const ScanSpec& spec, double tol) {
    spec.validate();
    check_combination(parent, spec);
    const QuantityContext ctx{channel, parent, quantity};

    int best = 0;
    double best_value = -1e300;
    for (int i = 0; i < spec.steps; ++i) {
        const double v = ctx.evaluate(spec.x_at(i));
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    if (best == 0 || best == spec.steps - 1)
        throw std::runtime_error("find_extremum: no interior maximum in bracket");

    // Golden-section ascent on the bracketing neighbors. Stops a little above
    // the requested width: near the top the function varies below double
    // precision, so the final digits come from the parabolic polish below.
    const double inv_phi = 0.6180339887498949;
    const double lo0 = spec.x_at(best - 1), hi0 = spec.x_at(best + 1);
    double a = lo0, b = hi0;
    const double gss_width = std::max(tol, 1e-5);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = ctx.evaluate(x1), f2 = ctx.evaluate(x2);
    while (b - a > gss_width) {
        if (f1 >= f2) {  // keep the left interval on ties: smallest argmax
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = ctx.evaluate(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = ctx.evaluate(x2);
        }
    }
    // Parabolic refinement through three equally spaced points; the step
    // size stays large enough that curvature dominates rounding noise.
    double xm = 0.5 * (a + b);
    for (double step : {1e-5, 1e-6}) {
        if (xm - step < lo0 || xm + step > hi0) continue;
        const double fl = ctx.evaluate(xm - step);
        const double fm = ctx.evaluate(xm);
        const double fr = ctx.evaluate(xm + step);
        const double denom = fl - 2.0 * fm + fr;
        if (denom >= 0.0) continue;  // no local curvature to exploit
        double shift = 0.5 * step * (fl - fr) / denom;
        shift = std::clamp(shift, -step, step);
        xm = std::clamp(xm + shift, lo0, hi0);
    }
    return {xm, ctx.evaluate(xm)};
}

std::vector<RunReport> report(const ChannelConfig& channel, Parent parent) {
    const ScanSpec range = parent == Parent::jpsi
                               ? default_scan_spec(ScanVariable::vartheta)
                               : ScanSpec{ScanVariable::phi, -kPi / 2.0, kPi / 2.0, 721};
    std::vector<RunReport> out;
    for (Quantity q : {Quantity::ch_mean, Quantity::kappa3, Quantity::mu4}) {
        const Extremum ext = find_extremum(channel, parent, q, range);
        const QuantityBounds qb = bounds_for(channel, parent, q);

        RunReport r;
        r.channel_id = channel.channel_id;
        r.parent = parent;
        r.quantity = q;
        r.quantum_max = ext.value;
        r.argmax = ext.argmax;
        r.classical_bound = *qb.classical_hi;
        r.modified_bound = *qb.modified_hi;
        r.violates_classical = r.quantum_max > r.classical_bound;
        r.violates_modified = r.quantum_max > r.modified_bound;
        out.push_back(r);
    }
    return out;
}

McTable mc_scan(const ChannelConfig& channel, Parent parent, Quantity quantity,
                const ScanSpec& spec, std::uint64_t n_events, std::uint64_t seed, int resamples) {
    spec.validate();
    check_combination(parent, spec);
    if (n_events < 10000) throw std::invalid_argument("mc_scan: need at least 1e4 events");
    const QuantityContext ctx{channel, parent, quantity};

    McTable table{channel.channel_id, parent, quantity, n_events, seed, {}};
    table.rows.reserve(static_cast<std::size_t>(spec.steps));

    const auto row_from = [&](double x, const TwoQubitDecomposition& est,
                              const std::vector<TwoQubitDecomposition>& boots) {
        const CHOperator op = ch_operator(ctx.settings_at(x), channel.alpha_y, channel.alpha_ybar());
        const auto kernels = moment_kernels(op.matrix);
        const double analytic = ctx.evaluate(x);
        const double mc = quantity == Quantity::kappa3
                              ? std::abs(quantity_signed(quantity, moments_from_kernels(kernels, est)))
                              : quantity_signed(quantity, moments_from_kernels(kernels, est));
        std::vector<double> vals;
        vals.reserve(boots.size());
        for (const auto& bd : boots) {
            double v = quantity_signed(quantity, moments_from_kernels(kernels, bd));
            if (quantity == Quantity::kappa3) v = std::abs(v);
            vals.push_back(v);
        }
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        const double se = std::sqrt(ss / (static_cast<double>(vals.size()) - 1.0));
        McRow row{x, analytic, mc, se, std::abs(mc - analytic) > 3.0 * se};
        table.rows.push_back(row);
    };

    if (ctx.singlet()) {
        TwoQubitDecomposition truth;
        truth.c = Mat3::diag(-1.0, -1.0, -1.0);
        const EventBatch batch =
            sample_events(truth, channel.alpha_y, channel.alpha_ybar(), n_events, seed);
        const TwoQubitDecomposition est = estimate_decomposition(batch);
        const auto boots = bootstrap_decompositions(batch, resamples, seed ^ 0x5bd1e995u);
        for (int i = 0; i < spec.steps; ++i) row_from(spec.x_at(i), est, boots);
    } else {
        std::uint64_t mix = seed;
        for (int i = 0; i < spec.steps; ++i) {
            const double x = spec.x_at(i);
            const XStateParams xp = ctx.xstate_at(x);
            const TwoQubitDecomposition truth = decompose(build_xstate(xp));
            const std::uint64_t point_seed = splitmix64(mix);
            const EventBatch batch =
                sample_events(truth, channel.alpha_y, channel.alpha_ybar(), n_events, point_seed);
            const TwoQubitDecomposition est = estimate_decomposition(batch);
            const auto boots = bootstrap_decompositions(batch, resamples, point_seed ^ 0x5bd1e995u);
            row_from(x, est, boots);
        }
    }
    return table;
}

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string opt12(const std::optional<double>& v) { return v ? fmt12(*v) : std::string(); }

}  // namespace

void write_scan_csv(const ScanTable& table, std::ostream& out) {
    out << "x,quantum,classical_lo,classical_hi,modified_lo,modified_hi\n";
    for (const ScanRow& r : table.rows)
        out << fmt12(r.x) << ',' << fmt12(r.quantum) << ',' << opt12(r.classical_lo) << ','
            << opt12(r.classical_hi) << ',' << opt12(r.modified_lo) << ',' << opt12(r.modified_hi)
            << '\n';
}

void write_mc_csv(const McTable& table, std::ostream& out) {
    out << "x,analytic,mc,mc_stderr,flagged\n";
    for (const McRow& r : table.rows)
        out << fmt12(r.x) << ',' << fmt12(r.analytic) << ',' << fmt12(r.mc) << ','
            << fmt12(r.mc_stderr) << ',' << (r.flagged ? 1 : 0) << '\n';
}

std::string report_to_json(const std::vector<RunReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const RunReport& r : reports) {
        arr.push_back({{"channel", r.channel_id},
                       {"parent", parent_name(r.parent)},
                       {"quantity", quantity_name(r.quantity)},
                       {"quantum_max", r.quantum_max},
                       {"argmax", r.argmax},
                       {"classical_bound", r.classical_bound},
                       {"modified_bound", r.modified_bound},
                       {"violates_classical", r.violates_classical},
                       {"violates_modified", r.violates_modified}});
    }
    return arr.dump(2);
}

}  // namespace hypercorr
