// Command-line driver: parameter scans, extremum search, violation verdict
// reports, Monte Carlo confirmation tables and the channel table.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hypercorr/channels.hpp"
#include "hypercorr/montecarlo.hpp"
#include "hypercorr/scan.hpp"
#include "hypercorr/states.hpp"

namespace {

using namespace hypercorr;

constexpr double kPi = 3.141592653589793238462643383279502884;

struct CommonOpts {
    std::string channel = "Lambda";
    std::string parent = "chi_c0";
    std::string quantity = "ch_mean";
    std::optional<double> from, to;
    int steps = 721;
    std::string out_path;
    std::string channels_path;
};

std::vector<ChannelConfig> load_table(const CommonOpts& o) {
    if (o.channels_path.empty()) return builtin_channels();
    return load_channels(o.channels_path);
}

ScanSpec make_spec(const CommonOpts& o, Parent parent) {
    const ScanVariable var =
        parent == Parent::jpsi ? ScanVariable::vartheta : ScanVariable::phi;
    ScanSpec spec = default_scan_spec(var);
    if (o.from) spec.start = *o.from;
    if (o.to) spec.stop = *o.to;
    spec.steps = o.steps;
    return spec;
}

std::ostream& open_out(const CommonOpts& o, std::ofstream& file) {
    if (o.out_path.empty()) return std::cout;
    file.open(o.out_path);
    if (!file) throw std::invalid_argument("cannot open output file '" + o.out_path + "'");
    return file;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_grid = true) {
    cmd->add_option("--channel", o.channel, "Channel id or prefix (default Lambda)");
    cmd->add_option("--parent", o.parent, "Parent: eta_c, chi_c0 or jpsi");
    cmd->add_option("--channels", o.channels_path, "Channel config file (built-in table if absent)");
    cmd->add_option("--out", o.out_path, "Output file (stdout if absent)");
    if (with_grid) {
        cmd->add_option("--quantity", o.quantity, "Quantity: ch_mean, kappa3 or mu4");
        cmd->add_option("--from", o.from, "Grid start (radians)");
        cmd->add_option("--to", o.to, "Grid stop (radians)");
        cmd->add_option("--steps", o.steps, "Grid points (default 721)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scans and classical-bound verdicts for hyperon-pair spin correlations"};
    app.require_subcommand(1);

    CommonOpts scan_opts, ext_opts, report_opts, mc_opts, channels_opts;
    std::uint64_t mc_events = 1000000, mc_seed = 1;
    double ext_tol = 1e-8;

    CLI::App* cmd_scan = app.add_subcommand("scan", "Quantum curve and bounds on a grid");
    add_common(cmd_scan, scan_opts);

    CLI::App* cmd_ext = app.add_subcommand("extremum", "Refine the maximum of a quantity");
    add_common(cmd_ext, ext_opts);
    cmd_ext->add_option("--tol", ext_tol, "Golden-section width tolerance (default 1e-8)");

    CLI::App* cmd_report = app.add_subcommand("report", "Violation verdicts per quantity (JSON)");
    add_common(cmd_report, report_opts, false);

    CLI::App* cmd_mc = app.add_subcommand("mc", "Monte Carlo confirmation of the analytic scan");
    add_common(cmd_mc, mc_opts);
    cmd_mc->add_option("--events", mc_events, "Events per batch (default 1e6)");
    cmd_mc->add_option("--seed", mc_seed, "Random seed (default 1)");

    CLI::App* cmd_channels = app.add_subcommand("channels", "Print or export the channel table");
    add_common(cmd_channels, channels_opts, false);

    CommonOpts ev_opts;
    std::uint64_t ev_events = 100000, ev_seed = 1;
    double ev_theta = 1.5707963267948966;
    CLI::App* cmd_events = app.add_subcommand("events", "Simulate decay events and write them as CSV");
    add_common(cmd_events, ev_opts, false);
    cmd_events->add_option("--events", ev_events, "Number of events (default 1e5)");
    cmd_events->add_option("--seed", ev_seed, "Random seed (default 1)");
    cmd_events->add_option("--theta", ev_theta,
                           "Scattering angle for jpsi parents (default pi/2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_scan->parsed()) {
            const auto table = load_table(scan_opts);
            const ChannelConfig& ch = find_channel(table, scan_opts.channel);
            const Parent parent = parse_parent(scan_opts.parent);
            const ScanTable result =
                scan(ch, parent, parse_quantity(scan_opts.quantity), make_spec(scan_opts, parent));
            std::ofstream file;
            write_scan_csv(result, open_out(scan_opts, file));
        } else if (cmd_ext->parsed()) {
            const auto table = load_table(ext_opts);
            const ChannelConfig& ch = find_channel(table, ext_opts.channel);
            const Parent parent = parse_parent(ext_opts.parent);
            // The skewness and fourth-moment maxima of the singlet channels
            // sit at negative phi; widen the default grid accordingly.
            ScanSpec spec = make_spec(ext_opts, parent);
            if (parent != Parent::jpsi && !ext_opts.from && !ext_opts.to)
                spec = {ScanVariable::phi, -kPi / 2.0, kPi / 2.0, ext_opts.steps};
            const Extremum ext =
                find_extremum(ch, parent, parse_quantity(ext_opts.quantity), spec, ext_tol);
            std::ofstream file;
            std::ostream& out = open_out(ext_opts, file);
            char buf[128];
            std::snprintf(buf, sizeof buf, "argmax,value\n%.12g,%.12g\n", ext.argmax, ext.value);
            out << buf;
        } else if (cmd_report->parsed()) {
            const auto table = load_table(report_opts);
            const ChannelConfig& ch = find_channel(table, report_opts.channel);
            const auto reports = report(ch, parse_parent(report_opts.parent));
            std::ofstream file;
            open_out(report_opts, file) << report_to_json(reports) << "\n";
        } else if (cmd_mc->parsed()) {
            const auto table = load_table(mc_opts);
            const ChannelConfig& ch = find_channel(table, mc_opts.channel);
            const Parent parent = parse_parent(mc_opts.parent);
            const McTable result = mc_scan(ch, parent, parse_quantity(mc_opts.quantity),
                                           make_spec(mc_opts, parent), mc_events, mc_seed);
            std::ofstream file;
            write_mc_csv(result, open_out(mc_opts, file));
        } else if (cmd_events->parsed()) {
            const auto table = load_table(ev_opts);
            const ChannelConfig& ch = find_channel(table, ev_opts.channel);
            const Parent parent = parse_parent(ev_opts.parent);
            TwoQubitDecomposition truth;
            if (parent == Parent::jpsi) {
                truth = decompose(build_xstate(xstate_coeffs({ch.alpha_psi, ch.delta_phi, ev_theta})));
            } else {
                truth.c = Mat3::diag(-1.0, -1.0, -1.0);
            }
            const EventBatch batch =
                sample_events(truth, ch.alpha_y, ch.alpha_ybar(), ev_events, ev_seed);
            std::ofstream file;
            write_events_csv(batch, open_out(ev_opts, file));
        } else if (cmd_channels->parsed()) {
            const auto table = load_table(channels_opts);
            std::ofstream file;
            std::ostream& out = open_out(channels_opts, file);
            if (!channels_opts.out_path.empty()) {
                file.close();
                save_channels(table, channels_opts.out_path);
            } else {
                for (const auto& c : table) {
                    char buf[256];
                    std::snprintf(buf, sizeof buf,
                                  "%-18s %-20s alpha_y=%+.3f  beta(eta_c)=%.3f  beta(chi_c0)=%.3f  "
                                  "beta(jpsi)=%.3f  alpha_psi=%+.3f  delta_phi=%+.3f\n",
                                  c.channel_id.c_str(), c.decay_mode.c_str(), c.alpha_y, c.beta_etac,
                                  c.beta_chic0, c.beta_jpsi, c.alpha_psi, c.delta_phi);
                    out << buf;
                }
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
