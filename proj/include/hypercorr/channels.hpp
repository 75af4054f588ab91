#pragma once

// Physical parameters of the charmonium -> hyperon-antihyperon channels:
// the built-in table and a flat key-value config format for overrides.

#include <filesystem>
#include <string>
#include <vector>

namespace hypercorr {

enum class Parent { eta_c, chi_c0, jpsi };

std::string parent_name(Parent p);
Parent parse_parent(const std::string& name);

/// One decay channel. Central values plus optional measurement errors; the
/// errors are carried as metadata and not propagated.
struct ChannelConfig {
    std::string channel_id;
    std::string decay_mode;
    double alpha_y = 0.0;
    double alpha_y_err = 0.0;
    double br_dec_percent = 0.0;
    double beta_etac = 0.0;
    double beta_chic0 = 0.0;
    double beta_jpsi = 0.0;
    double br_prod_1e4 = 0.0;
    double br_prod_1e4_err = 0.0;
    double alpha_psi = 0.0;
    double alpha_psi_err = 0.0;
    double delta_phi = 0.0;
    double delta_phi_err = 0.0;
    std::string refs;

    /// CP-conjugate analyzing power of the antihyperon side.
    double alpha_ybar() const { return -alpha_y; }

    double beta_for(Parent p) const;

    /// Throws std::invalid_argument listing every violated constraint.
    void validate() const;
};

/// The four built-in channels.
std::vector<ChannelConfig> builtin_channels();

/// Parse a channel config file. Unknown keys are rejected; parse and
/// validation errors carry line/field diagnostics. An empty file yields an
/// empty list.
std::vector<ChannelConfig> load_channels(const std::filesystem::path& path);

void save_channels(const std::vector<ChannelConfig>& channels, const std::filesystem::path& path);

/// Case-insensitive lookup by id or id prefix. Throws when absent/ambiguous.
const ChannelConfig& find_channel(const std::vector<ChannelConfig>& channels,
                                  const std::string& name);

}  // namespace hypercorr
