#include "hypercorr/channels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hypercorr {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string parent_name(Parent p) {
    switch (p) {
        case Parent::eta_c: return "eta_c";
        case Parent::chi_c0: return "chi_c0";
        case Parent::jpsi: return "jpsi";
    }
    return "?";
}

Parent parse_parent(const std::string& name) {
    const std::string n = lower(name);
    if (n == "eta_c" || n == "etac") return Parent::eta_c;
    if (n == "chi_c0" || n == "chic0") return Parent::chi_c0;
    if (n == "jpsi" || n == "j/psi") return Parent::jpsi;
    throw std::invalid_argument("unknown parent '" + name + "' (expected eta_c, chi_c0 or jpsi)");
}

double ChannelConfig::beta_for(Parent p) const {
    switch (p) {
        case Parent::eta_c: return beta_etac;
        case Parent::chi_c0: return beta_chic0;
        case Parent::jpsi: return beta_jpsi;
    }
    return 0.0;
}

void ChannelConfig::validate() const {
    std::vector<std::string> problems;
    if (channel_id.empty()) problems.push_back("channel_id is empty");
    if (!(std::abs(alpha_y) <= 1.0)) problems.push_back("alpha_y outside [-1, 1]");
    for (auto [name, beta] : {std::pair<const char*, double>{"beta_etac", beta_etac},
                              {"beta_chic0", beta_chic0},
                              {"beta_jpsi", beta_jpsi}})
        if (!(beta > 0.0 && beta < 1.0)) problems.push_back(std::string(name) + " outside (0, 1)");
    if (!(std::abs(alpha_psi) <= 1.0)) problems.push_back("alpha_psi outside [-1, 1]");
    if (!(delta_phi > -kPi && delta_phi <= kPi)) problems.push_back("delta_phi outside (-pi, pi]");
    if (!problems.empty()) {
        std::string msg = "channel '" + channel_id + "' invalid:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw std::invalid_argument(msg);
    }
}

std::vector<ChannelConfig> builtin_channels() {
    std::vector<ChannelConfig> v;
    v.push_back({"Lambda-Lambdabar", "Lambda -> p pi-", 0.755, 0.003, 64.0, 0.664, 0.757, 0.693,
                 19.43, 0.33, 0.475, 0.004, 0.752, 0.008, "BESIII; PDG"});
    v.push_back({"Sigma+-Sigmabar-", "Sigma+ -> p pi0", -0.994, 0.004, 52.0, 0.604, 0.718, 0.640,
                 15.0, 2.4, -0.508, 0.007, -0.270, 0.015, "BESIII; PDG"});
    v.push_back({"Xi--Xibar+", "Xi- -> Lambda pi-", -0.379, 0.004, 100.0, 0.464, 0.633, 0.521, 9.7,
                 0.8, 0.586, 0.016, 1.213, 0.049, "BESIII; PDG"});
    v.push_back({"Xi0-Xibar0", "Xi0 -> Lambda pi0", -0.375, 0.003, 96.0, 0.473, 0.638, 0.528, 11.65,
                 0.04, 0.514, 0.016, 1.168, 0.026, "BESIII; PDG"});
    for (const auto& c : v) c.validate();
    return v;
}

namespace {

struct FieldBinding {
    double ChannelConfig::*num = nullptr;
    std::string ChannelConfig::*str = nullptr;
};

const std::map<std::string, FieldBinding>& field_map() {
    static const std::map<std::string, FieldBinding> m = {
        {"decay_mode", {nullptr, &ChannelConfig::decay_mode}},
        {"refs", {nullptr, &ChannelConfig::refs}},
        {"alpha_y", {&ChannelConfig::alpha_y, nullptr}},
        {"alpha_y_err", {&ChannelConfig::alpha_y_err, nullptr}},
        {"br_dec_percent", {&ChannelConfig::br_dec_percent, nullptr}},
        {"beta_etac", {&ChannelConfig::beta_etac, nullptr}},
        {"beta_chic0", {&ChannelConfig::beta_chic0, nullptr}},
        {"beta_jpsi", {&ChannelConfig::beta_jpsi, nullptr}},
        {"br_prod_1e4", {&ChannelConfig::br_prod_1e4, nullptr}},
        {"br_prod_1e4_err", {&ChannelConfig::br_prod_1e4_err, nullptr}},
        {"alpha_psi", {&ChannelConfig::alpha_psi, nullptr}},
        {"alpha_psi_err", {&ChannelConfig::alpha_psi_err, nullptr}},
        {"delta_phi", {&ChannelConfig::delta_phi, nullptr}},
        {"delta_phi_err", {&ChannelConfig::delta_phi_err, nullptr}},
    };
    return m;
}

}  // namespace

std::vector<ChannelConfig> load_channels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_channels: cannot open '" + path.string() + "'");

    std::vector<ChannelConfig> channels;
    ChannelConfig* current = nullptr;
    std::vector<std::string> errors;
    std::string line;
    int line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                errors.push_back("line " + std::to_string(line_no) + ": unterminated section header");
                continue;
            }
            channels.emplace_back();
            current = &channels.back();
            current->channel_id = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        if (!current) {
            errors.push_back("line " + std::to_string(line_no) + ": key outside a [channel] section");
            continue;
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const auto it = field_map().find(key);
        if (it == field_map().end()) {
            errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            continue;
        }
        if (it->second.str) {
            current->*(it->second.str) = value;
        } else {
            std::istringstream ss(value);
            double num;
            char extra;
            if (!(ss >> num) || (ss >> extra)) {
                errors.push_back("line " + std::to_string(line_no) + ": key '" + key +
                                 "' needs a numeric value, got '" + value + "'");
                continue;
            }
            current->*(it->second.num) = num;
        }
    }

    for (const auto& c : channels) {
        try {
            c.validate();
        } catch (const std::invalid_argument& e) {
            errors.push_back(e.what());
        }
    }
    if (!errors.empty()) {
        std::string msg = "load_channels: '" + path.string() + "' has problems:";
        for (const auto& e : errors) msg += "\n" + e;
        throw std::invalid_argument(msg);
    }
    return channels;
}

void save_channels(const std::vector<ChannelConfig>& channels, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_channels: cannot open '" + path.string() + "'");
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    for (const auto& c : channels) {
        out << "[" << c.channel_id << "]\n";
        out << "decay_mode = " << c.decay_mode << "\n";
        out << "alpha_y = " << num(c.alpha_y) << "\n";
        out << "alpha_y_err = " << num(c.alpha_y_err) << "\n";
        out << "br_dec_percent = " << num(c.br_dec_percent) << "\n";
        out << "beta_etac = " << num(c.beta_etac) << "\n";
        out << "beta_chic0 = " << num(c.beta_chic0) << "\n";
        out << "beta_jpsi = " << num(c.beta_jpsi) << "\n";
        out << "br_prod_1e4 = " << num(c.br_prod_1e4) << "\n";
        out << "br_prod_1e4_err = " << num(c.br_prod_1e4_err) << "\n";
        out << "alpha_psi = " << num(c.alpha_psi) << "\n";
        out << "alpha_psi_err = " << num(c.alpha_psi_err) << "\n";
        out << "delta_phi = " << num(c.delta_phi) << "\n";
        out << "delta_phi_err = " << num(c.delta_phi_err) << "\n";
        out << "refs = " << c.refs << "\n\n";
    }
}

const ChannelConfig& find_channel(const std::vector<ChannelConfig>& channels,
                                  const std::string& name) {
    const std::string n = lower(name);
    const ChannelConfig* match = nullptr;
    for (const auto& c : channels) {
        const std::string id = lower(c.channel_id);
        if (id == n) return c;
        if (id.rfind(n, 0) == 0) {
            if (match) throw std::invalid_argument("channel name '" + name + "' is ambiguous");
            match = &c;
        }
    }
    if (!match) throw std::invalid_argument("unknown channel '" + name + "'");
    return *match;
}

}  // namespace hypercorr
