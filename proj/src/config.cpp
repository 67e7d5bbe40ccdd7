#include "fdr/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fdr {

namespace {

constexpr std::array<const char*, 11> kKeys = {"p_s_dbm", "sigma2_r_dbm", "sigma2_d_dbm", "li_dbm", "d1",  "d2",
                                               "tau",     "eta",          "m_r",          "m_t",    "r_c"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

int as_count(const std::string& key, double v) {
    if (v != std::floor(v) || v < 1.0 || v > 16.0) throw std::invalid_argument(key + " must be an integer in [1, 16]");
    return static_cast<int>(v);
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
double li_db_to_variance(double db) { return std::pow(10.0, db / 10.0); }

bool is_config_key(const std::string& key) {
    for (const char* k : kKeys)
        if (key == k) return true;
    return false;
}

std::map<std::string, double> parse_config_text(std::string_view text) {
    std::map<std::string, double> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string val = trim(std::string_view(t).substr(eq + 1));
        if (!is_config_key(key)) throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != val.size())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad number '" + val + "'");
        out[key] = v;
    }
    return out;
}

void apply_setting(SystemConfig& cfg, const std::string& key, double v) {
    if (key == "p_s_dbm") cfg.P_S = dbm_to_watts(v);
    else if (key == "sigma2_r_dbm") cfg.sigma2_R = dbm_to_watts(v);
    else if (key == "sigma2_d_dbm") cfg.sigma2_D = dbm_to_watts(v);
    else if (key == "li_dbm") cfg.sigma2_RR = li_db_to_variance(v);
    else if (key == "d1") cfg.d1 = v;
    else if (key == "d2") cfg.d2 = v;
    else if (key == "tau") cfg.tau = v;
    else if (key == "eta") cfg.eta = v;
    else if (key == "m_r") cfg.M_R = as_count(key, v);
    else if (key == "m_t") cfg.M_T = as_count(key, v);
    else if (key == "r_c") cfg.R_c = v;
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

void apply_settings(SystemConfig& cfg, const std::map<std::string, double>& kv) {
    for (const auto& [k, v] : kv) apply_setting(cfg, k, v);
}

SystemConfig load_config_file(const std::string& path, SystemConfig base) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    apply_settings(base, parse_config_text(ss.str()));
    return base;
}

}  // namespace fdr
