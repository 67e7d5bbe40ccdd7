#pragma once

#include <map>
#include <string>
#include <string_view>

#include "fdr/model.hpp"

namespace fdr {

double dbm_to_watts(double dbm);
double watts_to_dbm(double w);
// Residual LI strength is a dB figure on the dimensionless channel variance.
double li_db_to_variance(double db);

// Parses flat `key = value` text; '#' starts a comment. Unknown keys throw.
std::map<std::string, double> parse_config_text(std::string_view text);

// Applies one config key (dBm keys converted here) to cfg.
void apply_setting(SystemConfig& cfg, const std::string& key, double value);
void apply_settings(SystemConfig& cfg, const std::map<std::string, double>& kv);

SystemConfig load_config_file(const std::string& path, SystemConfig base = {});

bool is_config_key(const std::string& key);

}  // namespace fdr
