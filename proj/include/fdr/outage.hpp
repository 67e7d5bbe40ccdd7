#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdr/beamforming.hpp"

namespace fdr {

struct OutageQuery {
    Scheme scheme = Scheme::TZF;
    SystemConfig cfg;
    double alpha = 0.5;
    double gamma_th = 3.0;
};

// gamma_th taken from the configured rate, 2^R_c - 1.
OutageQuery make_query(Scheme scheme, const SystemConfig& cfg, double alpha);

double outage_tzf_exact(const OutageQuery& q);
double outage_tzf_asymptotic(const OutageQuery& q);
double outage_rzf_exact(const OutageQuery& q);
double outage_rzf_asymptotic(const OutageQuery& q);
double outage_mrc_case1_exact(const OutageQuery& q);       // M_T = 1, M_R >= 2
double outage_mrc_case1_asymptotic(const OutageQuery& q);  // M_T = 1, M_R >= 2
double outage_mrc_floor(const OutageQuery& q);             // M_T = 1
double outage_mrc_case2_exact(const OutageQuery& q);       // M_R = 1
double outage_mrc_case2_asymptotic(const OutageQuery& q, int k_max);

bool has_exact_outage(Scheme scheme, int M_R, int M_T);
// Dispatches to the closed-form integral for the scheme; throws std::invalid_argument if none exists.
double outage_exact(const OutageQuery& q);

double delay_throughput(double alpha, double R_c, double p_out);

enum class Provenance { Exact, Asymptotic, MonteCarlo };
std::string provenance_name(Provenance p);

struct CurvePoint {
    double axis = 0.0;
    double value = 0.0;
    Provenance provenance = Provenance::Exact;
    double ci95 = 0.0;
};

struct OutageCurve {
    std::string axis_name;
    std::vector<CurvePoint> points;
};

struct DelayOptimum {
    double alpha_star = 0.0;
    double throughput = 0.0;
    Provenance provenance = Provenance::Exact;
};

// Maximizes (1 - P_out) R_c (1 - alpha) over alpha: grid step 0.01, then golden refinement to 1e-5.
// Schemes without a closed-form outage fall back to Monte Carlo with common random numbers.
DelayOptimum optimal_alpha_delay(Scheme scheme, const SystemConfig& cfg, std::uint64_t mc_trials = 20000, std::uint64_t seed = 1);

}  // namespace fdr
