#pragma once

#include "fdr/beamforming.hpp"

namespace fdr {

// Per-scheme scalars that fix the rate as a function of the time split.
struct AlphaCoefficients {
    Scheme scheme = Scheme::Optimum;
    // Optimum
    double b0 = 0.0, b1 = 0.0, b2 = 0.0, f = 0.0, f_tilde = 0.0, alpha0 = 0.0;
    // TZF
    double a1 = 0.0, a2 = 0.0, alpha1 = 0.0;
    // RZF
    double a3_rzf = 0.0, a4 = 0.0, alpha2 = 0.0;
    // MRC/MRT
    double b3 = 0.0, b4 = 0.0, b5 = 0.0, a3_mrc = 0.0, alpha3 = 0.0;
    double eta = 1.0;
};

enum class AlphaBranch { LambertBranch, BoundaryBranch };

struct AlphaResult {
    double alpha_star = 0.0;
    double rate_at_star = 0.0;
    AlphaBranch branch = AlphaBranch::LambertBranch;
};

double instantaneous_rate(double alpha, double sinr);

AlphaCoefficients optimum_coefficients(double b0, double b1, double b2, double f);
AlphaCoefficients tzf_coefficients(double a1, double a2);
AlphaCoefficients rzf_coefficients(double a3, double a4);
AlphaCoefficients mrc_coefficients(double b3, double b4, double b5, double eta);

// Coefficients of one channel draw; the optimum scheme needs its transmit beamformer.
AlphaCoefficients optimum_coefficients(const CVec& w_t, const ChannelRealization& ch, const SystemConfig& cfg);
AlphaCoefficients tzf_coefficients(const ChannelRealization& ch, const SystemConfig& cfg);
AlphaCoefficients rzf_coefficients(const ChannelRealization& ch, const SystemConfig& cfg);
AlphaCoefficients mrc_coefficients(const ChannelRealization& ch, const SystemConfig& cfg);

// Rate of the coefficient model at a given split.
double coefficient_rate(const AlphaCoefficients& co, double alpha);

AlphaResult optimal_alpha_optimum(const AlphaCoefficients& co);
AlphaResult optimal_alpha_tzf(const AlphaCoefficients& co);
AlphaResult optimal_alpha_rzf(const AlphaCoefficients& co);
AlphaResult optimal_alpha_mrc(const AlphaCoefficients& co);
AlphaResult optimal_alpha(const AlphaCoefficients& co);

// Maximizer of (1 - a) log2(1 + c a / (1 - a)) subject to a / (1 - a) <= x_cap.
AlphaResult lambert_split(double c, double x_cap);

enum class JointMethod { LineSearch, Alternating };

struct JointResult {
    CVec w_t;
    double alpha = 0.0;
    double rate = 0.0;
    bool converged = true;
    int iterations = 0;
};

// Joint transmit beamformer and split for the optimum scheme.
JointResult joint_optimum(const ChannelRealization& ch, const SystemConfig& cfg, JointMethod method, double grid_step = 1e-3);

// Rate of a scheme for one draw at a split, with the source using P_e while harvesting
// and P_i while relaying information.
double scheme_rate(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double alpha, double P_e, double P_i);
double scheme_rate(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double alpha);

struct PowerSplitResult {
    double alpha = 0.0;
    double split = 1.0;  // P_e / P_S
    double P_e = 0.0;
    double P_i = 0.0;
    double rate = 0.0;
};

// Best harvesting-phase power at a fixed split under alpha P_e + (1 - alpha) P_i <= P_S and a per-phase cap.
PowerSplitResult best_power_at(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double p_max, double alpha,
                               int split_points = 200);

// Two-dimensional grid search over the split and the harvesting-phase power, refined around the best cell.
PowerSplitResult optimize_power_split(const ChannelRealization& ch, const SystemConfig& cfg, double p_max,
                                      Scheme scheme = Scheme::Optimum, int alpha_points = 99, int split_points = 200);

}  // namespace fdr
