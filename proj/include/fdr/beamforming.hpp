#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fdr/matrix.hpp"
#include "fdr/model.hpp"

namespace fdr {

enum class Scheme { Optimum, TZF, RZF, MrcMrt };

std::string_view scheme_name(Scheme s);  // "opt", "tzf", "rzf", "mrc"
Scheme parse_scheme(std::string_view name);
bool scheme_feasible(Scheme s, int M_R, int M_T);

// Raised when a scheme cannot be built for the antenna configuration.
class SchemeInfeasible : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BeamformerPair {
    CVec w_r;
    CVec w_t;
    Scheme scheme = Scheme::MrcMrt;
    bool degenerate = false;  // a zero channel forced the e_1 convention
};

struct SinrBreakdown {
    double first_hop = 0.0;
    double second_hop = 0.0;
    double end_to_end = 0.0;
};

// Per-realization gains of the two hops:
//   first hop  = g1 |w_r^H h_SR|^2 / (q |w_r^H H_RR w_t|^2 + 1)
//   second hop = g2 |h_RD w_t|^2
struct LinkGains {
    double g1 = 0.0;
    double q = 0.0;
    double g2 = 0.0;
};

LinkGains link_gains(const ChannelRealization& ch, const SystemConfig& cfg, double alpha);
// Unequal phase powers: P_e during harvesting, P_i during information transfer.
LinkGains link_gains_split(const ChannelRealization& ch, const SystemConfig& cfg, double alpha, double P_e, double P_i);

SinrBreakdown end_to_end_sinr(const BeamformerPair& pair, const ChannelRealization& ch, const SystemConfig& cfg, double alpha);
SinrBreakdown end_to_end_sinr(const CVec& w_r, const CVec& w_t, const ChannelRealization& ch, const LinkGains& g);

CVec optimum_receive(const CVec& w_t, const ChannelRealization& ch, const SystemConfig& cfg, double alpha);
CVec optimum_receive(const CVec& w_t, const ChannelRealization& ch, const LinkGains& g);

// First-hop SINR with the best receive vector, and the second-hop SNR, for a unit w_t.
double f1(const CVec& w_t, const ChannelRealization& ch, const SystemConfig& cfg, double alpha);
double f2(const CVec& w_t, const ChannelRealization& ch, const SystemConfig& cfg, double alpha);
double f1(const CVec& w_t, const ChannelRealization& ch, const LinkGains& g);
double f2(const CVec& w_t, const ChannelRealization& ch, const LinkGains& g);

// Unit w_t maximizing f1; ties resolved toward the second-hop channel.
CVec w_min_sinr(const ChannelRealization& ch, const SystemConfig& cfg, double alpha);
CVec w_min_sinr(const ChannelRealization& ch, const LinkGains& g);

BeamformerPair tzf_pair(const ChannelRealization& ch, const SystemConfig& cfg);
BeamformerPair rzf_pair(const ChannelRealization& ch, const SystemConfig& cfg);
BeamformerPair mrc_mrt_pair(const ChannelRealization& ch);

CVec mrt_vector(const ChannelRealization& ch);

// Rotates x so its first non-negligible entry is real and positive.
CVec normalize_phase(CVec x);

}  // namespace fdr
