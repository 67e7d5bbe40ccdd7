#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fdr/beamforming.hpp"

namespace fdr {

// Lifted max-min problem over W = w w^H for the relay transmit beamformer.
struct SdrProblem {
    CMat A;  // H_RR^H h_SR h_SR^H H_RR
    CMat G;  // H_RR^H H_RR
    CMat C;  // h_RD^H h_RD
    LinkGains gains;
    double h_norm2 = 0.0;  // ||h_SR||^2

    std::size_t dim() const { return C.rows(); }
};

SdrProblem make_sdr_problem(const ChannelRealization& ch, const LinkGains& g);
SdrProblem make_sdr_problem(const ChannelRealization& ch, const SystemConfig& cfg, double alpha);

enum class RankFlag { RankOne, RecoveredFromHigherRank };
// Which branch of the optimum search produced the answer.
enum class OptimumCase { MinSinrDirection, Mrt, Relaxation, SingleAntenna };

struct SdrSolution {
    CMat W_t;
    double t_star = 0.0;
    CVec recovered_w_t;
    RankFlag rank_flag = RankFlag::RankOne;
    std::vector<double> dual_multipliers;  // weights on the two hop constraints
    OptimumCase branch = OptimumCase::Relaxation;
    double objective = 0.0;  // min(f1, f2) at recovered_w_t
    int bisection_steps = 0;
};

// The barrier solver failed to converge or disagreed with its dual certificate.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double t_upper_bound(const SdrProblem& prob);

// Hop values of a lifted point (trace 1 is not assumed).
double lifted_first_hop(const CMat& W, const SdrProblem& prob);
double lifted_second_hop(const CMat& W, const SdrProblem& prob);
double lifted_objective(const CMat& W, const SdrProblem& prob);

// Empty when no W with tr W = 1 meets both hop constraints at level t (margin 1e-8).
std::optional<SdrSolution> solve_feasibility(const SdrProblem& prob, double t);

// Fast yes/no version used by bisection and by outage counting.
bool is_feasible(const SdrProblem& prob, double t);

SdrSolution optimum_transmit(const ChannelRealization& ch, const LinkGains& g);
SdrSolution optimum_transmit(const ChannelRealization& ch, const SystemConfig& cfg, double alpha);

CVec rank_one_recover(const CMat& W, const SdrProblem& prob);
CVec rank_one_recover(const CMat& W, const SdrProblem& prob, RankFlag& flag);

// True iff the optimum beamformer reaches end-to-end SINR >= t.
bool optimum_reaches(const ChannelRealization& ch, const LinkGains& g, double t);

BeamformerPair optimum_pair(const ChannelRealization& ch, const SystemConfig& cfg, double alpha);
BeamformerPair optimum_pair(const ChannelRealization& ch, const LinkGains& g);

}  // namespace fdr
