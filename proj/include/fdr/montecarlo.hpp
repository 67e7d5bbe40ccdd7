#pragma once

#include <cstdint>
#include <functional>

#include "fdr/beamforming.hpp"

namespace fdr {

struct McEstimate {
    double mean = 0.0;
    double ci_halfwidth_95 = 0.0;  // 1.96 sqrt(var / n)
    std::uint64_t n_trials = 0;
    std::uint64_t seed = 0;
};

struct AlphaPolicy {
    enum class Kind { Fixed, PerDrawOptimal } kind = Kind::Fixed;
    double alpha = 0.5;

    static AlphaPolicy fixed(double a) { return {Kind::Fixed, a}; }
    static AlphaPolicy per_draw_optimal() { return {Kind::PerDrawOptimal, 0.0}; }
};

// Beamformer pair of a scheme for one draw.
BeamformerPair scheme_pair(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double alpha);
double scheme_sinr(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double alpha);

// Mean and 95% half-width of per-trial values, trial i drawing from stream (seed, i).
// The result does not depend on the worker count (0 picks the hardware concurrency).
McEstimate estimate_mean(const std::function<double(std::uint64_t)>& trial, std::uint64_t n, std::uint64_t seed,
                         unsigned workers = 1);

McEstimate estimate_outage(Scheme scheme, const SystemConfig& cfg, double alpha, double gamma_th, std::uint64_t n,
                           std::uint64_t seed, unsigned workers = 1);
McEstimate estimate_throughput(Scheme scheme, const SystemConfig& cfg, AlphaPolicy policy, std::uint64_t n,
                               std::uint64_t seed, unsigned workers = 1);
McEstimate estimate_delay_throughput(Scheme scheme, const SystemConfig& cfg, double alpha, std::uint64_t n,
                                     std::uint64_t seed, unsigned workers = 1);

}  // namespace fdr
