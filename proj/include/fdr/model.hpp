#pragma once

#include <cstdint>

#include "fdr/matrix.hpp"

namespace fdr {

// Scenario parameters in SI units (watts, meters).
struct SystemConfig {
    double P_S = 1e-2;         // source power
    double sigma2_R = 1e-10;   // relay noise
    double sigma2_D = 1e-10;   // destination noise
    double sigma2_RR = 1e-5;   // residual LI channel variance
    double d1 = 20.0;
    double d2 = 10.0;
    double tau = 3.0;
    double eta = 0.5;
    int M_R = 3;
    int M_T = 3;
    double R_c = 2.0;

    void validate() const;  // throws std::invalid_argument

    double rho1() const { return P_S / sigma2_R; }
    double rho2() const { return P_S / sigma2_D; }
    double path1() const;  // d1^tau
    double path2() const;  // d2^tau
    double gamma_th() const;  // 2^R_c - 1
};

struct ChannelRealization {
    CVec h_SR;  // M_R, source -> relay
    CVec h_RD;  // M_T, relay -> destination (row vector)
    CMat H_RR;  // M_R x M_T loopback channel
};

struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
};

// Counter-based generator: draw k of stream (seed, index) is a pure function of (seed, index, k).
class CounterRng {
public:
    explicit CounterRng(RngStream s);

    std::uint64_t next_u64();
    double uniform();            // (0, 1]
    cplx complex_normal();       // CN(0, 1)

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    cplx spare_;
};

std::uint64_t splitmix64(std::uint64_t x);

double kappa(double alpha, double eta);
double relay_power(const SystemConfig& cfg, const ChannelRealization& ch, double alpha);
ChannelRealization draw_channel(const SystemConfig& cfg, RngStream rng);

void check_dimensions(const SystemConfig& cfg, const ChannelRealization& ch);

}  // namespace fdr
