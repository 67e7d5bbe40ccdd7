#include "fdr/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdr {

void SystemConfig::validate() const {
    if (!(P_S > 0.0)) throw std::invalid_argument("P_S must be positive");
    if (!(sigma2_R > 0.0) || !(sigma2_D > 0.0)) throw std::invalid_argument("noise variances must be positive");
    if (!(sigma2_RR >= 0.0)) throw std::invalid_argument("sigma2_RR must be nonnegative");
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw std::invalid_argument("distances must be positive");
    if (!(tau >= 2.0)) throw std::invalid_argument("tau must be >= 2");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
    if (M_R < 1 || M_T < 1) throw std::invalid_argument("antenna counts must be >= 1");
    if (!(R_c >= 0.0)) throw std::invalid_argument("R_c must be nonnegative");
}

double SystemConfig::path1() const { return std::pow(d1, tau); }
double SystemConfig::path2() const { return std::pow(d2, tau); }
double SystemConfig::gamma_th() const { return std::exp2(R_c) - 1.0; }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(RngStream s) : key_(splitmix64(s.seed ^ splitmix64(s.stream_index + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterRng::next_u64() {
    return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
}

double CounterRng::uniform() {
    // 53 random bits, shifted off zero
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

cplx CounterRng::complex_normal() {
    // Box-Muller with total variance 1: each component has variance 1/2
    const double r = std::sqrt(-std::log(uniform()));
    const double th = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(th), r * std::sin(th)};
}

double kappa(double alpha, double eta) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("kappa: alpha must lie in [0, 1)");
    return eta * alpha / (1.0 - alpha);
}

double relay_power(const SystemConfig& cfg, const ChannelRealization& ch, double alpha) {
    return kappa(alpha, cfg.eta) / cfg.path1() * cfg.P_S * norm2(ch.h_SR);
}

ChannelRealization draw_channel(const SystemConfig& cfg, RngStream stream) {
    CounterRng rng(stream);
    ChannelRealization ch;
    const auto mr = static_cast<std::size_t>(cfg.M_R);
    const auto mt = static_cast<std::size_t>(cfg.M_T);
    ch.h_SR.resize(mr);
    ch.h_RD.resize(mt);
    ch.H_RR = CMat(mr, mt);
    for (auto& v : ch.h_SR) v = rng.complex_normal();
    for (auto& v : ch.h_RD) v = rng.complex_normal();
    if (cfg.sigma2_RR > 0.0) {
        const double s = std::sqrt(cfg.sigma2_RR);
        for (std::size_t i = 0; i < mr; ++i)
            for (std::size_t j = 0; j < mt; ++j) ch.H_RR(i, j) = s * rng.complex_normal();
    }
    return ch;
}

void check_dimensions(const SystemConfig& cfg, const ChannelRealization& ch) {
    const auto mr = static_cast<std::size_t>(cfg.M_R);
    const auto mt = static_cast<std::size_t>(cfg.M_T);
    if (ch.h_SR.size() != mr || ch.h_RD.size() != mt || ch.H_RR.rows() != mr || ch.H_RR.cols() != mt)
        throw std::invalid_argument("channel dimensions do not match configuration");
}

}  // namespace fdr
