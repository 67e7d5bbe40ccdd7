#include "fdr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fdr/alpha.hpp"
#include "fdr/sdr.hpp"

namespace fdr {

namespace {

void require_feasible(Scheme scheme, const SystemConfig& cfg) {
    if (!scheme_feasible(scheme, cfg.M_R, cfg.M_T))
        throw SchemeInfeasible(std::string(scheme_name(scheme)) + " is infeasible for M_R=" + std::to_string(cfg.M_R) +
                               ", M_T=" + std::to_string(cfg.M_T));
}

}  // namespace

BeamformerPair scheme_pair(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    switch (scheme) {
        case Scheme::Optimum: return optimum_pair(ch, cfg, alpha);
        case Scheme::TZF: return tzf_pair(ch, cfg);
        case Scheme::RZF: return rzf_pair(ch, cfg);
        case Scheme::MrcMrt: return mrc_mrt_pair(ch);
    }
    throw std::invalid_argument("unknown scheme");
}

double scheme_sinr(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    return end_to_end_sinr(scheme_pair(scheme, ch, cfg, alpha), ch, cfg, alpha).end_to_end;
}

McEstimate estimate_mean(const std::function<double(std::uint64_t)>& trial, std::uint64_t n, std::uint64_t seed,
                         unsigned workers) {
    if (n < 1) throw std::invalid_argument("estimate_mean: n must be at least 1");
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));

    std::vector<double> values(n);
    if (workers == 1) {
        for (std::uint64_t i = 0; i < n; ++i) values[i] = trial(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t i = w; i < n; i += workers) values[i] = trial(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // Welford, in trial order
    double mean = 0.0, m2 = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double d = values[i] - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (values[i] - mean);
    }
    McEstimate est;
    est.mean = mean;
    est.n_trials = n;
    est.seed = seed;
    const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    est.ci_halfwidth_95 = 1.96 * std::sqrt(var / static_cast<double>(n));
    return est;
}

McEstimate estimate_outage(Scheme scheme, const SystemConfig& cfg, double alpha, double gamma_th, std::uint64_t n,
                           std::uint64_t seed, unsigned workers) {
    cfg.validate();
    require_feasible(scheme, cfg);
    if (n < 1) throw std::invalid_argument("estimate_outage: n must be at least 1");
    if (gamma_th == 0.0) return {0.0, 0.0, n, seed};
    if (std::isinf(gamma_th)) return {1.0, 0.0, n, seed};
    auto trial = [&](std::uint64_t i) -> double {
        const auto ch = draw_channel(cfg, {seed, i});
        if (scheme == Scheme::Optimum) return optimum_reaches(ch, link_gains(ch, cfg, alpha), gamma_th) ? 0.0 : 1.0;
        return scheme_sinr(scheme, ch, cfg, alpha) < gamma_th ? 1.0 : 0.0;
    };
    return estimate_mean(trial, n, seed, workers);
}

McEstimate estimate_throughput(Scheme scheme, const SystemConfig& cfg, AlphaPolicy policy, std::uint64_t n,
                               std::uint64_t seed, unsigned workers) {
    cfg.validate();
    require_feasible(scheme, cfg);
    auto trial = [&](std::uint64_t i) -> double {
        const auto ch = draw_channel(cfg, {seed, i});
        if (policy.kind == AlphaPolicy::Kind::Fixed)
            return instantaneous_rate(policy.alpha, scheme_sinr(scheme, ch, cfg, policy.alpha));
        switch (scheme) {
            case Scheme::Optimum: return joint_optimum(ch, cfg, JointMethod::Alternating).rate;
            case Scheme::TZF: return optimal_alpha(tzf_coefficients(ch, cfg)).rate_at_star;
            case Scheme::RZF: return optimal_alpha(rzf_coefficients(ch, cfg)).rate_at_star;
            case Scheme::MrcMrt: return optimal_alpha(mrc_coefficients(ch, cfg)).rate_at_star;
        }
        return 0.0;
    };
    return estimate_mean(trial, n, seed, workers);
}

McEstimate estimate_delay_throughput(Scheme scheme, const SystemConfig& cfg, double alpha, std::uint64_t n,
                                     std::uint64_t seed, unsigned workers) {
    const auto p = estimate_outage(scheme, cfg, alpha, cfg.gamma_th(), n, seed, workers);
    const double scale = cfg.R_c * (1.0 - alpha);
    return {(1.0 - p.mean) * scale, p.ci_halfwidth_95 * scale, n, seed};
}

}  // namespace fdr
