#include "fdr/alpha.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fdr/linalg.hpp"
#include "fdr/sdr.hpp"
#include "fdr/specfun.hpp"

namespace fdr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double split_ratio(double alpha) { return alpha / (1.0 - alpha); }

AlphaResult with_rate(AlphaResult r, const AlphaCoefficients& co) {
    r.rate_at_star = coefficient_rate(co, r.alpha_star);
    return r;
}

double golden_max(const auto& f, double lo, double hi, double tol, double& arg) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1v = f(x1), f2v = f(x2);
    while (hi - lo > tol) {
        if (f1v >= f2v) {
            hi = x2;
            x2 = x1;
            f2v = f1v;
            x1 = hi - gr * (hi - lo);
            f1v = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1v = f2v;
            x2 = lo + gr * (hi - lo);
            f2v = f(x2);
        }
    }
    arg = f1v >= f2v ? x1 : x2;
    return std::max(f1v, f2v);
}

}  // namespace

double instantaneous_rate(double alpha, double sinr) { return (1.0 - alpha) * std::log2(1.0 + sinr); }

AlphaResult lambert_split(double c, double x_cap) {
    AlphaResult r;
    if (!(c > 0.0) || !(x_cap > 0.0)) return r;
    const double y = std::exp(lambert_w0((c - 1.0) / std::numbers::e) + 1.0);
    if (y < c * x_cap + 1.0) {
        r.alpha_star = (y - 1.0) / (c - 1.0 + y);
        r.branch = AlphaBranch::LambertBranch;
    } else {
        r.alpha_star = x_cap / (1.0 + x_cap);
        r.branch = AlphaBranch::BoundaryBranch;
    }
    return r;
}

AlphaCoefficients optimum_coefficients(double b0, double b1, double b2, double f) {
    AlphaCoefficients co;
    co.scheme = Scheme::Optimum;
    co.b0 = b0;
    co.b1 = b1;
    co.b2 = b2;
    co.f = f;
    co.f_tilde = f * b0;
    // positive root of b0 b2 x^2 + (b0 + b1 - b2) x - 1 = 0
    const double B = b0 + b1 - b2;
    const double disc = std::sqrt(B * B + 4.0 * b0 * b2);
    if (B >= 0.0) co.alpha0 = (B + disc > 0.0) ? 2.0 / (B + disc) : kInf;
    else co.alpha0 = (disc - B) / (2.0 * b0 * b2);
    return co;
}

AlphaCoefficients tzf_coefficients(double a1, double a2) {
    AlphaCoefficients co;
    co.scheme = Scheme::TZF;
    co.a1 = a1;
    co.a2 = a2;
    co.alpha1 = a1 * a2;
    return co;
}

AlphaCoefficients rzf_coefficients(double a3, double a4) {
    AlphaCoefficients co;
    co.scheme = Scheme::RZF;
    co.a3_rzf = a3;
    co.a4 = a4;
    co.alpha2 = a3 * a4;
    return co;
}

AlphaCoefficients mrc_coefficients(double b3, double b4, double b5, double eta) {
    AlphaCoefficients co;
    co.scheme = Scheme::MrcMrt;
    co.b3 = b3;
    co.b4 = b4;
    co.b5 = b5;
    co.eta = eta;
    co.a3_mrc = eta * b3;
    co.alpha3 = 0.5 * eta * (b5 + std::sqrt(b5 * b5 + 4.0 * b4));
    return co;
}

AlphaCoefficients optimum_coefficients(const CVec& w_t, const ChannelRealization& ch, const SystemConfig& cfg) {
    check_dimensions(cfg, ch);
    const double p1 = cfg.path1(), p2 = cfg.path2(), hn = norm2(ch.h_SR);
    const CVec a = ch.H_RR * w_t;
    cplx hw = 0.0;
    for (std::size_t i = 0; i < w_t.size(); ++i) hw += ch.h_RD[i] * w_t[i];
    const double b0 = cfg.rho2() / cfg.rho1() * cfg.eta / p2 * std::norm(hw);
    const double b1 = cfg.eta * cfg.rho1() / p1 * std::norm(dot(ch.h_SR, a));
    const double b2 = cfg.eta * cfg.rho1() / p1 * hn * norm2(a);
    auto co = optimum_coefficients(b0, b1, b2, cfg.rho1() / p1 * hn);
    co.eta = cfg.eta;
    return co;
}

AlphaCoefficients tzf_coefficients(const ChannelRealization& ch, const SystemConfig& cfg) {
    check_dimensions(cfg, ch);
    const double p1 = cfg.path1(), p2 = cfg.path2(), hn = norm2(ch.h_SR);
    const double bh = norm2(projection_B(ch) * conj(ch.h_RD));
    auto co = tzf_coefficients(cfg.eta * cfg.rho2() * hn * bh / (p1 * p2), p1 / (cfg.rho1() * hn));
    co.eta = cfg.eta;
    return co;
}

AlphaCoefficients rzf_coefficients(const ChannelRealization& ch, const SystemConfig& cfg) {
    check_dimensions(cfg, ch);
    const double p1 = cfg.path1(), p2 = cfg.path2(), hn = norm2(ch.h_SR);
    const double dh = norm2(projection_D(ch) * ch.h_SR);
    auto co = rzf_coefficients(cfg.eta * cfg.rho2() * hn * norm2(ch.h_RD) / (p1 * p2), p1 / (cfg.rho1() * dh));
    co.eta = cfg.eta;
    return co;
}

AlphaCoefficients mrc_coefficients(const ChannelRealization& ch, const SystemConfig& cfg) {
    check_dimensions(cfg, ch);
    const double p1 = cfg.path1(), p2 = cfg.path2(), hn = norm2(ch.h_SR), gn = norm2(ch.h_RD);
    const double leak = std::norm(dot(ch.h_SR, ch.H_RR * conj(ch.h_RD)));
    return mrc_coefficients(cfg.rho2() * hn * gn / (p1 * p2), cfg.rho2() * leak / (p1 * p2), cfg.rho2() * gn / (cfg.rho1() * p2),
                            cfg.eta);
}

double coefficient_rate(const AlphaCoefficients& co, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) return 0.0;
    const double x = split_ratio(alpha);
    double sinr = 0.0;
    switch (co.scheme) {
        case Scheme::Optimum:
            sinr = co.f * std::min(1.0 - x * co.b1 / (1.0 + x * co.b2), x * co.b0);
            break;
        case Scheme::TZF:
            sinr = std::min(1.0 / co.a2, x * co.a1);
            break;
        case Scheme::RZF:
            sinr = std::min(1.0 / co.a4, x * co.a3_rzf);
            break;
        case Scheme::MrcMrt: {
            const double k = co.eta * x;
            sinr = co.b3 * std::min(1.0 / (k * co.b4 + co.b5), k);
            break;
        }
    }
    return instantaneous_rate(alpha, std::max(0.0, sinr));
}

AlphaResult optimal_alpha_optimum(const AlphaCoefficients& co) {
    if (!(co.f_tilde > 0.0)) return with_rate({}, co);
    return with_rate(lambert_split(co.f_tilde, co.alpha0), co);
}

AlphaResult optimal_alpha_tzf(const AlphaCoefficients& co) {
    if (!(co.a1 > 0.0) || !(co.alpha1 > 0.0)) return with_rate({}, co);
    return with_rate(lambert_split(co.a1, 1.0 / co.alpha1), co);
}

AlphaResult optimal_alpha_rzf(const AlphaCoefficients& co) {
    if (!(co.a3_rzf > 0.0) || !(co.alpha2 > 0.0)) return with_rate({}, co);
    return with_rate(lambert_split(co.a3_rzf, 1.0 / co.alpha2), co);
}

AlphaResult optimal_alpha_mrc(const AlphaCoefficients& co) {
    if (!(co.a3_mrc > 0.0)) return with_rate({}, co);
    const double cap = co.alpha3 > 0.0 ? 1.0 / co.alpha3 : kInf;
    return with_rate(lambert_split(co.a3_mrc, cap), co);
}

AlphaResult optimal_alpha(const AlphaCoefficients& co) {
    switch (co.scheme) {
        case Scheme::Optimum: return optimal_alpha_optimum(co);
        case Scheme::TZF: return optimal_alpha_tzf(co);
        case Scheme::RZF: return optimal_alpha_rzf(co);
        case Scheme::MrcMrt: return optimal_alpha_mrc(co);
    }
    return {};
}

double scheme_rate(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double alpha, double P_e, double P_i) {
    check_dimensions(cfg, ch);
    const LinkGains g = link_gains_split(ch, cfg, alpha, P_e, P_i);
    BeamformerPair pair;
    switch (scheme) {
        case Scheme::Optimum: pair = optimum_pair(ch, g); break;
        case Scheme::TZF: pair = tzf_pair(ch, cfg); break;
        case Scheme::RZF: pair = rzf_pair(ch, cfg); break;
        case Scheme::MrcMrt: pair = mrc_mrt_pair(ch); break;
    }
    return instantaneous_rate(alpha, end_to_end_sinr(pair.w_r, pair.w_t, ch, g).end_to_end);
}

double scheme_rate(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    return scheme_rate(scheme, ch, cfg, alpha, cfg.P_S, cfg.P_S);
}

JointResult joint_optimum(const ChannelRealization& ch, const SystemConfig& cfg, JointMethod method, double grid_step) {
    check_dimensions(cfg, ch);
    JointResult out;
    if (method == JointMethod::LineSearch) {
        auto rate_at = [&](double a) { return scheme_rate(Scheme::Optimum, ch, cfg, a); };
        const int points = static_cast<int>(std::floor(1.0 / grid_step + 0.5)) - 1;
        double best_a = grid_step, best = -1.0;
        for (int j = 1; j <= points; ++j) {
            const double a = j * grid_step;
            const double r = rate_at(a);
            if (r > best) {
                best = r;
                best_a = a;
            }
        }
        double arg = best_a;
        const double refined = golden_max(rate_at, std::max(1e-9, best_a - grid_step), std::min(1.0 - 1e-9, best_a + grid_step), 1e-7, arg);
        if (refined > best) {
            best = refined;
            best_a = arg;
        }
        out.alpha = best_a;
        out.rate = best;
        out.w_t = optimum_pair(ch, cfg, best_a).w_t;
        out.iterations = points;
        return out;
    }
    // alternate between the beamformer at fixed split and the closed-form split at fixed beamformer
    double alpha = 0.5;
    {
        const auto t = optimal_alpha_mrc(mrc_coefficients(ch, cfg));
        if (t.alpha_star > 0.0) alpha = t.alpha_star;
    }
    double rate = -1.0;
    out.converged = false;
    for (int it = 0; it < 50; ++it) {
        const CVec w = optimum_pair(ch, cfg, alpha).w_t;
        const auto res = optimal_alpha_optimum(optimum_coefficients(w, ch, cfg));
        out.iterations = it + 1;
        const bool settled = std::abs(res.rate_at_star - rate) < 1e-8;
        if (res.rate_at_star >= rate) {
            rate = res.rate_at_star;
            out.w_t = w;
            out.alpha = res.alpha_star;
        }
        if (settled) {
            out.converged = true;
            break;
        }
        alpha = res.alpha_star;
        if (alpha <= 0.0) {
            out.converged = true;
            break;
        }
    }
    out.rate = std::max(rate, 0.0);
    return out;
}

PowerSplitResult best_power_at(Scheme scheme, const ChannelRealization& ch, const SystemConfig& cfg, double p_max, double alpha,
                               int split_points) {
    if (!(p_max >= cfg.P_S)) throw std::invalid_argument("optimize_power_split: p_max must be at least P_S");
    const auto at = [&](double P_e) -> PowerSplitResult {
        const double P_i = std::min(p_max, (cfg.P_S - alpha * P_e) / (1.0 - alpha));
        if (!(P_i > 0.0)) return {alpha, P_e / cfg.P_S, P_e, P_i, -1.0};
        return {alpha, P_e / cfg.P_S, P_e, P_i, scheme_rate(scheme, ch, cfg, alpha, P_e, P_i)};
    };
    PowerSplitResult best = at(cfg.P_S);
    const double step = p_max / split_points;
    for (int k = 1; k <= split_points; ++k) {
        const auto r = at(step * k);
        if (r.rate > best.rate) best = r;
    }
    double arg = best.P_e;
    golden_max([&](double P_e) { return at(P_e).rate; }, std::max(1e-12 * p_max, best.P_e - step), std::min(p_max, best.P_e + step),
               1e-10 * p_max, arg);
    const auto refined = at(arg);
    if (refined.rate > best.rate) best = refined;
    return best;
}

PowerSplitResult optimize_power_split(const ChannelRealization& ch, const SystemConfig& cfg, double p_max, Scheme scheme,
                                      int alpha_points, int split_points) {
    PowerSplitResult best;
    best.rate = -1.0;
    for (int j = 1; j <= alpha_points; ++j) {
        const auto r = best_power_at(scheme, ch, cfg, p_max, static_cast<double>(j) / (alpha_points + 1), split_points);
        if (r.rate > best.rate) best = r;
    }
    const double step = 1.0 / (alpha_points + 1);
    double arg = best.alpha;
    golden_max([&](double a) { return best_power_at(scheme, ch, cfg, p_max, a, split_points).rate; }, std::max(1e-9, best.alpha - step),
               std::min(1.0 - 1e-9, best.alpha + step), 1e-8, arg);
    const auto refined = best_power_at(scheme, ch, cfg, p_max, arg, split_points);
    if (refined.rate > best.rate) best = refined;
    return best;
}

}  // namespace fdr
