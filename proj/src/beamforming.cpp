#include "fdr/beamforming.hpp"

#include <algorithm>
#include <cmath>

#include "fdr/linalg.hpp"

namespace fdr {

namespace {

CVec unit_e1(std::size_t n) {
    CVec e(n);
    if (n > 0) e[0] = 1.0;
    return e;
}

// Normalized x, or e_1 when x vanishes; sets flag in the latter case.
CVec unit_or_e1(const CVec& x, bool& degenerate) {
    const double n = norm(x);
    if (!(n > 0.0)) {
        degenerate = true;
        return unit_e1(x.size());
    }
    return normalize_phase(scaled(x, 1.0 / n));
}

// Unit vector in the range of projector P that is closest to direction x.
CVec project_to_unit(const CMat& P, const CVec& x, bool& degenerate) {
    CVec p = P * x;
    const double nx = norm(x);
    if (norm(p) > 1e-12 * nx && nx > 0.0) return normalize_phase(normalized(p));
    degenerate = true;
    // x is orthogonal to the range; fall back to the widest column of P
    std::size_t best = 0;
    double bestn = -1.0;
    for (std::size_t j = 0; j < P.cols(); ++j) {
        const double cn = norm2(P.column(j));
        if (cn > bestn + 1e-12) {
            bestn = cn;
            best = j;
        }
    }
    return normalize_phase(normalized(P.column(best)));
}

cplx row_times(const CVec& row, const CVec& x) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * x[i];
    return s;
}

}  // namespace

std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Optimum: return "opt";
        case Scheme::TZF: return "tzf";
        case Scheme::RZF: return "rzf";
        case Scheme::MrcMrt: return "mrc";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "opt") return Scheme::Optimum;
    if (name == "tzf") return Scheme::TZF;
    if (name == "rzf") return Scheme::RZF;
    if (name == "mrc") return Scheme::MrcMrt;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

bool scheme_feasible(Scheme s, int M_R, int M_T) {
    if (s == Scheme::TZF) return M_T > 1;
    if (s == Scheme::RZF) return M_R > 1;
    return true;
}

CVec normalize_phase(CVec x) {
    double amax = 0.0;
    for (const auto& v : x) amax = std::max(amax, std::abs(v));
    for (const auto& v : x) {
        const double a = std::abs(v);
        if (a > 1e-10 * amax) {
            const cplx rot = std::conj(v) / a;
            for (auto& u : x) u *= rot;
            break;
        }
    }
    return x;
}

LinkGains link_gains(const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    const double k = kappa(alpha, cfg.eta);
    const double hn = norm2(ch.h_SR);
    const double p1 = cfg.path1(), p2 = cfg.path2();
    return {cfg.rho1() / p1, k * cfg.rho1() * hn / p1, k * cfg.rho2() * hn / (p1 * p2)};
}

LinkGains link_gains_split(const ChannelRealization& ch, const SystemConfig& cfg, double alpha, double P_e, double P_i) {
    const double k = kappa(alpha, cfg.eta);
    const double p1 = cfg.path1(), p2 = cfg.path2();
    const double relay = k * P_e * norm2(ch.h_SR) / p1;
    return {P_i / (cfg.sigma2_R * p1), relay / cfg.sigma2_R, relay / (cfg.sigma2_D * p2)};
}

SinrBreakdown end_to_end_sinr(const CVec& w_r, const CVec& w_t, const ChannelRealization& ch, const LinkGains& g) {
    if (w_r.size() != ch.h_SR.size() || w_t.size() != ch.h_RD.size()) throw std::invalid_argument("end_to_end_sinr: dimension mismatch");
    SinrBreakdown s;
    const double sig = std::norm(dot(w_r, ch.h_SR));
    const double li = std::norm(dot(w_r, ch.H_RR * w_t));
    s.first_hop = g.g1 * sig / (g.q * li + 1.0);
    s.second_hop = g.g2 * std::norm(row_times(ch.h_RD, w_t));
    s.end_to_end = std::min(s.first_hop, s.second_hop);
    return s;
}

SinrBreakdown end_to_end_sinr(const BeamformerPair& pair, const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    check_dimensions(cfg, ch);
    return end_to_end_sinr(pair.w_r, pair.w_t, ch, link_gains(ch, cfg, alpha));
}

CVec optimum_receive(const CVec& w_t, const ChannelRealization& ch, const LinkGains& g) {
    const CVec a = ch.H_RR * w_t;
    CMat M = g.q * outer(a, a);
    M += CMat::identity(a.size());
    bool degenerate = false;
    return unit_or_e1(solve_hermitian_psd(M, ch.h_SR), degenerate);
}

CVec optimum_receive(const CVec& w_t, const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    return optimum_receive(w_t, ch, link_gains(ch, cfg, alpha));
}

double f1(const CVec& w_t, const ChannelRealization& ch, const LinkGains& g) {
    const CVec a = ch.H_RR * w_t;
    const double hn = norm2(ch.h_SR);
    const double leak = g.q * std::norm(dot(a, ch.h_SR)) / (1.0 + g.q * norm2(a));
    return g.g1 * std::max(0.0, hn - leak);
}

double f2(const CVec& w_t, const ChannelRealization& ch, const LinkGains& g) {
    return g.g2 * std::norm(row_times(ch.h_RD, w_t));
}

double f1(const CVec& w_t, const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    return f1(w_t, ch, link_gains(ch, cfg, alpha));
}

double f2(const CVec& w_t, const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    return f2(w_t, ch, link_gains(ch, cfg, alpha));
}

CVec w_min_sinr(const ChannelRealization& ch, const LinkGains& g) {
    const std::size_t n = ch.h_RD.size();
    if (n == 1) return {cplx(1.0)};
    // minimize w^H A w / w^H R w with A = u u^H, u = H_RR^H h_SR, R = I + q H_RR^H H_RR
    const CVec u = ch.H_RR.adjoint() * ch.h_SR;
    CMat R = g.q * (ch.H_RR.adjoint() * ch.H_RR);
    R += CMat::identity(n);
    const auto er = hermitian_eig(R);
    CMat Rmh(n, n);  // R^{-1/2}
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += er.vectors(i, k) * std::conj(er.vectors(j, k)) / std::sqrt(er.values[k]);
            Rmh(i, j) = s;
        }
    const CVec v = Rmh * u;
    const auto ec = hermitian_eig(outer(v, v));
    const double top = std::max(ec.values.back(), 0.0);
    std::vector<CVec> basis;
    for (std::size_t k = 0; k < n; ++k) {
        if (ec.values[k] > ec.values[0] + 1e-10 * top) break;
        CVec w = Rmh * ec.vectors.column(k);
        for (const auto& b : basis) w = w - scaled(b, dot(b, w));
        const double wn = norm(w);
        if (wn > 1e-12) basis.push_back(scaled(w, 1.0 / wn));
    }
    const CVec target = conj(ch.h_RD);
    CVec p(n);
    for (const auto& b : basis) p = p + scaled(b, dot(b, target));
    if (norm(p) > 1e-12 * norm(target) && norm(target) > 0.0) return normalize_phase(normalized(p));
    return normalize_phase(basis.front());
}

CVec w_min_sinr(const ChannelRealization& ch, const SystemConfig& cfg, double alpha) {
    check_dimensions(cfg, ch);
    return w_min_sinr(ch, link_gains(ch, cfg, alpha));
}

CVec mrt_vector(const ChannelRealization& ch) {
    bool degenerate = false;
    return unit_or_e1(conj(ch.h_RD), degenerate);
}

BeamformerPair tzf_pair(const ChannelRealization& ch, const SystemConfig& cfg) {
    check_dimensions(cfg, ch);
    if (cfg.M_T < 2) throw SchemeInfeasible("TZF requires more than one relay transmit antenna");
    BeamformerPair p;
    p.scheme = Scheme::TZF;
    p.w_r = unit_or_e1(ch.h_SR, p.degenerate);
    p.w_t = project_to_unit(projection_B(ch), conj(ch.h_RD), p.degenerate);
    return p;
}

BeamformerPair rzf_pair(const ChannelRealization& ch, const SystemConfig& cfg) {
    check_dimensions(cfg, ch);
    if (cfg.M_R < 2) throw SchemeInfeasible("RZF requires more than one relay receive antenna");
    BeamformerPair p;
    p.scheme = Scheme::RZF;
    p.w_t = unit_or_e1(conj(ch.h_RD), p.degenerate);
    p.w_r = project_to_unit(projection_D(ch), ch.h_SR, p.degenerate);
    return p;
}

BeamformerPair mrc_mrt_pair(const ChannelRealization& ch) {
    BeamformerPair p;
    p.scheme = Scheme::MrcMrt;
    p.w_r = unit_or_e1(ch.h_SR, p.degenerate);
    p.w_t = unit_or_e1(conj(ch.h_RD), p.degenerate);
    return p;
}

}  // namespace fdr
