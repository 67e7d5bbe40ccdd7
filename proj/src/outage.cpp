#include "fdr/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fdr/montecarlo.hpp"
#include "fdr/quadrature.hpp"
#include "fdr/specfun.hpp"

namespace fdr {

namespace {

constexpr double kAbsTol = 1e-16;
constexpr double kRelTol = 1e-11;

struct Scales {
    double L = 0.0;  // first-hop outage point for ||h_SR||^2
    double c = 0.0;  // second-hop outage level for the product of gains
    double k = 0.0;  // kappa
};

Scales scales(const OutageQuery& q) {
    const auto& cfg = q.cfg;
    Scales s;
    s.k = kappa(q.alpha, cfg.eta);
    s.L = cfg.path1() * q.gamma_th / cfg.rho1();
    s.c = s.k > 0.0 ? cfg.path1() * cfg.path2() * q.gamma_th / (s.k * cfg.rho2()) : std::numeric_limits<double>::infinity();
    return s;
}

// int_L^{L + 50 + 10 M_R} g(x) dx in the variable s = ln x
template <class G>
double tail_integral(G&& g, double L, int M_R) {
    const double U = L + 50.0 + 10.0 * M_R;
    auto h = [&](double s) {
        const double x = std::exp(s);
        return g(x, s) * x;
    };
    return integrate(h, std::log(L), std::log(U), kAbsTol, kRelTol).value;
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

void validate(const OutageQuery& q) {
    q.cfg.validate();
    if (!(q.alpha >= 0.0 && q.alpha < 1.0)) throw std::domain_error("outage: alpha must lie in [0, 1)");
    if (!(q.gamma_th >= 0.0)) throw std::domain_error("outage: gamma_th must be nonnegative");
}

// shared trivial cases: returns true and sets p when the answer needs no integral
bool trivial(const OutageQuery& q, const Scales& s, double& p) {
    if (q.gamma_th == 0.0) {
        p = 0.0;
        return true;
    }
    if (std::isinf(q.gamma_th) || !(s.k > 0.0)) {
        p = 1.0;
        return true;
    }
    return false;
}

double first_hop_floor_argument(const OutageQuery& q, const Scales& s) {
    return 1.0 / (s.k * q.cfg.sigma2_RR * q.gamma_th);
}

}  // namespace

OutageQuery make_query(Scheme scheme, const SystemConfig& cfg, double alpha) {
    return {scheme, cfg, alpha, cfg.gamma_th()};
}

double outage_tzf_exact(const OutageQuery& q) {
    validate(q);
    if (q.cfg.M_T < 2) throw SchemeInfeasible("TZF requires more than one relay transmit antenna");
    const auto s = scales(q);
    double p;
    if (trivial(q, s, p)) return p;
    const double n = q.cfg.M_R, m = q.cfg.M_T - 1;
    const double lg = std::lgamma(n);
    const double body = tail_integral(
        [&](double x, double lx) { return gamma_lower_reg(m, s.c / x) * std::exp((n - 1.0) * lx - x - lg); }, s.L, q.cfg.M_R);
    return clamp01(gamma_lower_reg(n, s.L) + body);
}

double outage_rzf_exact(const OutageQuery& q) {
    validate(q);
    if (q.cfg.M_R < 2) throw SchemeInfeasible("RZF requires more than one relay receive antenna");
    const auto s = scales(q);
    double p;
    if (trivial(q, s, p)) return p;
    const double n = q.cfg.M_R, m = q.cfg.M_T;
    const double lg = std::lgamma(n);
    const double i1 = tail_integral(
        [&](double x, double lx) { return gamma_lower_reg(m, s.c / x) * std::exp((n - 1.0) * lx - x - lg); }, s.L, q.cfg.M_R);
    const double i2 = tail_integral([&](double x, double) { return gamma_upper_reg(m, s.c / x) * std::exp(-x); }, s.L, q.cfg.M_R);
    return clamp01(gamma_lower_reg(n, s.L) + i1 + std::exp((n - 1.0) * std::log(s.L) - lg) * i2);
}

double outage_mrc_case1_exact(const OutageQuery& q) {
    validate(q);
    if (q.cfg.M_T != 1 || q.cfg.M_R < 2) throw std::invalid_argument("MRC/MRT case 1 needs M_T = 1 and M_R >= 2");
    const auto s = scales(q);
    double p;
    if (trivial(q, s, p)) return p;
    const auto& cfg = q.cfg;
    const double z = q.gamma_th;
    const double c1 = cfg.rho1() / cfg.path1();
    const double c2 = s.k * cfg.rho1() * cfg.sigma2_RR / cfg.path1();
    const double c3 = s.k * cfg.rho2() / (cfg.path1() * cfg.path2());
    const double n = cfg.M_R;
    const double lg = std::lgamma(n);
    const double body = tail_integral(
        [&](double y, double ly) {
            // P(first hop fails or second hop fails | ||h_SR||^2 = y) for y above the noise-only threshold
            const double arg = c1 / z - 1.0 / y;
            const double fail1 = c2 > 0.0 ? (arg > 0.0 ? sf_beta_gamma_product(arg / c2, cfg.M_R) : 1.0) : 0.0;
            const double fail2 = -std::expm1(-z / (c3 * y));
            return (fail1 + fail2 - fail1 * fail2) * std::exp((n - 1.0) * ly - y - lg);
        },
        z / c1, cfg.M_R);
    return clamp01(gamma_lower_reg(n, z / c1) + body);
}

double outage_mrc_case2_exact(const OutageQuery& q) {
    validate(q);
    if (q.cfg.M_R != 1) throw std::invalid_argument("MRC/MRT case 2 needs M_R = 1");
    const auto s = scales(q);
    double p;
    if (trivial(q, s, p)) return p;
    const auto& cfg = q.cfg;
    const double z = q.gamma_th;
    const double c1 = cfg.rho1() / cfg.path1();
    const double c2 = s.k * cfg.rho1() * cfg.sigma2_RR / cfg.path1();
    const double c3 = s.k * cfg.rho2() / (cfg.path1() * cfg.path2());
    const double m = cfg.M_T;
    const double body = tail_integral(
        [&](double x, double) {
            const double a = c2 > 0.0 ? std::exp(-(c1 * x / z - 1.0) / (c2 * x)) : 0.0;
            const double b = gamma_lower_reg(m, z / (c3 * x));
            return (a + b - a * b) * std::exp(-x);
        },
        z / c1, 1);
    return clamp01(-std::expm1(-z / c1) + body);
}

double outage_tzf_asymptotic(const OutageQuery& q) {
    validate(q);
    if (q.cfg.M_T < 2) throw SchemeInfeasible("TZF requires more than one relay transmit antenna");
    const auto s = scales(q);
    double p;
    if (trivial(q, s, p)) return p;
    const int n = q.cfg.M_R, m = q.cfg.M_T - 1;
    const double beta = s.c / s.L;
    const double Ln = std::pow(s.L, n);
    const double gn = std::tgamma(static_cast<double>(n));
    if (m < n) return std::tgamma(static_cast<double>(n - m)) / (std::tgamma(m + 1.0) * gn) * std::pow(s.c, m);
    if (m > n) {
        const double tail = std::exp(n * std::log(beta) + std::lgamma(m - n) - std::lgamma(m)) * gamma_lower_reg(m - n, beta);
        return Ln * (1.0 / std::tgamma(n + 1.0) + (-gamma_lower_reg(m, beta) + tail) / (n * gn));
    }
    const double bm = std::exp(m * std::log(beta) - std::lgamma(m + 1.0));  // beta^m / m!
    const double inner = bm * (-std::log(s.L) - kEulerGamma - expint_ein(beta)) - (gamma_lower_reg(m, beta) - bm) / m;
    return Ln * (1.0 / std::tgamma(n + 1.0) + inner / gn);
}

double outage_rzf_asymptotic(const OutageQuery& q) {
    validate(q);
    if (q.cfg.M_R < 2) throw SchemeInfeasible("RZF requires more than one relay receive antenna");
    const auto s = scales(q);
    double p;
    if (trivial(q, s, p)) return p;
    const int n = q.cfg.M_R, m = q.cfg.M_T;
    const double gn = std::tgamma(static_cast<double>(n));
    if (n < m + 1) return std::pow(s.L, n - 1) / gn;
    if (n == m + 1) {
        const double beta = s.c / s.L;
        return (1.0 + std::pow(beta, m) / std::tgamma(m + 1.0)) * std::pow(s.L, m) / gn;
    }
    return std::tgamma(static_cast<double>(n - m)) / (gn * std::tgamma(m + 1.0)) * std::pow(s.c, m);
}

double outage_mrc_floor(const OutageQuery& q) {
    validate(q);
    if (q.cfg.M_T != 1) throw std::invalid_argument("MRC/MRT floor needs M_T = 1");
    const auto s = scales(q);
    double p;
    if (trivial(q, s, p)) return p;
    if (q.cfg.sigma2_RR == 0.0) return 0.0;
    const double t = first_hop_floor_argument(q, s);
    return q.cfg.M_R >= 2 ? sf_beta_gamma_product(t, q.cfg.M_R) : gamma_upper_reg(1.0, t);
}

double outage_mrc_case1_asymptotic(const OutageQuery& q) {
    validate(q);
    if (q.cfg.M_T != 1 || q.cfg.M_R < 2) throw std::invalid_argument("MRC/MRT case 1 needs M_T = 1 and M_R >= 2");
    const auto s = scales(q);
    double p;
    if (trivial(q, s, p)) return p;
    const int n = q.cfg.M_R;
    const double floor = q.cfg.sigma2_RR > 0.0 ? sf_beta_gamma_product(first_hop_floor_argument(q, s), n) : 0.0;
    const double w = s.c;  // d1^tau d2^tau z / (rho2 kappa)
    const double reach = 2.0 / std::tgamma(static_cast<double>(n)) * std::pow(w, 0.5 * n) * bessel_k(n, 2.0 * std::sqrt(w));
    return clamp01(floor + (1.0 - floor) * (1.0 - reach));
}

double outage_mrc_case2_asymptotic(const OutageQuery& q, int k_max) {
    validate(q);
    if (q.cfg.M_R != 1) throw std::invalid_argument("MRC/MRT case 2 needs M_R = 1");
    if (k_max < 0 || k_max > 10) throw std::invalid_argument("k_max must lie in [0, 10]");
    const auto s = scales(q);
    double p;
    if (trivial(q, s, p)) return p;
    const int m = q.cfg.M_T;
    const double floor = q.cfg.sigma2_RR > 0.0 ? std::exp(-first_hop_floor_argument(q, s)) : 0.0;
    const double beta = s.c / s.L;  // (rho1 / rho2) d2^tau / kappa
    double series = 0.0, fact = 1.0;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) fact *= k;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        series += sign / (fact * (m + k)) * std::pow(beta, m + k) * expint_en(m + k, s.L);
    }
    const double reach = std::exp(-s.L) - s.L / std::tgamma(static_cast<double>(m)) * series;
    return clamp01(1.0 - (1.0 - floor) * reach);
}

bool has_exact_outage(Scheme scheme, int M_R, int M_T) {
    switch (scheme) {
        case Scheme::TZF: return M_T > 1;
        case Scheme::RZF: return M_R > 1;
        case Scheme::MrcMrt: return M_T == 1 || M_R == 1;
        case Scheme::Optimum: return false;
    }
    return false;
}

double outage_exact(const OutageQuery& q) {
    switch (q.scheme) {
        case Scheme::TZF: return outage_tzf_exact(q);
        case Scheme::RZF: return outage_rzf_exact(q);
        case Scheme::MrcMrt:
            if (q.cfg.M_R == 1) return outage_mrc_case2_exact(q);
            if (q.cfg.M_T == 1) return outage_mrc_case1_exact(q);
            break;
        case Scheme::Optimum: break;
    }
    throw std::invalid_argument("no closed-form outage for scheme " + std::string(scheme_name(q.scheme)) + " at this antenna configuration");
}

double delay_throughput(double alpha, double R_c, double p_out) {
    if (!(p_out >= 0.0 && p_out <= 1.0)) throw std::domain_error("delay_throughput: p_out must lie in [0, 1]");
    return (1.0 - p_out) * R_c * (1.0 - alpha);
}

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Exact: return "analytic";
        case Provenance::Asymptotic: return "asymptotic";
        case Provenance::MonteCarlo: return "mc";
    }
    return "?";
}

DelayOptimum optimal_alpha_delay(Scheme scheme, const SystemConfig& cfg, std::uint64_t mc_trials, std::uint64_t seed) {
    const bool exact = has_exact_outage(scheme, cfg.M_R, cfg.M_T);
    if (!scheme_feasible(scheme, cfg.M_R, cfg.M_T)) throw SchemeInfeasible("scheme infeasible for antenna configuration");
    auto value = [&](double a) {
        const double p = exact ? outage_exact(make_query(scheme, cfg, a))
                               : estimate_outage(scheme, cfg, a, cfg.gamma_th(), mc_trials, seed).mean;
        return delay_throughput(a, cfg.R_c, p);
    };
    DelayOptimum best;
    best.provenance = exact ? Provenance::Exact : Provenance::MonteCarlo;
    best.throughput = -1.0;
    for (int j = 1; j <= 99; ++j) {
        const double a = 0.01 * j;
        const double v = value(a);
        if (v > best.throughput) {
            best.throughput = v;
            best.alpha_star = a;
        }
    }
    // golden refinement around the best grid point
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::max(1e-6, best.alpha_star - 0.01), hi = std::min(1.0 - 1e-6, best.alpha_star + 0.01);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double v1 = value(x1), v2 = value(x2);
    while (hi - lo > 1e-5) {
        if (v1 >= v2) {
            hi = x2;
            x2 = x1;
            v2 = v1;
            x1 = hi - gr * (hi - lo);
            v1 = value(x1);
        } else {
            lo = x1;
            x1 = x2;
            v1 = v2;
            x2 = lo + gr * (hi - lo);
            v2 = value(x2);
        }
    }
    const double va = std::max(v1, v2);
    if (va > best.throughput) {
        best.throughput = va;
        best.alpha_star = v1 >= v2 ? x1 : x2;
    }
    return best;
}

}  // namespace fdr
